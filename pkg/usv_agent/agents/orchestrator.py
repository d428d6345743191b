"""
Mission orchestrator: resolves the world, dispatches the mission task to its
behavior and writes the run artifacts.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from usv_agent.behaviors.avoidance import avoid_demo
from usv_agent.behaviors.circling import run_circling
from usv_agent.behaviors.docking import dock_pose_from_object, run_docking
from usv_agent.config.settings import Settings
from usv_agent.errors import ConfigError, MissionFailure
from usv_agent.guidance.missions import run_mission, station_keep
from usv_agent.models.mission_models import (
    AvoidDemoTask,
    CircleTotemTask,
    DockTask,
    MissionConfig,
    MissionResult,
    StationKeepTask,
    WaypointsTask,
)
from usv_agent.models.world_models import WorldConfig
from usv_agent.services.artifact_service import ArtifactService
from usv_agent.sim.world import find_object

logger = logging.getLogger(__name__)


class MissionOrchestrator:
    """Runs one mission document end to end"""

    def __init__(self, settings: Settings = None, artifacts: Optional[ArtifactService] = None):
        self.settings = settings or Settings()
        self.artifacts = artifacts or ArtifactService(self.settings)

    def run(self, config: MissionConfig, out_dir: Optional[Path] = None) -> Dict[str, Any]:
        """Execute the mission and write trajectory CSV, metrics JSON and SVG plot.

        Artifacts are written on failure too; the MissionFailure is re-raised
        afterwards.
        """
        if config.world is None:
            raise ConfigError("mission world is not resolved; load the config through ArtifactService")
        world = config.world
        behavior = config.task.behavior
        logger.info(f"Starting mission '{behavior}' with seed {config.seed}")

        failure: Optional[MissionFailure] = None
        try:
            result = self._execute(world, config)
        except MissionFailure as e:
            failure = e
            result = e.result if e.result is not None else MissionResult(success=False, reason=str(e))

        paths = self._write_artifacts(result, world, config, out_dir)
        summary = {
            "status": "completed" if result.success else "failed",
            "behavior": behavior,
            "reason": result.reason,
            "ticks": len(result.log),
            "metrics": result.metrics,
            "artifacts": {name: str(path) for name, path in paths.items()},
        }
        if failure is not None:
            logger.error(f"Mission '{behavior}' failed: {result.reason}")
            raise failure
        logger.info(f"Mission '{behavior}' completed in {result.metrics.get('duration', 0.0):.1f}s simulated")
        return summary

    def _execute(self, world: WorldConfig, config: MissionConfig) -> MissionResult:
        task = config.task
        if isinstance(task, WaypointsTask):
            return run_mission(world, task.path, config)
        if isinstance(task, StationKeepTask):
            return station_keep(world, task.hold_point, task.duration, config, task.freeze_radius, task.release_radius)
        if isinstance(task, CircleTotemTask):
            center = task.totem_center
            if center is None:
                center = self._object(world, task.totem_id).pose.position
            return run_circling(world, center, task, task.laps, config)
        if isinstance(task, DockTask):
            dock_pose = task.dock_pose
            if dock_pose is None:
                dock_pose = dock_pose_from_object(self._object(world, task.dock_id), task.bay_depth)
            return run_docking(world, dock_pose, task, config)
        if isinstance(task, AvoidDemoTask):
            return avoid_demo(world, task, config)
        raise ConfigError(f"unsupported behavior {task.behavior!r}")

    @staticmethod
    def _object(world: WorldConfig, object_id: int):
        try:
            return find_object(world, object_id)
        except KeyError as e:
            raise ConfigError(str(e)) from e

    def _reference_points(self, config: MissionConfig) -> Optional[List[Tuple[float, float]]]:
        task = config.task
        if isinstance(task, WaypointsTask):
            return list(task.waypoints)
        if isinstance(task, StationKeepTask):
            return [task.hold_point]
        if isinstance(task, AvoidDemoTask):
            return [task.start, task.goal]
        return None

    def _write_artifacts(
        self,
        result: MissionResult,
        world: WorldConfig,
        config: MissionConfig,
        out_dir: Optional[Path],
    ) -> Dict[str, Path]:
        outputs = config.outputs
        root = Path(out_dir) if out_dir is not None else Path(outputs.out_dir)
        metrics = {
            "behavior": config.task.behavior,
            "seed": config.seed,
            "success": result.success,
            **result.metrics,
        }
        return {
            "trajectory": self.artifacts.write_trajectory_csv(result.log, root / outputs.trajectory_csv),
            "metrics": self.artifacts.write_metrics_json(metrics, root / outputs.metrics_json),
            "plot": self.artifacts.write_trajectory_svg(
                result.log,
                world,
                root / outputs.plot_svg,
                title=config.task.behavior,
                waypoints=self._reference_points(config),
            ),
        }

    def get_status(self) -> Dict[str, Any]:
        return {
            "status": "ready",
            "behaviors": ["waypoints", "station_keep", "circle_totem", "dock", "avoid_demo"],
            "settings": {
                "sim_dt": self.settings.SIM_DT,
                "output_dir": self.settings.OUTPUT_DIR,
                "schema_version": self.settings.SCHEMA_VERSION,
            },
        }
