"""
Artifact service: reads JSON configuration documents and writes every run
artifact (CSV, JSON, SVG, PNG, XYZ) in a byte-stable form.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence, Type, TypeVar

import numpy as np
import pandas as pd
from matplotlib import image as mpimg, rc_context
from matplotlib.figure import Figure
from pydantic import BaseModel, ValidationError

from usv_agent.config.settings import Settings, settings as default_settings
from usv_agent.errors import ConfigError
from usv_agent.models.agent_models import LearningCurveRow, QTable
from usv_agent.models.mission_models import MissionConfig, TrajectoryLog
from usv_agent.models.perception_models import CloudFrame, FlatImage, PointCloud
from usv_agent.models.planning_models import PlannedPath
from usv_agent.models.world_models import ShapeType, WorldConfig
from usv_agent.sim.world import object_footprint

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)

# Fixed SVG element ids across runs
SVG_HASH_SALT = "usv-agent"


class ArtifactService:
    """Configuration loading and artifact writing"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or default_settings
        self.float_format = self.settings.CSV_FLOAT_FORMAT

    # Reading

    def load_json(self, path: str) -> Dict[str, Any]:
        file_path = Path(path)
        if not file_path.is_file():
            raise ConfigError(f"config file not found: {path}")
        try:
            return json.loads(file_path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path} is not valid JSON: {e}") from e

    def parse(self, data: Dict[str, Any], model: Type[ModelT], source: str = "<config>") -> ModelT:
        try:
            return model.model_validate(data)
        except ValidationError as e:
            raise ConfigError(f"invalid {model.__name__} in {source}: {e}") from e

    def load_model(self, path: str, model: Type[ModelT], overrides: Optional[Dict[str, Any]] = None) -> ModelT:
        data = self.load_json(path)
        data.update(overrides or {})
        return self.parse(data, model, path)

    def resolve_world(self, world: Optional[WorldConfig], world_file: Optional[str], base_dir: Path) -> WorldConfig:
        """Inline world wins; a world_file is read relative to the referring document"""
        if world is not None:
            return world
        if world_file is None:
            raise ConfigError("config needs either an inline world or a world_file")
        path = Path(world_file)
        if not path.is_absolute():
            path = base_dir / path
        return self.load_model(str(path), WorldConfig)

    def load_mission_config(self, path: str, seed: Optional[int] = None) -> MissionConfig:
        overrides = {"seed": seed} if seed is not None else None
        config = self.load_model(path, MissionConfig, overrides)
        world = self.resolve_world(config.world, config.world_file, Path(path).parent)
        return config.model_copy(update={"world": world})

    # Tabular artifacts

    def _write_frame(self, frame: pd.DataFrame, path: Path, index: bool = False) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=index, float_format=self.float_format, lineterminator="\n")
        logger.debug(f"Wrote {len(frame)} rows to {path}")
        return path

    def write_trajectory_csv(self, log: TrajectoryLog, path: Path) -> Path:
        return self._write_frame(log.to_frame(), Path(path))

    def write_learning_curve_csv(self, curve: Sequence[LearningCurveRow], path: Path) -> Path:
        frame = pd.DataFrame(
            [[r.episode, r.steps, r.episode_return, r.epsilon] for r in curve],
            columns=["episode", "steps", "return", "epsilon"],
        )
        return self._write_frame(frame, Path(path))

    def write_confusion_csv(self, frame: pd.DataFrame, path: Path) -> Path:
        return self._write_frame(frame, Path(path), index=True)

    def write_path_csv(self, planned: PlannedPath, path: Path) -> Path:
        frame = pd.DataFrame(planned.vertices, columns=["x", "y"], dtype=float)
        return self._write_frame(frame, Path(path))

    # JSON artifacts

    def write_json(self, payload: Dict[str, Any], path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(payload, sort_keys=True, indent=2, default=_json_default) + "\n", encoding="utf-8")
        return path

    def write_metrics_json(self, metrics: Dict[str, Any], path: Path) -> Path:
        return self.write_json({"schema_version": self.settings.SCHEMA_VERSION, **metrics}, path)

    def write_qtable_json(self, table: QTable, path: Path) -> Path:
        payload = {
            "schema_version": self.settings.SCHEMA_VERSION,
            "params": table.params.model_dump(),
            "values": {key: table.values[key] for key in sorted(table.values)},
        }
        return self.write_json(payload, path)

    def read_qtable_json(self, path: str) -> QTable:
        data = self.load_json(path)
        data.pop("schema_version", None)
        return self.parse(data, QTable, path)

    # Point clouds and images

    def write_xyz(self, cloud: PointCloud, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        np.savetxt(path, cloud.points, fmt="%.6f", delimiter=" ")
        return path

    def read_xyz(self, path: Path, frame: CloudFrame = CloudFrame.SENSOR) -> PointCloud:
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"cloud file not found: {path}")
        if path.stat().st_size == 0:
            return PointCloud(frame=frame)
        return PointCloud(frame=frame, points=np.loadtxt(path, ndmin=2))

    def write_flat_image(self, image: FlatImage, path: Path) -> Path:
        """PNG with one projection per colour channel, plus a sidecar JSON with the window"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        pixels = np.rint(np.clip(image.channels, 0.0, 1.0) * 255.0).astype(np.uint8)
        mpimg.imsave(path, np.ascontiguousarray(np.transpose(pixels, (1, 2, 0))), format="png", metadata={"Software": None})
        sidecar = {
            "channels": ["x-y", "y-z", "x-z"],
            "width": image.width,
            "height": image.height,
            "meters_per_pixel": image.meters_per_pixel,
            "extent_x": image.width * image.meters_per_pixel,
            "extent_y": image.height * image.meters_per_pixel,
            "origin": "center",
            "row0": "min_vertical",
            "empty": image.empty,
        }
        self.write_json(sidecar, path.with_suffix(".json"))
        return path

    # Plots

    def write_trajectory_svg(
        self,
        log: TrajectoryLog,
        world: Optional[WorldConfig],
        path: Path,
        title: str = "",
        waypoints: Optional[Iterable[Sequence[float]]] = None,
    ) -> Path:
        """Truth and estimated track over the object footprints"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        frame = log.to_frame()
        with rc_context({"svg.hashsalt": SVG_HASH_SALT, "svg.fonttype": "none"}):
            fig = Figure(figsize=(6, 6))
            ax = fig.subplots()
            for obj in (world.objects if world is not None else []):
                footprint = object_footprint(obj)
                xs, ys = footprint.exterior.xy
                color = "tab:orange" if obj.shape == ShapeType.CIRCLE else "tab:gray"
                ax.fill(xs, ys, color=color, alpha=0.6, linewidth=0)
            if waypoints is not None:
                points = np.asarray(list(waypoints), dtype=float).reshape(-1, 2)
                ax.plot(points[:, 0], points[:, 1], "k--", linewidth=0.8, marker="o", markersize=3, label="waypoints")
            if not frame.empty:
                ax.plot(frame["x"], frame["y"], color="tab:blue", linewidth=1.2, label="truth")
                ax.plot(frame["est_x"], frame["est_y"], color="tab:green", linewidth=0.6, alpha=0.7, label="estimate")
            ax.set_aspect("equal", adjustable="datalim")
            ax.set_xlabel("x [m]")
            ax.set_ylabel("y [m]")
            if title:
                ax.set_title(title)
            ax.legend(loc="best", fontsize="small")
            fig.savefig(path, format="svg", metadata={"Date": None})
        return path


def _json_default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    raise TypeError(f"{type(value).__name__} is not JSON serialisable")
