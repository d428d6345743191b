"""
Obstacle-avoidance demo: repeated start/goal transits through an obstacle field
with LiDAR perception, obstacle tracking and minimum-angle re-planning.
"""

import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

from shapely.geometry import Point, Polygon

from usv_agent.errors import MissionFailure, PlannerError
from usv_agent.guidance.missions import MissionBehavior, WaypointBehavior, build_simulation, run_closed_loop
from usv_agent.models.behavior_models import WaypointPath
from usv_agent.models.control_models import ControllerGains, ControlStates
from usv_agent.models.mission_models import AvoidDemoTask, MissionConfig, MissionResult, TrajectoryLog
from usv_agent.models.planning_models import ObstacleTrack
from usv_agent.models.vessel_models import Pose2D, PoseEstimate, ThrustCommand
from usv_agent.models.world_models import WorldConfig
from usv_agent.perception.preprocessing import segment_objects, sensor_to_world
from usv_agent.planning.min_angle import plan_min_angle, segment_collides
from usv_agent.planning.obstacle_manager import ObstacleManager
from usv_agent.sim.simulator import Simulation
from usv_agent.utils.geometry import bearing

logger = logging.getLogger(__name__)

Point2 = Tuple[float, float]


def _outside(tracks: Sequence[ObstacleTrack], position: Point2) -> List[ObstacleTrack]:
    """Tracks whose footprint does not contain position; a vessel cannot plan out of a footprint"""
    here = Point(position)
    return [t for t in tracks if not Polygon(t.footprint).intersects(here)]


def route_blocked(position: Point2, waypoints: Sequence[Point2], tracks: Sequence[ObstacleTrack]) -> bool:
    route = [tuple(position)] + [tuple(w) for w in waypoints]
    return any(
        segment_collides(a, b, track)
        for track in tracks
        for a, b in zip(route, route[1:])
    )


class AvoidanceLeg(MissionBehavior):
    """One transit to goal; perception runs every perception_period ticks"""

    name = "avoid_demo"

    def __init__(
        self,
        goal: Point2,
        task: AvoidDemoTask,
        manager: ObstacleManager,
        gains: ControllerGains,
        dt: float,
        start: Point2,
    ):
        super().__init__(gains, dt)
        self.goal = tuple(goal)
        self.task = task
        self.manager = manager
        self.replans = 0
        self.follower = self._follow(self._plan(start))

    def _plan(self, position: Point2) -> List[Point2]:
        tracks = _outside(self.manager.tracks, position)
        return plan_min_angle(position, self.goal, tracks, self.task.planner).vertices[1:]

    def _follow(self, waypoints: List[Point2], states: Optional[ControlStates] = None) -> WaypointBehavior:
        path = WaypointPath(waypoints=waypoints, arrival_radius=self.task.arrival_radius, lookahead=self.task.lookahead)
        follower = WaypointBehavior(path, self.task.cruise_speed, self.gains, self.dt)
        if states is not None:
            follower.states = states
        return follower

    @property
    def done(self) -> bool:
        return self.follower.done

    def _perceive(self, estimate: PoseEstimate, sim: Simulation) -> None:
        pose = estimate.pose
        clusters = segment_objects(sim.lidar_cloud(self.task.lidar), self.task.perception)
        world_clusters = [sensor_to_world(c, pose.x, pose.y, pose.yaw) for c in clusters]
        alerts = self.manager.update(world_clusters, sim.tick, pose)
        if not alerts:
            return

        alerted = {a.track_id for a in alerts}
        position = pose.position
        tracks = [t for t in _outside(self.manager.tracks, position) if t.id in alerted]
        remaining = self.follower.path.waypoints[self.follower.progress:]
        if remaining and route_blocked(position, remaining, tracks):
            self.follower = self._follow(self._plan(position), self.follower.states)
            self.replans += 1
            logger.debug(f"Re-planned at t={sim.time:.1f}s: {len(self.follower.path.waypoints)} waypoints")

    def act(self, estimate: PoseEstimate, speed: float, sim: Simulation) -> ThrustCommand:
        if sim.tick % self.task.perception_period == 0:
            self._perceive(estimate, sim)
        return self.follower.act(estimate, speed, sim)

    def metrics(self) -> Dict[str, Any]:
        return {"replans": self.replans}


def avoid_demo(world: WorldConfig, task: AvoidDemoTask, config: MissionConfig) -> MissionResult:
    """Alternate start -> goal and goal -> start for task.rounds rounds.

    A round fails on collision, timeout or planner failure;
    the first failed round ends the demo.

    Raises:
        MissionFailure: unless every round completes; carries the metrics.
    """
    if config.start is None:
        start_pose = Pose2D(x=task.start[0], y=task.start[1], yaw=bearing(task.start, task.goal))
        config = config.model_copy(update={"start": start_pose})
    sim, estimator = build_simulation(world, config)
    manager = ObstacleManager(task.tracker, task.alert_range)
    log = TrajectoryLog()

    attempted = completed = collisions = replans = 0
    failure = None
    logger.info(f"Avoidance demo: {task.rounds} rounds between {task.start} and {task.goal}")
    for round_index in range(task.rounds):
        goal = task.goal if round_index % 2 == 0 else task.start
        attempted += 1
        leg = None
        try:
            leg = AvoidanceLeg(goal, task, manager, config.gains, sim.dt, estimator.pose.position)
            run_closed_loop(sim, estimator, leg, task.round_timeout, log)
            completed += 1
            logger.debug(f"Round {round_index + 1} completed at t={sim.time:.1f}s")
        except MissionFailure as e:
            failure = e.result.reason if e.result is not None else "failure"
            collisions += int(failure == "collision")
        except PlannerError as e:
            failure = "planner_failure"
            logger.warning(f"Round {round_index + 1}: planner failed, stopping: {e}")
        finally:
            if leg is not None:
                replans += leg.replans
        if failure is not None:
            break

    metrics = {
        "success": failure is None,
        "duration": sim.time,
        "rounds_attempted": attempted,
        "rounds_completed": completed,
        "collisions": collisions,
        "replans": replans,
        "alerts": manager.alert_count,
        "tracks": len(manager.tracks),
    }
    if failure is None:
        logger.info(f"Avoidance demo completed {completed}/{task.rounds} rounds, {replans} re-plans")
        return MissionResult(success=True, reason="completed", log=log, metrics=metrics)

    metrics["failure_reason"] = failure
    result = MissionResult(success=False, reason=failure, log=log, metrics=metrics)
    raise MissionFailure(f"avoidance demo stopped in round {attempted}: {failure}", result=result)

