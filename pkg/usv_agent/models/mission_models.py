"""Mission configuration, trajectory log and mission result models"""

from typing import Any, Dict, List, Literal, Optional, Tuple, Union

import pandas as pd
from pydantic import BaseModel, Field, model_validator
from typing_extensions import Annotated

from usv_agent.models.behavior_models import CirclingParams, DockParams, WaypointPath
from usv_agent.models.control_models import ControllerGains
from usv_agent.models.perception_models import PerceptionParams
from usv_agent.models.planning_models import PlannerParams, TrackerParams
from usv_agent.models.vessel_models import Pose2D, SensorNoise
from usv_agent.models.world_models import LidarParams, WorldConfig

Point2 = Tuple[float, float]

TRAJECTORY_COLUMNS = [
    "t", "x", "y", "yaw", "est_x", "est_y", "est_yaw",
    "surge", "yaw_rate", "thrust_l", "thrust_r",
]


class WaypointsTask(BaseModel):
    behavior: Literal["waypoints"] = "waypoints"
    waypoints: List[Point2] = Field(min_length=1)
    lookahead: float = Field(default=4.0, gt=0.0)
    arrival_radius: float = Field(default=1.5, gt=0.0)
    cruise_speed: float = Field(default=1.5, gt=0.0)

    @property
    def path(self) -> WaypointPath:
        return WaypointPath(waypoints=self.waypoints, arrival_radius=self.arrival_radius, lookahead=self.lookahead)


class StationKeepTask(BaseModel):
    behavior: Literal["station_keep"] = "station_keep"
    hold_point: Point2
    duration: float = Field(default=120.0, gt=0.0)
    freeze_radius: float = Field(default=1.0, gt=0.0)
    release_radius: float = Field(default=3.0, gt=0.0)


class CircleTotemTask(CirclingParams):
    behavior: Literal["circle_totem"] = "circle_totem"
    totem_id: Optional[int] = None
    totem_center: Optional[Point2] = None
    laps: int = Field(default=30, ge=1)

    @model_validator(mode="after")
    def _has_totem(self) -> "CircleTotemTask":
        if self.totem_id is None and self.totem_center is None:
            raise ValueError("circle_totem needs totem_id or totem_center")
        return self


class DockTask(DockParams):
    """Dock pose: bay mouth position, yaw = direction of travel into the bay"""
    behavior: Literal["dock"] = "dock"
    dock_id: Optional[int] = None
    dock_pose: Optional[Pose2D] = None

    @model_validator(mode="after")
    def _has_dock(self) -> "DockTask":
        if self.dock_id is None and self.dock_pose is None:
            raise ValueError("dock needs dock_id or dock_pose")
        return self


class AvoidDemoTask(BaseModel):
    behavior: Literal["avoid_demo"] = "avoid_demo"
    start: Point2
    goal: Point2
    rounds: int = Field(default=10, ge=1)
    lookahead: float = Field(default=4.0, gt=0.0)
    arrival_radius: float = Field(default=1.5, gt=0.0)
    cruise_speed: float = Field(default=1.5, gt=0.0)
    round_timeout: float = Field(default=180.0, gt=0.0)
    perception_period: int = Field(default=10, ge=1)
    alert_range: float = Field(default=15.0, gt=0.0)
    lidar: LidarParams = Field(default_factory=lambda: LidarParams(max_range=25.0))
    perception: PerceptionParams = Field(default_factory=PerceptionParams)
    tracker: TrackerParams = Field(default_factory=lambda: TrackerParams(safety_margin=1.5))
    planner: PlannerParams = Field(default_factory=PlannerParams)


MissionTask = Annotated[
    Union[WaypointsTask, StationKeepTask, CircleTotemTask, DockTask, AvoidDemoTask],
    Field(discriminator="behavior"),
]


class OutputPaths(BaseModel):
    out_dir: str = "out"
    trajectory_csv: str = "trajectory.csv"
    metrics_json: str = "metrics.json"
    plot_svg: str = "trajectory.svg"


class MissionConfig(BaseModel):
    """Mission JSON document; seed is mandatory"""
    world_file: Optional[str] = None
    world: Optional[WorldConfig] = None
    start: Optional[Pose2D] = None
    task: MissionTask
    gains: ControllerGains = Field(default_factory=ControllerGains)
    noise: Optional[SensorNoise] = None
    seed: int
    timeout: float = Field(default=300.0, ge=0.0)
    dt: float = Field(default=0.1, gt=0.0)
    outputs: OutputPaths = Field(default_factory=OutputPaths)


class TrajectoryLog(BaseModel):
    """Per-tick truth, estimate and command rows in TRAJECTORY_COLUMNS order"""
    rows: List[List[float]] = Field(default_factory=list)

    def append(self, row: List[float]) -> None:
        self.rows.append(row)

    def __len__(self) -> int:
        return len(self.rows)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=TRAJECTORY_COLUMNS, dtype=float)


class MissionResult(BaseModel):
    success: bool
    reason: str = ""
    log: TrajectoryLog = Field(default_factory=TrajectoryLog)
    metrics: Dict[str, Any] = Field(default_factory=dict)
