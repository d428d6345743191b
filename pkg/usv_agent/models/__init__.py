"""USV agent models package"""

from .vessel_models import (
    Pose2D,
    VesselState,
    ThrustCommand,
    SensorNoise,
    DynamicsParams,
    SensorReading,
    FusionGains,
    PoseEstimate,
)
from .world_models import (
    ObjectKind,
    ShapeType,
    ObjectSize,
    WorldObject,
    WorldConfig,
    LidarParams,
    RangeScan,
)
from .control_models import PIDGains, PIDState, CascadeState, ControllerGains, ControlStates
from .behavior_models import (
    CirclingDirection,
    CirclingState,
    CirclingParams,
    DockParams,
    WaypointPath,
)
from .perception_models import (
    CloudFrame,
    ClassLabel,
    CLASS_ORDER,
    PointCloud,
    RansacParams,
    SeaPlaneResult,
    ImageParams,
    FlatImage,
    ClusterParams,
    DenoiseParams,
    PerceptionParams,
    CentroidModel,
    ClassificationResult,
    SyntheticParams,
    DatasetConfig,
    ClassifyConfig,
)
from .planning_models import (
    ObstacleTrack,
    TrackerParams,
    ObstacleAlert,
    PlannerParams,
    PlannedPath,
    PlanConfig,
)
from .agent_models import (
    DiscreteAction,
    DockAction,
    ACTION_ORDER,
    AgentStep,
    RewardParams,
    EnvConfig,
    QLearningParams,
    TrainConfig,
    EvalConfig,
    QTable,
    LearningCurveRow,
    EvaluationMetrics,
)
from .mission_models import (
    TRAJECTORY_COLUMNS,
    WaypointsTask,
    StationKeepTask,
    CircleTotemTask,
    DockTask,
    AvoidDemoTask,
    OutputPaths,
    MissionConfig,
    TrajectoryLog,
    MissionResult,
)

__all__ = [
    "Pose2D", "VesselState", "ThrustCommand", "SensorNoise", "DynamicsParams",
    "SensorReading", "FusionGains", "PoseEstimate",
    "ObjectKind", "ShapeType", "ObjectSize", "WorldObject", "WorldConfig", "LidarParams", "RangeScan",
    "PIDGains", "PIDState", "CascadeState", "ControllerGains", "ControlStates",
    "CirclingDirection", "CirclingState", "CirclingParams", "DockParams", "WaypointPath",
    "CloudFrame", "ClassLabel", "CLASS_ORDER", "PointCloud", "RansacParams", "SeaPlaneResult",
    "ImageParams", "FlatImage", "ClusterParams", "DenoiseParams", "PerceptionParams",
    "CentroidModel", "ClassificationResult", "SyntheticParams", "DatasetConfig", "ClassifyConfig",
    "ObstacleTrack", "TrackerParams", "ObstacleAlert", "PlannerParams", "PlannedPath", "PlanConfig",
    "DiscreteAction", "DockAction", "ACTION_ORDER", "AgentStep", "RewardParams", "EnvConfig",
    "QLearningParams", "TrainConfig", "EvalConfig", "QTable", "LearningCurveRow", "EvaluationMetrics",
    "TRAJECTORY_COLUMNS", "WaypointsTask", "StationKeepTask", "CircleTotemTask",
    "DockTask", "AvoidDemoTask", "OutputPaths", "MissionConfig", "TrajectoryLog", "MissionResult",
]
