"""Perception data models: point clouds, flattened images, classifier"""

from enum import Enum
from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from usv_agent.models.world_models import LidarParams


class CloudFrame(str, Enum):
    SENSOR = "sensor"
    OBJECT = "object"
    WORLD = "world"


class ClassLabel(str, Enum):
    """Object classes in fixed order; the order is the classifier tie-break"""
    OBSTACLE_BUOY = "obstacle_buoy"
    TOTEM_BUOY = "totem_buoy"
    DOCK = "dock"
    DELIVER_BOX = "deliver_box"


CLASS_ORDER: List[ClassLabel] = list(ClassLabel)


class PointCloud(BaseModel):
    """N x 3 points in a named frame; labels hold the hit object id (-1 for the sea)"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    frame: CloudFrame = CloudFrame.SENSOR
    points: np.ndarray = Field(default_factory=lambda: np.zeros((0, 3)))
    labels: Optional[np.ndarray] = None
    flags: List[str] = Field(default_factory=list)

    @field_validator("points", mode="before")
    @classmethod
    def _as_array(cls, value):
        points = np.asarray(value, dtype=float).reshape(-1, 3)
        if not np.all(np.isfinite(points)):
            raise ValueError("point coordinates must be finite")
        return points

    def __len__(self) -> int:
        return int(self.points.shape[0])

    @property
    def is_empty(self) -> bool:
        return self.points.shape[0] == 0

    def subset(self, mask: np.ndarray) -> "PointCloud":
        labels = self.labels[mask] if self.labels is not None else None
        return PointCloud(frame=self.frame, points=self.points[mask], labels=labels, flags=list(self.flags))


class RansacParams(BaseModel):
    n_iter: int = Field(default=200, ge=1)
    epsilon: float = Field(default=0.15, gt=0.0)
    min_inlier_fraction: float = Field(default=0.3, gt=0.0, le=1.0)
    min_points: int = Field(default=3, ge=3)
    seed: int = 0


class SeaPlaneResult(BaseModel):
    """Output of sea-plane removal; plane is (a, b, c, d) with unit normal"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    cloud: PointCloud
    plane: Optional[List[float]] = None
    plane_found: bool = False
    inlier_count: int = 0


class ImageParams(BaseModel):
    width: int = Field(default=32, ge=1)
    height: int = Field(default=32, ge=1)
    meters_per_pixel: float = Field(default=0.25, gt=0.0)

    @property
    def half_extent_x(self) -> float:
        return 0.5 * self.width * self.meters_per_pixel

    @property
    def half_extent_y(self) -> float:
        return 0.5 * self.height * self.meters_per_pixel


class FlatImage(BaseModel):
    """Three occupancy channels: 0 = X-Y, 1 = Y-Z, 2 = X-Z; values in [0, 1]"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    channels: np.ndarray
    meters_per_pixel: float = 0.25
    empty: bool = False

    @property
    def width(self) -> int:
        return int(self.channels.shape[2])

    @property
    def height(self) -> int:
        return int(self.channels.shape[1])


class ClusterParams(BaseModel):
    link_distance: float = Field(default=0.8, gt=0.0)
    min_cluster_size: int = Field(default=8, ge=1)


class DenoiseParams(BaseModel):
    k: int = Field(default=2, ge=1)
    radius: float = Field(default=0.6, gt=0.0)


class PerceptionParams(BaseModel):
    """Whole pipeline parameters"""
    ransac: RansacParams = Field(default_factory=RansacParams)
    denoise: DenoiseParams = Field(default_factory=DenoiseParams)
    cluster: ClusterParams = Field(default_factory=ClusterParams)
    image: ImageParams = Field(default_factory=ImageParams)


class CentroidModel(BaseModel):
    """Per-class mean FlatImage plus priors and training counts"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    means: Dict[ClassLabel, np.ndarray]
    priors: Dict[ClassLabel, float]
    trained_on: Dict[ClassLabel, int]
    image_shape: List[int]


class ClassificationResult(BaseModel):
    label: ClassLabel
    score: float
    distance: float
    distances: Dict[ClassLabel, float] = Field(default_factory=dict)


class SyntheticParams(BaseModel):
    """Randomisation of synthetic object observations"""
    range_min: float = Field(default=6.0, gt=0.0)
    range_max: float = Field(default=15.0, gt=0.0)
    size_jitter: float = Field(default=0.1, ge=0.0, lt=1.0)
    occlusion_probability: float = Field(default=0.3, ge=0.0, le=1.0)
    occlusion_max_fraction: float = Field(default=0.3, ge=0.0, lt=1.0)
    max_points: Optional[int] = Field(default=None, ge=1)
    lidar: LidarParams = Field(default_factory=lambda: LidarParams(rays_h=720, rays_v=32, max_range=30.0))


class DatasetConfig(BaseModel):
    """cmd_dataset document; layout is <out_dir>/<class_name>/<sample_id>.xyz"""
    samples_per_class: int = Field(default=200, ge=1)
    seed: int
    out_dir: str = "dataset"
    synthetic: SyntheticParams = Field(default_factory=SyntheticParams)


class ClassifyConfig(BaseModel):
    """cmd_classify document: train on one dataset tree, evaluate on another"""
    train_dir: str
    test_dir: Optional[str] = None
    seed: int
    perception: PerceptionParams = Field(default_factory=PerceptionParams)
    normalize: bool = True
