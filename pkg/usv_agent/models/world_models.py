"""World description models: static objects, world documents and sensor parameters"""

import math
from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from usv_agent.models.vessel_models import DynamicsParams, Pose2D, SensorNoise


class ObjectKind(str, Enum):
    """The four object classes of the course"""
    OBSTACLE_BUOY = "obstacle_buoy"
    TOTEM_BUOY = "totem_buoy"
    DOCK = "dock"
    DELIVER_BOX = "deliver_box"


class ShapeType(str, Enum):
    CIRCLE = "circle"
    BOX = "box"


class ObjectSize(BaseModel):
    """Circle: radius; box: length (along yaw) and width. Height for both."""
    radius: Optional[float] = None
    length: Optional[float] = None
    width: Optional[float] = None
    height: float = Field(default=1.0, gt=0.0)


class WorldObject(BaseModel):
    """A static object sitting on the sea plane"""
    model_config = ConfigDict(frozen=True)

    id: int = -1
    kind: ObjectKind
    shape: ShapeType
    pose: Pose2D = Field(default_factory=Pose2D)
    size: ObjectSize

    @model_validator(mode="after")
    def _check_dimensions(self) -> "WorldObject":
        if self.shape == ShapeType.CIRCLE:
            if self.size.radius is None or self.size.radius <= 0:
                raise ValueError(f"circle object {self.id} needs radius > 0")
        else:
            if not self.size.length or not self.size.width or self.size.length <= 0 or self.size.width <= 0:
                raise ValueError(f"box object {self.id} needs length > 0 and width > 0")
        return self

    @property
    def height(self) -> float:
        return self.size.height

    @property
    def bounding_radius(self) -> float:
        """Radius of the smallest centred disc containing the footprint"""
        if self.shape == ShapeType.CIRCLE:
            return float(self.size.radius)
        return 0.5 * math.hypot(self.size.length, self.size.width)


class WorldConfig(BaseModel):
    """JSON world document"""
    objects: List[WorldObject] = Field(default_factory=list)
    start: Pose2D = Field(default_factory=Pose2D)
    noise: SensorNoise = Field(default_factory=SensorNoise)
    dynamics: DynamicsParams = Field(default_factory=DynamicsParams)
    arena_size: Optional[float] = Field(default=None, gt=0.0)

    @model_validator(mode="after")
    def _assign_ids(self) -> "WorldConfig":
        used = {obj.id for obj in self.objects if obj.id >= 0}
        next_id = max(used, default=-1) + 1
        objects = []
        for obj in self.objects:
            if obj.id < 0:
                obj = obj.model_copy(update={"id": next_id})
                next_id += 1
            objects.append(obj)
        ids = [obj.id for obj in objects]
        if len(set(ids)) != len(ids):
            raise ValueError("object ids must be unique")
        self.objects = objects
        return self


class LidarParams(BaseModel):
    """3-D LiDAR sampling pattern, sensor mounted sensor_height above the sea"""
    rays_h: int = Field(default=360, ge=1)
    rays_v: int = Field(default=16, ge=1)
    elevation_min: float = math.radians(-15.0)
    elevation_max: float = math.radians(15.0)
    max_range: float = Field(default=30.0, gt=0.0)
    sensor_height: float = Field(default=1.5, gt=0.0)


class RangeScan(BaseModel):
    """Planar range scan; ranges equal max_range where no beam hit"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    angles: np.ndarray
    ranges: np.ndarray
    max_range: float

    @model_validator(mode="after")
    def _same_length(self) -> "RangeScan":
        if len(self.angles) != len(self.ranges):
            raise ValueError("angles and ranges must have the same length")
        return self
