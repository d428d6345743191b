"""Behavior state and parameter models: totem circling and docking"""

import math
from enum import Enum
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from usv_agent.utils.geometry import wrap_angle

Point2 = Tuple[float, float]


class CirclingDirection(str, Enum):
    CLOCKWISE = "clockwise"
    COUNTERCLOCKWISE = "counterclockwise"

    @property
    def sign(self) -> float:
        return 1.0 if self is CirclingDirection.COUNTERCLOCKWISE else -1.0


class CirclingState(BaseModel):
    """Distance to the totem and heading deviation from the circling tangent"""
    model_config = ConfigDict(frozen=True)

    d: float = Field(ge=0.0)
    phi: float
    R: float = Field(gt=0.0)
    direction: CirclingDirection = CirclingDirection.COUNTERCLOCKWISE

    @field_validator("phi")
    @classmethod
    def _wrap_phi(cls, value: float) -> float:
        return wrap_angle(value)


class CirclingParams(BaseModel):
    R: float = Field(default=5.0, gt=0.0)
    direction: CirclingDirection = CirclingDirection.COUNTERCLOCKWISE
    cruise_speed: float = Field(default=1.0, gt=0.0)
    curvature_feedforward: bool = True


class DockParams(BaseModel):
    """Approach-axis pursuit thresholded into three actions"""
    dead_band_deg: float = Field(default=10.0, gt=0.0, lt=180.0)
    lookahead: float = Field(default=4.0, gt=0.0)
    bay_depth: float = Field(default=5.0, gt=0.0)
    cruise_thrust: float = Field(default=0.4, gt=0.0, le=1.0)
    turn_thrust: float = Field(default=0.4, gt=0.0, le=1.0)

    @property
    def dead_band(self) -> float:
        return math.radians(self.dead_band_deg)


class WaypointPath(BaseModel):
    waypoints: List[Point2] = Field(min_length=1)
    arrival_radius: float = Field(default=1.5, gt=0.0)
    lookahead: float = Field(default=4.0, gt=0.0)
