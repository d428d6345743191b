"""Vessel, actuator and sensor-noise data models"""

import math
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from usv_agent.utils.geometry import wrap_angle


class Pose2D(BaseModel):
    """Planar pose; yaw is always kept in (-pi, pi]"""
    model_config = ConfigDict(frozen=True)

    x: float = 0.0
    y: float = 0.0
    yaw: float = 0.0

    @field_validator("yaw")
    @classmethod
    def _wrap_yaw(cls, value: float) -> float:
        return wrap_angle(value) if math.isfinite(value) else value

    @property
    def position(self) -> Tuple[float, float]:
        return (self.x, self.y)


class VesselState(BaseModel):
    """Pose plus body-frame surge velocity (m/s) and yaw rate (rad/s)"""
    model_config = ConfigDict(frozen=True)

    pose: Pose2D = Field(default_factory=Pose2D)
    surge: float = 0.0
    yaw_rate: float = 0.0


class ThrustCommand(BaseModel):
    """Normalised left/right thrust pair, each clamped to [-1, 1]"""
    model_config = ConfigDict(frozen=True)

    left: float = 0.0
    right: float = 0.0

    @field_validator("left", "right")
    @classmethod
    def _clamp(cls, value: float) -> float:
        if not math.isfinite(value):
            return value
        return max(-1.0, min(1.0, value))


class SensorNoise(BaseModel):
    """GPS / compass noise magnitudes and the simulation seed"""

    gps_sigma: float = Field(default=0.0, ge=0.0)
    compass_sigma: float = Field(default=0.0, ge=0.0)
    lidar_sigma: float = Field(default=0.0, ge=0.0)
    seed: int = 0


class DynamicsParams(BaseModel):
    """First-order-lag differential-drive model coefficients.

    Steady states: full thrust -> k_t / c_d = 2 m/s; full differential (r - l = 2)
    -> 2 * k_r / c_r = 0.5 rad/s.
    """

    k_t: float = Field(default=2.0, gt=0.0)
    c_d: float = Field(default=1.0, gt=0.0)
    m_eff: float = Field(default=1.0, gt=0.0)
    k_r: float = Field(default=0.5, gt=0.0)
    c_r: float = Field(default=2.0, gt=0.0)
    i_eff: float = Field(default=1.0, gt=0.0)
    surge_max: float = Field(default=2.0, gt=0.0)
    yaw_rate_max: float = Field(default=0.5, gt=0.0)
    vessel_radius: float = Field(default=1.0, gt=0.0)


class SensorReading(BaseModel):
    """One tick of sensor output handed to the estimator"""
    model_config = ConfigDict(frozen=True)

    gps: Tuple[float, float]
    compass: float
    motion_delta: Tuple[float, float] = (0.0, 0.0)
    gyro_delta: float = 0.0


class FusionGains(BaseModel):
    """Constant blend gains plus the variances used for the reported uncertainty"""
    position: float = Field(default=0.3, ge=0.0, le=1.0)
    heading: float = Field(default=0.5, ge=0.0, le=1.0)
    gps_var: float = Field(default=1.0, ge=0.0)
    compass_var: float = Field(default=0.01, ge=0.0)
    position_process_var: float = Field(default=1e-4, ge=0.0)
    yaw_process_var: float = Field(default=1e-5, ge=0.0)

    @classmethod
    def for_noise(cls, noise: SensorNoise, **overrides) -> "FusionGains":
        return cls(gps_var=noise.gps_sigma ** 2, compass_var=noise.compass_sigma ** 2, **overrides)


class PoseEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    pose: Pose2D = Field(default_factory=Pose2D)
    position_var: float = Field(default=0.0, ge=0.0)
    yaw_var: float = Field(default=0.0, ge=0.0)
