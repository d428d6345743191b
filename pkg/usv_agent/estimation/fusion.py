"""
Constant-gain GPS / compass fusion.

Position and heading are filtered separately: each tick predicts with the
odometry (or gyro) increment, then blends toward the measurement with a fixed
gain. Heading blends along the wrapped minimal angular error.
"""

import logging
from typing import Optional, Tuple

from usv_agent.errors import InputDomainError
from usv_agent.models.vessel_models import FusionGains, Pose2D, PoseEstimate, SensorReading
from usv_agent.utils.geometry import angle_diff, is_finite, wrap_angle

logger = logging.getLogger(__name__)


def _blend_variance(predicted: float, gain: float, measurement_var: float) -> float:
    return (1.0 - gain) ** 2 * predicted + gain ** 2 * measurement_var


def fuse_position(
    prev: PoseEstimate,
    gps: Tuple[float, float],
    motion_delta: Tuple[float, float],
    gains: FusionGains,
) -> PoseEstimate:
    """Predict with the motion delta, then blend toward the GPS fix.

    A non-finite GPS reading skips the correction.
    """
    if not is_finite(*motion_delta):
        raise InputDomainError(f"non-finite motion delta {motion_delta}")
    px = prev.pose.x + motion_delta[0]
    py = prev.pose.y + motion_delta[1]
    var = prev.position_var + gains.position_process_var

    if is_finite(*gps):
        g = gains.position
        px += g * (gps[0] - px)
        py += g * (gps[1] - py)
        var = _blend_variance(var, g, gains.gps_var)
    else:
        logger.debug("GPS reading not finite, prediction only")

    return PoseEstimate(pose=Pose2D(x=px, y=py, yaw=prev.pose.yaw), position_var=var, yaw_var=prev.yaw_var)


def fuse_heading(prev: PoseEstimate, compass_yaw: float, gyro_delta: float, gains: FusionGains) -> PoseEstimate:
    """Complementary blend on the circle"""
    if not is_finite(gyro_delta):
        raise InputDomainError(f"non-finite gyro delta {gyro_delta}")
    yaw = wrap_angle(prev.pose.yaw + gyro_delta)
    var = prev.yaw_var + gains.yaw_process_var

    if is_finite(compass_yaw):
        g = gains.heading
        yaw = wrap_angle(yaw + g * angle_diff(compass_yaw, yaw))
        var = _blend_variance(var, g, gains.compass_var)
    else:
        logger.debug("Compass reading not finite, prediction only")

    return PoseEstimate(
        pose=Pose2D(x=prev.pose.x, y=prev.pose.y, yaw=yaw),
        position_var=prev.position_var,
        yaw_var=var,
    )


class PoseEstimator:
    """Holds the running estimate and applies both filters per sensor reading"""

    def __init__(self, initial: Pose2D, gains: Optional[FusionGains] = None):
        self.gains = gains or FusionGains()
        self.estimate = PoseEstimate(pose=initial)

    @property
    def pose(self) -> Pose2D:
        return self.estimate.pose

    def update(self, reading: SensorReading) -> PoseEstimate:
        estimate = fuse_position(self.estimate, reading.gps, reading.motion_delta, self.gains)
        self.estimate = fuse_heading(estimate, reading.compass, reading.gyro_delta, self.gains)
        return self.estimate
