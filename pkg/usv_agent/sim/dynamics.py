"""Differential-drive vessel dynamics"""

import math

from usv_agent.errors import InputDomainError
from usv_agent.models.vessel_models import DynamicsParams, Pose2D, ThrustCommand, VesselState
from usv_agent.utils.geometry import is_finite, wrap_angle


def _clamp(value: float, limit: float) -> float:
    return max(-limit, min(limit, value))


def step_dynamics(
    state: VesselState,
    cmd: ThrustCommand,
    dt: float,
    params: DynamicsParams = DynamicsParams(),
) -> VesselState:
    """Advance the vessel one tick.

    Surge and yaw rate follow a first-order lag with linear drag; the pose is
    integrated with unicycle kinematics using the updated rates (semi-implicit
    Euler).

    Raises:
        InputDomainError: on non-finite state, command or dt, or dt <= 0.
    """
    pose = state.pose
    if not is_finite(pose.x, pose.y, pose.yaw, state.surge, state.yaw_rate, cmd.left, cmd.right, dt):
        raise InputDomainError("step_dynamics received a non-finite input")
    if dt <= 0.0:
        raise InputDomainError(f"dt must be positive, got {dt}")

    surge_acc = (params.k_t * 0.5 * (cmd.left + cmd.right) - params.c_d * state.surge) / params.m_eff
    yaw_acc = (params.k_r * (cmd.right - cmd.left) - params.c_r * state.yaw_rate) / params.i_eff

    surge = _clamp(state.surge + dt * surge_acc, params.surge_max)
    yaw_rate = _clamp(state.yaw_rate + dt * yaw_acc, params.yaw_rate_max)

    yaw = pose.yaw + dt * yaw_rate
    x = pose.x + dt * surge * math.cos(yaw)
    y = pose.y + dt * surge * math.sin(yaw)

    return VesselState(pose=Pose2D(x=x, y=y, yaw=wrap_angle(yaw)), surge=surge, yaw_rate=yaw_rate)
