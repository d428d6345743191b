"""
Heading controller, cascade position controller and differential thrust mixing.

Sign convention: positive turn effort turns counter-clockwise (to port), i.e.
the right thruster pushes harder.
"""

import math
from typing import Tuple

from usv_agent.errors import InputDomainError
from usv_agent.control.pid import clamp, pid_step
from usv_agent.models.agent_models import DiscreteAction
from usv_agent.models.control_models import CascadeState, PIDState
from usv_agent.models.vessel_models import Pose2D, ThrustCommand
from usv_agent.utils.geometry import angle_diff, is_finite


def heading_control(yaw_est: float, yaw_ref: float, state: PIDState, dt: float) -> Tuple[float, PIDState]:
    """Turn effort in [-1, 1] from the wrapped heading error"""
    if not is_finite(yaw_est, yaw_ref):
        raise InputDomainError("heading_control needs finite angles")
    output, state = pid_step(state, angle_diff(yaw_ref, yaw_est), dt)
    return clamp(output, 1.0), state


def speed_control(speed_setpoint: float, measured_speed: float, state: PIDState, dt: float) -> Tuple[float, PIDState]:
    """Inner loop of the cascade: speed error to surge effort in [-1, 1]"""
    output, state = pid_step(state, speed_setpoint - measured_speed, dt)
    return clamp(output, 1.0), state


def along_track_error(pose_est: Pose2D, target: Tuple[float, float]) -> float:
    """Distance to target projected on the current heading"""
    return (target[0] - pose_est.x) * math.cos(pose_est.yaw) + (target[1] - pose_est.y) * math.sin(pose_est.yaw)


def cascade_position_control(
    pose_est: Pose2D,
    target: Tuple[float, float],
    measured_speed: float,
    state: CascadeState,
    dt: float,
) -> Tuple[float, CascadeState]:
    """Outer loop: along-track error to a speed setpoint within +-v_max.
    Inner loop: speed error to surge effort.
    """
    setpoint, outer = pid_step(state.outer, along_track_error(pose_est, target), dt)
    effort, inner = speed_control(setpoint, measured_speed, state.inner, dt)
    return effort, CascadeState(outer=outer, inner=inner)


def mix_thrust(surge_effort: float, turn_effort: float) -> ThrustCommand:
    if not is_finite(surge_effort, turn_effort):
        raise InputDomainError("mix_thrust needs finite efforts")
    return ThrustCommand(left=surge_effort - turn_effort, right=surge_effort + turn_effort)


def action_to_thrust(action: DiscreteAction, cruise: float = 0.5, turn: float = 0.5) -> ThrustCommand:
    """Fixed thrust pair per discrete action; defaults give (0.5, 0.5), (0, 1), (1, 0)"""
    if action is DiscreteAction.GO_STRAIGHT:
        return ThrustCommand(left=cruise, right=cruise)
    if action is DiscreteAction.TURN_LEFT:
        return ThrustCommand(left=cruise - turn, right=cruise + turn)
    return ThrustCommand(left=cruise + turn, right=cruise - turn)
