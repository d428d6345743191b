"""PID primitive over an explicit state record"""

from typing import Tuple

from usv_agent.errors import InputDomainError
from usv_agent.models.control_models import PIDGains, PIDState
from usv_agent.utils.geometry import is_finite


def clamp(value: float, limit: float) -> float:
    return max(-limit, min(limit, value))


def pid_reset(gains: PIDGains) -> PIDState:
    return PIDState(gains=gains)


def pid_step(state: PIDState, error: float, dt: float) -> Tuple[float, PIDState]:
    """One PID update.

    The accumulated integral is clamped to +-i_limit before the output is
    formed; the output is clamped to +-out_limit. The derivative is the first
    difference of the error and is zero on the first call.
    """
    if not is_finite(error, dt):
        raise InputDomainError(f"pid_step needs finite inputs, got error={error}, dt={dt}")
    if dt <= 0.0:
        raise InputDomainError(f"dt must be positive, got {dt}")

    gains = state.gains
    integral = clamp(state.integral + error * dt, gains.i_limit)
    derivative = (error - state.prev_error) / dt if state.initialized else 0.0
    output = clamp(gains.kp * error + gains.ki * integral + gains.kd * derivative, gains.out_limit)

    return output, PIDState(gains=gains, integral=integral, prev_error=error, initialized=True)
