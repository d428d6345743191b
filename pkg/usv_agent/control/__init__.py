"""PID primitives and vessel controllers"""

from usv_agent.control.pid import pid_reset, pid_step
from usv_agent.control.controllers import (
    action_to_thrust,
    along_track_error,
    cascade_position_control,
    heading_control,
    mix_thrust,
    speed_control,
)

__all__ = [
    "pid_step",
    "pid_reset",
    "heading_control",
    "speed_control",
    "along_track_error",
    "cascade_position_control",
    "mix_thrust",
    "action_to_thrust",
]
