"""Waypoint guidance, station keeping and the closed-loop mission runner"""

from usv_agent.guidance.pure_pursuit import (
    advance_progress,
    cruise_setpoint,
    pure_pursuit_command,
    pure_pursuit_target,
    remaining_path_length,
    walk_polyline,
)
from usv_agent.guidance.missions import (
    MissionBehavior,
    StationKeepBehavior,
    WaypointBehavior,
    build_simulation,
    run_closed_loop,
    run_mission,
    station_keep,
)

__all__ = [
    "advance_progress",
    "cruise_setpoint",
    "pure_pursuit_target",
    "pure_pursuit_command",
    "remaining_path_length",
    "walk_polyline",
    "MissionBehavior",
    "WaypointBehavior",
    "StationKeepBehavior",
    "build_simulation",
    "run_closed_loop",
    "run_mission",
    "station_keep",
]
