"""
Pure-pursuit waypoint guidance.

The progress index is the next waypoint to visit. A waypoint counts as visited
once the vessel is inside arrival_radius. Progress is advanced first; the
lookahead walk then starts from the vessel's projection on the current segment
and follows the polyline past the pending waypoint, clamped only at the final
waypoint.
"""

import math
from typing import Optional, Sequence, Tuple

from usv_agent.control.controllers import heading_control, mix_thrust, speed_control
from usv_agent.models.behavior_models import WaypointPath
from usv_agent.models.control_models import ControlStates
from usv_agent.models.vessel_models import Pose2D, ThrustCommand
from usv_agent.utils.geometry import bearing, distance, project_on_segment

Point2 = Tuple[float, float]


def advance_progress(position: Sequence[float], path: WaypointPath, progress_index: int) -> int:
    """Skip every pending waypoint already inside the arrival radius"""
    k = progress_index
    waypoints = path.waypoints
    while k < len(waypoints) and distance(position, waypoints[k]) <= path.arrival_radius:
        k += 1
    return k


def walk_polyline(start: Sequence[float], waypoints: Sequence[Sequence[float]], first: int, length: float) -> Point2:
    """Point `length` metres along the polyline from `start` through waypoints[first:]"""
    here = (float(start[0]), float(start[1]))
    left = length
    for vertex in waypoints[first:]:
        leg = distance(here, vertex)
        if leg >= left:
            if leg <= 1e-12:
                return here
            frac = left / leg
            return (here[0] + frac * (vertex[0] - here[0]), here[1] + frac * (vertex[1] - here[1]))
        left -= leg
        here = (float(vertex[0]), float(vertex[1]))
    return here


def pure_pursuit_target(pose: Pose2D, path: WaypointPath, progress_index: int) -> Tuple[Point2, int]:
    """Lookahead point on the polyline and the updated progress index"""
    waypoints = path.waypoints
    k = advance_progress(pose.position, path, progress_index)
    if k >= len(waypoints):
        return tuple(waypoints[-1]), len(waypoints)
    if k == 0:
        return tuple(waypoints[0]), k

    t, projection = project_on_segment(pose.position, waypoints[k - 1], waypoints[k])
    first = k
    if t >= 1.0 and k + 1 < len(waypoints):
        # past the corner without capturing it: follow the next leg if it is closer
        _, ahead = project_on_segment(pose.position, waypoints[k], waypoints[k + 1])
        if distance(pose.position, ahead) < distance(pose.position, projection):
            projection, first = ahead, k + 1
    return walk_polyline(projection, waypoints, first, path.lookahead), k


def remaining_path_length(position: Sequence[float], path: WaypointPath, progress_index: int) -> float:
    """Arc length still to travel to the final waypoint"""
    waypoints = path.waypoints
    k = progress_index
    if k >= len(waypoints):
        return 0.0
    if k == 0:
        head = distance(position, waypoints[0])
    else:
        _, projection = project_on_segment(position, waypoints[k - 1], waypoints[k])
        head = distance(projection, waypoints[k])
    tail = sum(distance(a, b) for a, b in zip(waypoints[k:], waypoints[k + 1:]))
    return head + tail


def cruise_setpoint(cruise_speed: float, remaining: float, arrival_radius: float, slowdown_gain: float) -> float:
    """Cruise speed, ramped down over the last metres, zero inside the final arrival radius"""
    if remaining <= arrival_radius:
        return 0.0
    return min(cruise_speed, slowdown_gain * remaining)


def pure_pursuit_command(
    pose_est: Pose2D,
    speed_est: float,
    target_point: Point2,
    ctl_states: ControlStates,
    dt: float,
    speed_setpoint: Optional[float] = None,
) -> Tuple[ThrustCommand, ControlStates]:
    """Steer toward the target bearing and regulate speed to the setpoint"""
    if speed_setpoint is None:
        speed_setpoint = ctl_states.cascade.outer.gains.out_limit
    if distance(pose_est.position, target_point) > 1e-9:
        yaw_ref = bearing(pose_est.position, target_point)
    else:
        yaw_ref = pose_est.yaw
    if not math.isfinite(yaw_ref):
        yaw_ref = pose_est.yaw

    turn, heading_state = heading_control(pose_est.yaw, yaw_ref, ctl_states.heading, dt)
    surge, inner_state = speed_control(speed_setpoint, speed_est, ctl_states.cascade.inner, dt)
    states = ctl_states.model_copy(update={
        "heading": heading_state,
        "cascade": ctl_states.cascade.model_copy(update={"inner": inner_state}),
    })
    return mix_thrust(surge, turn), states
