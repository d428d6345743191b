"""
Planar geometry helpers shared by the simulator, estimator, controllers and planner.
"""

import math
from typing import Sequence, Tuple

import numpy as np

TWO_PI = 2.0 * math.pi


def wrap_angle(angle: float) -> float:
    """Wrap an angle into (-pi, pi]"""
    wrapped = math.remainder(angle, TWO_PI)
    if wrapped <= -math.pi:
        wrapped += TWO_PI
    return wrapped


def angle_diff(target: float, current: float) -> float:
    """Minimal signed angular difference target - current, in (-pi, pi]"""
    return wrap_angle(target - current)


def wrap_angles(angles: np.ndarray) -> np.ndarray:
    """Vectorised wrap into (-pi, pi]"""
    wrapped = np.remainder(angles + math.pi, TWO_PI) - math.pi
    return np.where(wrapped <= -math.pi, wrapped + TWO_PI, wrapped)


def is_finite(*values: float) -> bool:
    return all(math.isfinite(v) for v in values)


def rotation_2d(yaw: float) -> np.ndarray:
    c, s = math.cos(yaw), math.sin(yaw)
    return np.array([[c, -s], [s, c]])


def distance(p: Sequence[float], q: Sequence[float]) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def bearing(origin: Sequence[float], point: Sequence[float]) -> float:
    """Bearing from origin to point, world frame"""
    return math.atan2(point[1] - origin[1], point[0] - origin[0])


def project_on_segment(p: Sequence[float], a: Sequence[float], b: Sequence[float]) -> Tuple[float, Tuple[float, float]]:
    """Project p onto segment ab.

    Returns:
        (t, point) with t in [0, 1] the clamped segment parameter.
    """
    ax, ay = a
    dx, dy = b[0] - ax, b[1] - ay
    seg_len_sq = dx * dx + dy * dy
    if seg_len_sq == 0.0:
        return 0.0, (ax, ay)
    t = ((p[0] - ax) * dx + (p[1] - ay) * dy) / seg_len_sq
    t = min(1.0, max(0.0, t))
    return t, (ax + t * dx, ay + t * dy)


def periodic_offset(delta: np.ndarray, extent: float) -> np.ndarray:
    """Minimal-image offset on a periodic axis of length extent"""
    return delta - extent * np.round(delta / extent)
