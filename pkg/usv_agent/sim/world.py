"""
World geometry: object footprints, periodic arena offsets and the collision check.
"""

import logging
import math
from typing import List, Optional, Tuple, Union

import numpy as np
from shapely import affinity
from shapely.geometry import Point, Polygon, box

from usv_agent.models.vessel_models import Pose2D, VesselState
from usv_agent.models.world_models import ShapeType, WorldConfig, WorldObject
from usv_agent.utils.geometry import periodic_offset

logger = logging.getLogger(__name__)

PoseLike = Union[Pose2D, VesselState]


def as_pose(vessel: PoseLike) -> Pose2D:
    return vessel.pose if isinstance(vessel, VesselState) else vessel


def object_center(world: WorldConfig, obj: WorldObject, origin: Tuple[float, float]) -> Tuple[float, float]:
    """Object centre as seen from origin; nearest periodic image when the arena wraps"""
    cx, cy = obj.pose.x, obj.pose.y
    if world.arena_size is None:
        return cx, cy
    offset = periodic_offset(np.array([cx - origin[0], cy - origin[1]]), world.arena_size)
    return origin[0] + float(offset[0]), origin[1] + float(offset[1])


def object_footprint(
    obj: WorldObject,
    center: Optional[Tuple[float, float]] = None,
    margin: float = 0.0,
    quad_segs: int = 16,
) -> Polygon:
    """Planar footprint of an object as a shapely polygon, optionally inflated"""
    cx, cy = center if center is not None else (obj.pose.x, obj.pose.y)
    if obj.shape == ShapeType.CIRCLE:
        return Point(cx, cy).buffer(obj.size.radius + margin, quad_segs=quad_segs)
    half_l, half_w = 0.5 * obj.size.length, 0.5 * obj.size.width
    rect = box(-half_l, -half_w, half_l, half_w)
    rect = affinity.rotate(rect, obj.pose.yaw, origin=(0.0, 0.0), use_radians=True)
    rect = affinity.translate(rect, cx, cy)
    if margin > 0.0:
        rect = rect.buffer(margin, quad_segs=quad_segs)
    return rect


def clearance_to_object(obj: WorldObject, center: Tuple[float, float], point: Tuple[float, float]) -> float:
    """Distance from point to the object footprint, 0 inside"""
    if obj.shape == ShapeType.CIRCLE:
        return max(0.0, math.hypot(point[0] - center[0], point[1] - center[1]) - obj.size.radius)
    return float(object_footprint(obj, center).distance(Point(point)))


class CircleField:
    """Circular footprints as arrays, for batched ray casts and contact tests.

    With an arena_size the field is periodic and every query sees the nearest
    image of each circle.
    """

    def __init__(self, centers: np.ndarray, radii: np.ndarray, arena_size: Optional[float] = None):
        self.centers = np.asarray(centers, dtype=float).reshape(-1, 2)
        self.radii = np.asarray(radii, dtype=float).reshape(-1)
        if self.centers.shape[0] != self.radii.shape[0]:
            raise ValueError("centers and radii must have the same length")
        self.arena_size = arena_size

    @classmethod
    def from_world(cls, world: WorldConfig) -> "CircleField":
        circles = [obj for obj in world.objects if obj.shape == ShapeType.CIRCLE]
        centers = np.array([[obj.pose.x, obj.pose.y] for obj in circles]).reshape(-1, 2)
        radii = np.array([obj.size.radius for obj in circles])
        return cls(centers, radii, world.arena_size)

    def __len__(self) -> int:
        return int(self.radii.shape[0])

    def relative_centers(self, origin: Tuple[float, float]) -> np.ndarray:
        rel = self.centers - np.asarray(origin, dtype=float)
        if self.arena_size is not None:
            rel = periodic_offset(rel, self.arena_size)
        return rel

    def clearances(self, origin: Tuple[float, float]) -> np.ndarray:
        """Distance from origin to each footprint, 0 inside"""
        rel = self.relative_centers(origin)
        return np.maximum(0.0, np.hypot(rel[:, 0], rel[:, 1]) - self.radii)

    def collides(self, origin: Tuple[float, float], radius: float) -> bool:
        return bool(len(self) and np.any(self.clearances(origin) <= radius))

    def ray_distances(self, origin: Tuple[float, float], dirs: np.ndarray, max_range: float = np.inf) -> np.ndarray:
        """First hit distance along each unit 2-D direction, inf on miss; tangency counts"""
        rel = self.relative_centers(origin)
        nearby = np.hypot(rel[:, 0], rel[:, 1]) - self.radii <= max_range
        rel, radii = rel[nearby], self.radii[nearby]
        if rel.shape[0] == 0:
            return np.full(dirs.shape[0], np.inf)
        t_ca = dirs @ rel.T
        d2 = np.sum(rel * rel, axis=1)[None, :] - t_ca ** 2
        inside = radii[None, :] ** 2 - d2
        hit = inside >= 0.0
        thc = np.sqrt(np.where(hit, inside, 0.0))
        t0, t1 = t_ca - thc, t_ca + thc
        t = np.where(t0 >= 0.0, t0, t1)
        t = np.where(hit & (t >= 0.0), t, np.inf)
        return t.min(axis=1)


def check_collision(world: WorldConfig, vessel: PoseLike, vessel_radius: Optional[float] = None) -> bool:
    """True iff the vessel disc touches any object footprint (closed contact)"""
    pose = as_pose(vessel)
    radius = world.dynamics.vessel_radius if vessel_radius is None else vessel_radius
    position = pose.position
    if CircleField.from_world(world).collides(position, radius):
        logger.debug(f"Collision with a circular object at {position}")
        return True
    for obj in world.objects:
        if obj.shape == ShapeType.CIRCLE:
            continue
        center = object_center(world, obj, position)
        if math.hypot(center[0] - position[0], center[1] - position[1]) - obj.bounding_radius > radius:
            continue
        if clearance_to_object(obj, center, position) <= radius:
            logger.debug(f"Collision with object {obj.id} ({obj.kind.value}) at {position}")
            return True
    return False


def objects_by_kind(world: WorldConfig, kind) -> List[WorldObject]:
    return [obj for obj in world.objects if obj.kind == kind]


def find_object(world: WorldConfig, object_id: int) -> WorldObject:
    for obj in world.objects:
        if obj.id == object_id:
            return obj
    raise KeyError(f"world has no object with id {object_id}")
