"""
Simulated sensors: 3-D LiDAR point sampling, planar range scan, GPS and compass.

All ray casts are analytic against the object primitives (vertical cylinders and
yawed boxes); the sea is the plane z = 0, the LiDAR sits sensor_height above it.
"""

import logging
import math
from typing import Dict, Optional, Tuple

import numpy as np

from usv_agent.models.perception_models import CloudFrame, PointCloud
from usv_agent.models.vessel_models import SensorNoise
from usv_agent.models.world_models import LidarParams, RangeScan, ShapeType, WorldConfig, WorldObject
from usv_agent.sim.world import CircleField, PoseLike, as_pose, object_center
from usv_agent.utils.geometry import TWO_PI, wrap_angle

logger = logging.getLogger(__name__)

MIN_RANGE = 1e-6


def _slab_hits(origin: np.ndarray, dirs: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Ray / axis-aligned box intersection, closed box. Returns first t >= 0, inf on miss."""
    n_rays = dirs.shape[0]
    t_near = np.full(n_rays, -np.inf)
    t_far = np.full(n_rays, np.inf)
    with np.errstate(divide="ignore", invalid="ignore"):
        for axis in range(dirs.shape[1]):
            d = dirs[:, axis]
            parallel = d == 0.0
            t1 = (lo[axis] - origin[axis]) / d
            t2 = (hi[axis] - origin[axis]) / d
            lo_t = np.where(parallel, -np.inf, np.minimum(t1, t2))
            hi_t = np.where(parallel, np.inf, np.maximum(t1, t2))
            if lo[axis] > origin[axis] or origin[axis] > hi[axis]:
                # parallel rays outside this slab never enter
                lo_t = np.where(parallel, np.inf, lo_t)
                hi_t = np.where(parallel, -np.inf, hi_t)
            t_near = np.maximum(t_near, lo_t)
            t_far = np.minimum(t_far, hi_t)
    hit = (t_far >= t_near) & (t_far >= 0.0)
    t = np.where(t_near >= 0.0, t_near, t_far)
    return np.where(hit, t, np.inf)


def _local_frame(rel_center: np.ndarray, dirs_xy: np.ndarray, yaw: float) -> Tuple[np.ndarray, np.ndarray]:
    """Express the sensor origin and ray directions in an object's yawed frame"""
    c, s = math.cos(-yaw), math.sin(-yaw)
    rot = np.array([[c, -s], [s, c]])
    return rot @ (-rel_center), dirs_xy @ rot.T


def _box_hits_2d(obj: WorldObject, rel_center: np.ndarray, dirs: np.ndarray) -> np.ndarray:
    origin, local_dirs = _local_frame(rel_center, dirs, obj.pose.yaw)
    half = np.array([0.5 * obj.size.length, 0.5 * obj.size.width])
    return _slab_hits(origin, local_dirs, -half, half)


def _cylinder_hits_3d(rel_center: np.ndarray, dirs: np.ndarray, radius: float, height: float, z0: float) -> np.ndarray:
    """Vertical cylinder on the sea plane, sensor at height z0 above the plane"""
    dx, dy, dz = dirs[:, 0], dirs[:, 1], dirs[:, 2]
    a = dx * dx + dy * dy
    b = -2.0 * (dx * rel_center[0] + dy * rel_center[1])
    c = float(rel_center @ rel_center) - radius ** 2
    disc = b * b - 4.0 * a * c
    best = np.full(dirs.shape[0], np.inf)
    with np.errstate(divide="ignore", invalid="ignore"):
        side_ok = (a > 0.0) & (disc >= 0.0)
        sq = np.sqrt(np.where(side_ok, disc, 0.0))
        for root in ((-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)):
            z = z0 + root * dz
            valid = side_ok & (root >= 0.0) & (z >= 0.0) & (z <= height)
            best = np.where(valid & (root < best), root, best)
        t_cap = (height - z0) / dz
        px = t_cap * dx - rel_center[0]
        py = t_cap * dy - rel_center[1]
        cap_ok = (dz != 0.0) & (t_cap >= 0.0) & (px * px + py * py <= radius ** 2)
        best = np.where(cap_ok & (t_cap < best), t_cap, best)
    return best


def _cast_3d(obj: WorldObject, rel_center: np.ndarray, dirs: np.ndarray, z0: float) -> np.ndarray:
    if obj.shape == ShapeType.CIRCLE:
        return _cylinder_hits_3d(rel_center, dirs, obj.size.radius, obj.height, z0)
    origin_xy, local_xy = _local_frame(rel_center, dirs[:, :2], obj.pose.yaw)
    origin = np.array([origin_xy[0], origin_xy[1], z0])
    local = np.column_stack([local_xy, dirs[:, 2]])
    half_l, half_w = 0.5 * obj.size.length, 0.5 * obj.size.width
    return _slab_hits(origin, local, np.array([-half_l, -half_w, 0.0]), np.array([half_l, half_w, obj.height]))


def lidar_ray_directions(params: LidarParams) -> np.ndarray:
    """Unit body-frame directions, azimuth-major; azimuths 2*pi*i/rays_h"""
    azimuths = TWO_PI * np.arange(params.rays_h) / params.rays_h
    if params.rays_v == 1:
        elevations = np.array([0.5 * (params.elevation_min + params.elevation_max)])
    else:
        elevations = np.linspace(params.elevation_min, params.elevation_max, params.rays_v)
    az, el = np.meshgrid(azimuths, elevations, indexing="ij")
    az, el = az.ravel(), el.ravel()
    return np.column_stack([np.cos(el) * np.cos(az), np.cos(el) * np.sin(az), np.sin(el)])


def sample_lidar_cloud(
    world: WorldConfig,
    vessel: PoseLike,
    params: LidarParams,
    rng: Optional[np.random.Generator] = None,
    range_sigma: float = 0.0,
) -> PointCloud:
    """First-hit points of the LiDAR in the sensor frame.

    The sensor frame has its origin at the LiDAR, x along the vessel heading and
    z up; sea returns lie at z = -sensor_height. Labels carry the hit object id,
    -1 for the sea.
    """
    pose = as_pose(vessel)
    body_dirs = lidar_ray_directions(params)
    c, s = math.cos(pose.yaw), math.sin(pose.yaw)
    world_dirs = np.column_stack([
        c * body_dirs[:, 0] - s * body_dirs[:, 1],
        s * body_dirs[:, 0] + c * body_dirs[:, 1],
        body_dirs[:, 2],
    ])
    z0 = params.sensor_height

    best = np.full(len(body_dirs), np.inf)
    labels = np.full(len(body_dirs), -1, dtype=int)
    with np.errstate(divide="ignore"):
        sea = np.where(world_dirs[:, 2] < 0.0, z0 / -world_dirs[:, 2], np.inf)
    best = np.minimum(best, sea)

    for obj in world.objects:
        center = object_center(world, obj, pose.position)
        rel = np.array([center[0] - pose.x, center[1] - pose.y])
        if np.hypot(*rel) - obj.bounding_radius > params.max_range:
            continue
        t = _cast_3d(obj, rel, world_dirs, z0)
        closer = t < best
        best = np.where(closer, t, best)
        labels = np.where(closer, obj.id, labels)

    keep = best <= params.max_range
    ranges = best[keep]
    if range_sigma > 0.0:
        generator = _generator("lidar", 0, rng)
        ranges = np.clip(ranges + generator.normal(0.0, range_sigma, size=ranges.shape), MIN_RANGE, params.max_range)
    points = body_dirs[keep] * ranges[:, None]
    return PointCloud(frame=CloudFrame.SENSOR, points=points, labels=labels[keep])


def beam_angles(n_beams: int, fov: float) -> np.ndarray:
    """Evenly spaced body-frame bearings centred on the bow"""
    if fov >= TWO_PI - 1e-12:
        return -math.pi + TWO_PI * np.arange(n_beams) / n_beams
    return np.linspace(-0.5 * fov, 0.5 * fov, n_beams)


def sample_range_scan(world: WorldConfig, vessel: PoseLike, n_beams: int, fov: float, max_range: float) -> RangeScan:
    """Nearest footprint intersection per beam, max_range where none"""
    if n_beams < 3:
        raise ValueError(f"n_beams must be >= 3, got {n_beams}")
    pose = as_pose(vessel)
    angles = beam_angles(n_beams, fov)
    headings = pose.yaw + angles
    dirs = np.column_stack([np.cos(headings), np.sin(headings)])

    ranges = np.minimum(float(max_range), CircleField.from_world(world).ray_distances(pose.position, dirs, max_range))
    for obj in world.objects:
        if obj.shape == ShapeType.CIRCLE:
            continue
        center = object_center(world, obj, pose.position)
        rel = np.array([center[0] - pose.x, center[1] - pose.y])
        if np.hypot(*rel) - obj.bounding_radius > max_range:
            continue
        ranges = np.minimum(ranges, _box_hits_2d(obj, rel, dirs))
    ranges = np.clip(ranges, MIN_RANGE, max_range)
    return RangeScan(angles=angles, ranges=ranges, max_range=max_range)


SENSOR_STREAMS = ("gps", "compass", "lidar")

# rng-less calls draw from one persistent stream per (sensor, seed)
_default_streams: Dict[Tuple[str, int], np.random.Generator] = {}


def spawn_sensor_streams(seed: int) -> Dict[str, np.random.Generator]:
    """Independent generators for every sensor, derived from one seed"""
    children = np.random.SeedSequence(seed).spawn(len(SENSOR_STREAMS))
    return {name: np.random.default_rng(child) for name, child in zip(SENSOR_STREAMS, children)}


def reset_sensor_streams() -> None:
    _default_streams.clear()


def _generator(sensor: str, seed: int, rng: Optional[np.random.Generator]) -> np.random.Generator:
    if rng is not None:
        return rng
    key = (sensor, seed)
    if key not in _default_streams:
        _default_streams.update({(name, seed): gen for name, gen in spawn_sensor_streams(seed).items()})
    return _default_streams[key]


def read_gps(vessel: PoseLike, noise: SensorNoise, rng: Optional[np.random.Generator] = None) -> Tuple[float, float]:
    """Truth position plus zero-mean Gaussian noise of gps_sigma"""
    pose = as_pose(vessel)
    if noise.gps_sigma == 0.0:
        return pose.x, pose.y
    dx, dy = _generator("gps", noise.seed, rng).normal(0.0, noise.gps_sigma, size=2)
    return pose.x + float(dx), pose.y + float(dy)


def read_compass(vessel: PoseLike, noise: SensorNoise, rng: Optional[np.random.Generator] = None) -> float:
    """Truth yaw plus Gaussian noise, wrapped into (-pi, pi]"""
    pose = as_pose(vessel)
    if noise.compass_sigma == 0.0:
        return pose.yaw
    return wrap_angle(pose.yaw + float(_generator("compass", noise.seed, rng).normal(0.0, noise.compass_sigma)))
