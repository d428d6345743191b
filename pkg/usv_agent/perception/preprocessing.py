"""
Point-cloud preprocessing: sea-plane removal, noise filtering, clustering and
object-frame normalisation.
"""

import logging
import math
from typing import List

import numpy as np
from sklearn.cluster import DBSCAN
from sklearn.linear_model import LinearRegression, RANSACRegressor
from sklearn.neighbors import NearestNeighbors

from usv_agent.errors import InputDomainError
from usv_agent.models.perception_models import (
    CloudFrame,
    PerceptionParams,
    PointCloud,
    RansacParams,
    SeaPlaneResult,
)

logger = logging.getLogger(__name__)

NO_PLANE_FLAG = "no_plane"
YAW_UNDEFINED_FLAG = "yaw_undefined"


def remove_sea_plane(cloud: PointCloud, params: RansacParams) -> SeaPlaneResult:
    """Fit the dominant plane z = a*x + b*y + c with RANSAC and drop its inliers.

    Points are removed by perpendicular distance <= epsilon to the unit-normal
    plane (a, b, c, d) with c >= 0. Without a plane holding at least
    min_inlier_fraction of the points the cloud comes back unchanged and flagged.
    """
    n_points = len(cloud)
    if n_points < params.min_points:
        return SeaPlaneResult(cloud=_flagged(cloud, NO_PLANE_FLAG))

    xy, z = cloud.points[:, :2], cloud.points[:, 2]
    ransac = RANSACRegressor(
        estimator=LinearRegression(),
        min_samples=3,
        residual_threshold=params.epsilon,
        max_trials=params.n_iter,
        random_state=params.seed,
    )
    try:
        ransac.fit(xy, z)
    except ValueError as e:
        logger.debug(f"RANSAC found no consensus set: {e}")
        return SeaPlaneResult(cloud=_flagged(cloud, NO_PLANE_FLAG))

    a, b = ransac.estimator_.coef_
    c0 = ransac.estimator_.intercept_
    plane = np.array([-a, -b, 1.0, -c0])
    plane /= np.linalg.norm(plane[:3])

    distances = np.abs(cloud.points @ plane[:3] + plane[3])
    inliers = distances <= params.epsilon
    inlier_count = int(inliers.sum())
    if inlier_count < params.min_inlier_fraction * n_points:
        return SeaPlaneResult(cloud=_flagged(cloud, NO_PLANE_FLAG), inlier_count=inlier_count)

    return SeaPlaneResult(
        cloud=cloud.subset(~inliers),
        plane=[float(v) for v in plane],
        plane_found=True,
        inlier_count=inlier_count,
    )


def _flagged(cloud: PointCloud, flag: str) -> PointCloud:
    flags = list(cloud.flags) if flag in cloud.flags else list(cloud.flags) + [flag]
    return PointCloud(frame=cloud.frame, points=cloud.points, labels=cloud.labels, flags=flags)


def denoise(cloud: PointCloud, k: int, radius: float) -> PointCloud:
    """Drop points with fewer than k other points within radius"""
    if k < 1:
        raise InputDomainError(f"k must be >= 1, got {k}")
    if cloud.is_empty:
        return cloud
    neighbors = NearestNeighbors(radius=radius).fit(cloud.points)
    counts = np.array([len(idx) - 1 for idx in neighbors.radius_neighbors(cloud.points, return_distance=False)])
    return cloud.subset(counts >= k)


def cluster(cloud: PointCloud, link_distance: float, min_cluster_size: int) -> List[PointCloud]:
    """Single-linkage Euclidean clusters, largest first, ties by centroid"""
    if link_distance <= 0.0:
        raise InputDomainError(f"link_distance must be positive, got {link_distance}")
    if cloud.is_empty:
        return []
    # DBSCAN with min_samples=1 is single linkage cut at eps
    labels = DBSCAN(eps=link_distance, min_samples=1).fit(cloud.points).labels_
    clusters = []
    for label in np.unique(labels):
        mask = labels == label
        if mask.sum() >= min_cluster_size:
            clusters.append(cloud.subset(mask))
    clusters.sort(key=lambda c: (-len(c), tuple(c.points.mean(axis=0))))
    return clusters


def normalize_to_object_frame(cloud: PointCloud, rotate: bool = True, eps: float = 1e-6) -> PointCloud:
    """Move the origin to the cluster centroid and yaw the x-axis along the
    horizontal direction from the sensor to the centroid; z stays vertical.

    With rotate=False only the centring is applied.
    """
    if cloud.is_empty:
        raise InputDomainError("cannot normalise an empty cluster")
    centroid = cloud.points.mean(axis=0)
    shifted = cloud.points - centroid
    flags = list(cloud.flags)

    if not rotate:
        return PointCloud(frame=CloudFrame.OBJECT, points=shifted, labels=cloud.labels, flags=flags)
    if math.hypot(centroid[0], centroid[1]) < eps:
        if YAW_UNDEFINED_FLAG not in flags:
            flags.append(YAW_UNDEFINED_FLAG)
        return PointCloud(frame=CloudFrame.OBJECT, points=shifted, labels=cloud.labels, flags=flags)

    yaw = math.atan2(centroid[1], centroid[0])
    c, s = math.cos(yaw), math.sin(yaw)
    rotated = np.column_stack([
        c * shifted[:, 0] + s * shifted[:, 1],
        -s * shifted[:, 0] + c * shifted[:, 1],
        shifted[:, 2],
    ])
    return PointCloud(frame=CloudFrame.OBJECT, points=rotated, labels=cloud.labels, flags=flags)


def segment_objects(cloud: PointCloud, params: PerceptionParams) -> List[PointCloud]:
    """Sea-plane removal, denoise and clustering on a raw sensor-frame scan"""
    above_sea = remove_sea_plane(cloud, params.ransac).cloud
    filtered = denoise(above_sea, params.denoise.k, params.denoise.radius)
    return cluster(filtered, params.cluster.link_distance, params.cluster.min_cluster_size)


def sensor_to_world(cloud: PointCloud, x: float, y: float, yaw: float) -> np.ndarray:
    """Planar sensor-frame points to world (x, y)"""
    c, s = math.cos(yaw), math.sin(yaw)
    pts = cloud.points
    return np.column_stack([x + c * pts[:, 0] - s * pts[:, 1], y + s * pts[:, 0] + c * pts[:, 1]])

