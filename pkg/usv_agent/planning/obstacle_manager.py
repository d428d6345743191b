"""
Obstacle manager: tracks clustered obstacles as inflated convex footprints and
raises proximity alerts.
"""

import logging
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np
from shapely.geometry import MultiPoint, Point, Polygon
from shapely.geometry.polygon import orient

from usv_agent.models.perception_models import PointCloud
from usv_agent.models.planning_models import ObstacleAlert, ObstacleTrack, TrackerParams
from usv_agent.models.vessel_models import Pose2D

logger = logging.getLogger(__name__)

ClusterLike = Union[PointCloud, np.ndarray, Sequence[Sequence[float]]]

# Segments per quarter circle when rounding the inflated hull corners
HULL_QUAD_SEGS = 2


def _xy(cluster: ClusterLike) -> np.ndarray:
    points = cluster.points if isinstance(cluster, PointCloud) else np.asarray(cluster, dtype=float)
    return points.reshape(len(points), -1)[:, :2]


def inflated_hull(points_xy: np.ndarray, margin: float) -> List[tuple]:
    """Convex hull of the points grown by margin, CCW, without the closing vertex"""
    hull = MultiPoint([tuple(p) for p in points_xy]).convex_hull
    grown = hull.buffer(max(margin, 1e-3), quad_segs=HULL_QUAD_SEGS).convex_hull
    grown = orient(grown, sign=1.0)
    return [(float(x), float(y)) for x, y in list(grown.exterior.coords)[:-1]]


def footprint_polygon(track: ObstacleTrack) -> Polygon:
    return Polygon(track.footprint)


def update_obstacle_tracks(
    tracks: List[ObstacleTrack],
    clustered_points_world: Iterable[ClusterLike],
    tick: int,
    params: TrackerParams,
) -> List[ObstacleTrack]:
    """Match clusters to tracks, spawn new tracks, drop stale ones.

    Matching is greedy on centroid distance within the gate; a matched track's
    footprint is replaced by the cluster's inflated hull. Tracks unseen for more
    than ttl ticks are dropped. Result ordered by id.
    """
    clusters = [_xy(c) for c in clustered_points_world]
    clusters = [c for c in clusters if len(c) > 0]
    centroids = [c.mean(axis=0) for c in clusters]

    pairs = []
    for ci, centroid in enumerate(centroids):
        for ti, track in enumerate(tracks):
            gap = float(np.hypot(*(centroid - np.asarray(track.centroid))))
            if gap <= params.gate_distance:
                pairs.append((gap, ci, ti))
    pairs.sort()

    matched_clusters, matched_tracks = {}, set()
    for gap, ci, ti in pairs:
        if ci in matched_clusters or ti in matched_tracks:
            continue
        matched_clusters[ci] = ti
        matched_tracks.add(ti)

    updated: List[ObstacleTrack] = []
    for ti, track in enumerate(tracks):
        cluster_index = next((ci for ci, t in matched_clusters.items() if t == ti), None)
        if cluster_index is not None:
            updated.append(track.model_copy(update={
                "footprint": inflated_hull(clusters[cluster_index], params.safety_margin),
                "last_seen_tick": tick,
            }))
        elif tick - track.last_seen_tick <= params.ttl:
            updated.append(track)
        else:
            logger.debug(f"Dropping stale track {track.id} (last seen {track.last_seen_tick})")

    next_id = max((t.id for t in tracks), default=-1) + 1
    for ci, cluster in enumerate(clusters):
        if ci in matched_clusters:
            continue
        updated.append(ObstacleTrack(
            id=next_id,
            footprint=inflated_hull(cluster, params.safety_margin),
            last_seen_tick=tick,
        ))
        logger.debug(f"New track {next_id} at {tuple(np.round(centroids[ci], 2))}")
        next_id += 1

    return sorted(updated, key=lambda t: t.id)


def raise_alerts(tracks: List[ObstacleTrack], vessel_pose: Pose2D, alert_range: float) -> List[ObstacleAlert]:
    """One alert per track whose footprint lies within alert_range, nearest first"""
    if alert_range <= 0.0:
        raise ValueError(f"alert_range must be positive, got {alert_range}")
    vessel = Point(vessel_pose.x, vessel_pose.y)
    alerts = []
    for track in tracks:
        gap = float(footprint_polygon(track).distance(vessel))
        if gap <= alert_range:
            alerts.append(ObstacleAlert(track_id=track.id, distance=gap))
    return sorted(alerts, key=lambda a: (a.distance, a.track_id))


class ObstacleManager:
    """Owns the obstacle tracks between perception cycles"""

    def __init__(self, params: Optional[TrackerParams] = None, alert_range: float = 15.0):
        self.params = params or TrackerParams()
        self.alert_range = alert_range
        self.tracks: List[ObstacleTrack] = []
        self.alert_count = 0

    def update(self, clusters_world: Iterable[ClusterLike], tick: int, vessel_pose: Pose2D) -> List[ObstacleAlert]:
        self.tracks = update_obstacle_tracks(self.tracks, clusters_world, tick, self.params)
        alerts = raise_alerts(self.tracks, vessel_pose, self.alert_range)
        active = {a.track_id for a in alerts}
        newly_active = [t.id for t in self.tracks if t.id in active and not t.alert_active]
        self.tracks = [t.model_copy(update={"alert_active": t.id in active}) for t in self.tracks]
        if newly_active:
            self.alert_count += len(newly_active)
            logger.debug(f"OBSTACLE_ALERT for tracks {newly_active}")
        return alerts

    def footprints(self) -> List[List[tuple]]:
        return [t.footprint for t in self.tracks]
