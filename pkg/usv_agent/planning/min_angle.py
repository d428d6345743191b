"""
Minimum-angle real-time path planner.

Connect start to goal; while the segment hits an obstacle, detour around the
first blocker on whichever side needs the smaller heading change.
"""

import logging
import math
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import shapely
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra
from shapely.geometry import LineString, Point, Polygon

from usv_agent.errors import PlannerError
from usv_agent.models.planning_models import ObstacleTrack, PlannedPath, PlannerParams
from usv_agent.utils.geometry import angle_diff, bearing, distance

logger = logging.getLogger(__name__)

Point2 = Tuple[float, float]
FootprintLike = Union[ObstacleTrack, Sequence[Point2], Polygon]

TIE_TOLERANCE = 1e-9
MAX_PUSH_STEPS = 4
# Inner ring of graph nodes, for gaps narrower than the clearance
NARROW_OFFSET = 0.2


def _as_polygon(footprint: FootprintLike) -> Polygon:
    if isinstance(footprint, Polygon):
        return footprint
    if isinstance(footprint, ObstacleTrack):
        return Polygon(footprint.footprint)
    return Polygon(footprint)


def _segment(p0: Point2, p1: Point2):
    if p0[0] == p1[0] and p0[1] == p1[1]:
        return Point(p0)
    return LineString([p0, p1])


def segment_collides(p0: Point2, p1: Point2, footprint: FootprintLike) -> bool:
    """Closed-set segment / polygon test; touching a vertex or edge counts"""
    return _as_polygon(footprint).intersects(_segment(p0, p1))


def first_blocker(p0: Point2, p1: Point2, polygons: List[Polygon]) -> Optional[int]:
    """Index of the polygon entered first along p0 -> p1, None if the segment is free"""
    segment = _segment(p0, p1)
    best, best_t = None, math.inf
    for index, polygon in enumerate(polygons):
        if not polygon.intersects(segment):
            continue
        if isinstance(segment, Point):
            return index
        coords = shapely.get_coordinates(polygon.intersection(segment))
        entry = min((segment.project(Point(c), normalized=True) for c in coords), default=0.0)
        if entry < best_t:
            best, best_t = index, entry
    return best


def _detour_candidates(cur: Point2, target: Point2, polygon: Polygon, clearance: float) -> Tuple[Point2, Point2]:
    """Left and right detour points: tangent hull vertices seen from cur, pushed out
    along the segment normal by the clearance."""
    heading = bearing(cur, target)
    nx, ny = -math.sin(heading), math.cos(heading)
    vertices = list(polygon.exterior.coords)[:-1]
    offsets = [angle_diff(bearing(cur, v), heading) for v in vertices]
    left = vertices[max(range(len(vertices)), key=lambda i: offsets[i])]
    right = vertices[min(range(len(vertices)), key=lambda i: offsets[i])]
    return (
        (left[0] + clearance * nx, left[1] + clearance * ny),
        (right[0] - clearance * nx, right[1] - clearance * ny),
    )


def _turn_angle(cur: Point2, candidate: Point2, target: Point2) -> float:
    return abs(angle_diff(bearing(candidate, target), bearing(cur, candidate)))


def _usable(cur: Point2, candidate: Point2, polygons: List[Polygon]) -> bool:
    if distance(cur, candidate) <= 1e-9:
        return False
    point = Point(candidate)
    return not any(polygon.intersects(point) for polygon in polygons)


def _pushed_out(cur: Point2, target: Point2, candidate: Point2, side: float, clearance: float, polygons: List[Polygon]) -> Optional[Point2]:
    """Slide a blocked candidate further along the segment normal until it is clear"""
    heading = bearing(cur, target)
    nx, ny = -side * math.sin(heading), side * math.cos(heading)
    for step in range(1, MAX_PUSH_STEPS + 1):
        moved = (candidate[0] + step * clearance * nx, candidate[1] + step * clearance * ny)
        if _usable(cur, moved, polygons):
            return moved
    return None


def _choose_detour(cur: Point2, target: Point2, polygon: Polygon, polygons: List[Polygon], clearance: float) -> Optional[Point2]:
    left, right = _detour_candidates(cur, target, polygon, clearance)
    ranked = [(left, 1.0), (right, -1.0)]
    if _turn_angle(cur, right, target) < _turn_angle(cur, left, target) - TIE_TOLERANCE:
        ranked.reverse()
    for candidate, _ in ranked:
        if _usable(cur, candidate, polygons):
            return candidate
    for candidate, side in ranked:
        moved = _pushed_out(cur, target, candidate, side, clearance, polygons)
        if moved is not None:
            return moved
    return None


def _greedy_detours(start: Point2, goal: Point2, polygons: List[Polygon], params: PlannerParams) -> Optional[PlannedPath]:
    """Min-angle detours kept on a stack of subgoals; None when the search gives up"""
    vertices: List[Point2] = [start]
    subgoals: List[Point2] = [goal]
    cur = start
    for iteration in range(params.max_iterations):
        target = subgoals[-1]
        blocker = first_blocker(cur, target, polygons)
        if blocker is None:
            if distance(cur, target) > 1e-9:
                vertices.append(target)
            cur = subgoals.pop()
            if not subgoals:
                logger.debug(f"Planned {len(vertices)} vertices in {iteration + 1} iterations")
                return PlannedPath(vertices=vertices)
            continue

        choice = _choose_detour(cur, target, polygons[blocker], polygons, params.clearance)
        if choice is None:
            logger.debug(f"No usable detour around obstacle {blocker} from {cur}")
            return None
        subgoals.append(choice)

    logger.debug(f"Detour search hit the iteration cap ({params.max_iterations})")
    return None


def _graph_nodes(start: Point2, goal: Point2, polygons: List[Polygon], params: PlannerParams) -> np.ndarray:
    """Start, goal and the vertices of each footprint's hull grown by two offsets"""
    nodes = [start, goal]
    blocked = shapely.union_all(polygons)
    for polygon in polygons:
        hull = polygon.convex_hull
        for offset in (params.clearance, NARROW_OFFSET):
            ring = hull.simplify(0.5 * offset).buffer(offset, join_style="mitre")
            nodes.extend(tuple(v) for v in list(ring.exterior.coords)[:-1])
    nodes = np.asarray(nodes, dtype=float)
    inside = shapely.intersects(blocked, shapely.points(nodes))
    inside[:2] = False
    return nodes[~inside]


def _visibility_path(start: Point2, goal: Point2, polygons: List[Polygon], params: PlannerParams) -> Optional[PlannedPath]:
    """Shortest collision-free polyline through grown hull vertices"""
    nodes = _graph_nodes(start, goal, polygons, params)
    blocked = shapely.union_all(polygons)
    shapely.prepare(blocked)
    i, j = np.triu_indices(len(nodes), k=1)
    lengths = np.hypot(*(nodes[j] - nodes[i]).T)
    keep = lengths > 1e-9
    i, j, lengths = i[keep], j[keep], lengths[keep]
    segments = shapely.linestrings(np.stack([nodes[i], nodes[j]], axis=1))
    free = ~shapely.intersects(blocked, segments)
    graph = csr_matrix((lengths[free], (i[free], j[free])), shape=(len(nodes), len(nodes)))
    dist, predecessors = dijkstra(graph, directed=False, indices=0, return_predecessors=True)
    if not np.isfinite(dist[1]):
        return None
    order = [1]
    while order[-1] != 0:
        order.append(int(predecessors[order[-1]]))
    vertices = [(float(nodes[k][0]), float(nodes[k][1])) for k in reversed(order)]
    vertices[0], vertices[-1] = start, goal
    logger.debug(f"Visibility graph path: {len(vertices)} vertices over {len(nodes)} nodes")
    return PlannedPath(vertices=vertices)


def plan_min_angle(
    start: Point2,
    goal: Point2,
    tracks: Sequence[FootprintLike],
    params: Optional[PlannerParams] = None,
) -> PlannedPath:
    """Plan a collision-free polyline from start to goal.

    Detour vertices are kept on a stack of subgoals: a blocked leg pushes the
    chosen detour point, a free leg pops it into the path. When the detour
    search gives up (crowded obstacles, or a cycle running into the iteration
    cap) the shortest path over grown hull vertices is returned instead.

    Raises:
        PlannerError: start or goal inside a footprint, or no collision-free
            path through the grown hull vertices.
    """
    params = params or PlannerParams()
    start, goal = (float(start[0]), float(start[1])), (float(goal[0]), float(goal[1]))
    polygons = [_as_polygon(t) for t in tracks]
    for name, point in (("start", start), ("goal", goal)):
        if any(p.intersects(Point(point)) for p in polygons):
            raise PlannerError(f"{name} {point} lies inside an obstacle footprint")
    if start == goal:
        raise PlannerError("start and goal coincide")

    path = _greedy_detours(start, goal, polygons, params)
    if path is not None:
        return path
    logger.warning(f"Min-angle detours failed between {start} and {goal}; using the visibility graph")
    path = _visibility_path(start, goal, polygons, params)
    if path is None:
        raise PlannerError(f"no collision-free path from {start} to {goal}")
    return path
