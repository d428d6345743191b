"""Obstacle tracking and path planning models"""

from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

from usv_agent.models.world_models import WorldConfig

Point2 = Tuple[float, float]


class ObstacleTrack(BaseModel):
    """Tracked obstacle with an inflated convex CCW footprint"""
    id: int
    footprint: List[Point2]
    last_seen_tick: int
    alert_active: bool = False

    @field_validator("footprint")
    @classmethod
    def _at_least_triangle(cls, value: List[Point2]) -> List[Point2]:
        if len(value) < 3:
            raise ValueError("footprint needs at least 3 vertices")
        return value

    @property
    def centroid(self) -> Point2:
        xs = [p[0] for p in self.footprint]
        ys = [p[1] for p in self.footprint]
        return (sum(xs) / len(xs), sum(ys) / len(ys))


class TrackerParams(BaseModel):
    gate_distance: float = Field(default=2.0, gt=0.0)
    safety_margin: float = Field(default=0.5, ge=0.0)
    ttl: int = Field(default=5, ge=0)


class ObstacleAlert(BaseModel):
    track_id: int
    distance: float


class PlannerParams(BaseModel):
    vessel_radius: float = Field(default=1.0, gt=0.0)
    clearance_margin: float = Field(default=0.5, ge=0.0)
    max_iterations: int = Field(default=64, ge=1)

    @property
    def clearance(self) -> float:
        return self.vessel_radius + self.clearance_margin


class PlannedPath(BaseModel):
    """Vertices from start to goal; consecutive vertices distinct"""
    vertices: List[Point2]

    @field_validator("vertices")
    @classmethod
    def _distinct(cls, value: List[Point2]) -> List[Point2]:
        if len(value) < 2:
            raise ValueError("a path needs a start and a goal")
        for a, b in zip(value, value[1:]):
            if a == b:
                raise ValueError("consecutive path vertices must be distinct")
        return value

    @property
    def length(self) -> float:
        total = 0.0
        for (ax, ay), (bx, by) in zip(self.vertices, self.vertices[1:]):
            total += ((bx - ax) ** 2 + (by - ay) ** 2) ** 0.5
        return total


class PlanConfig(BaseModel):
    """cmd_plan document; obstacles come from the world objects inflated by the margin"""
    world_file: Optional[str] = None
    world: Optional[WorldConfig] = None
    start: Point2
    goal: Point2
    seed: int = 0
    safety_margin: float = Field(default=0.5, ge=0.0)
    planner: PlannerParams = Field(default_factory=PlannerParams)
