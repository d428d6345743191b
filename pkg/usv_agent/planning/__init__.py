"""Obstacle manager and minimum-angle path planner"""

from usv_agent.planning.min_angle import first_blocker, plan_min_angle, segment_collides
from usv_agent.planning.obstacle_manager import (
    ObstacleManager,
    inflated_hull,
    raise_alerts,
    update_obstacle_tracks,
)

__all__ = [
    "plan_min_angle",
    "segment_collides",
    "first_blocker",
    "update_obstacle_tracks",
    "raise_alerts",
    "inflated_hull",
    "ObstacleManager",
]
