"""Mission behaviors: totem circling, docking and the obstacle-avoidance demo"""

from usv_agent.behaviors.avoidance import AvoidanceLeg, avoid_demo, route_blocked
from usv_agent.behaviors.circling import CirclingBehavior, circling_command, circling_state, run_circling
from usv_agent.behaviors.docking import DockingBehavior, dock_policy, dock_pose_from_object, run_docking

__all__ = [
    "AvoidanceLeg",
    "avoid_demo",
    "route_blocked",
    "CirclingBehavior",
    "circling_command",
    "circling_state",
    "run_circling",
    "DockingBehavior",
    "dock_policy",
    "dock_pose_from_object",
    "run_docking",
]
