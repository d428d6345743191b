"""Deterministic marine simulator"""

from usv_agent.sim.dynamics import step_dynamics
from usv_agent.sim.sensors import read_compass, read_gps, sample_lidar_cloud, sample_range_scan
from usv_agent.sim.simulator import Simulation
from usv_agent.sim.world import CircleField, check_collision, object_center, object_footprint

__all__ = [
    "step_dynamics",
    "sample_lidar_cloud",
    "sample_range_scan",
    "read_gps",
    "read_compass",
    "check_collision",
    "object_center",
    "object_footprint",
    "CircleField",
    "Simulation",
]
