"""Agents: the mission orchestrator and the obstacle-avoidance learner"""

from .obstacle_env import ObstacleAvoidanceEnv, episode_seeds, reward_fn
from .orchestrator import MissionOrchestrator
from .q_learning import discretize_observation, evaluate_policy, q_update, train, trailing_mean_survival

__all__ = [
    "ObstacleAvoidanceEnv",
    "MissionOrchestrator",
    "episode_seeds",
    "reward_fn",
    "discretize_observation",
    "q_update",
    "train",
    "evaluate_policy",
    "trailing_mean_survival",
]
