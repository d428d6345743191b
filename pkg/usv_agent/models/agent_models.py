"""Agent contract models: actions, steps, environment / learning configs, Q-table"""

import math
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from usv_agent.models.vessel_models import DynamicsParams


class DiscreteAction(str, Enum):
    """Three-way motion command shared by the RL agent and the docking policy.

    Member order is the greedy tie-break order.
    """
    GO_STRAIGHT = "go_straight"
    TURN_LEFT = "turn_left"
    TURN_RIGHT = "turn_right"

    @property
    def action_index(self) -> int:
        return ACTION_ORDER.index(self)

    @classmethod
    def from_index(cls, index: int) -> "DiscreteAction":
        return ACTION_ORDER[int(index)]


ACTION_ORDER: List[DiscreteAction] = list(DiscreteAction)

# Docking re-uses the same three-class interface
DockAction = DiscreteAction


class AgentStep(BaseModel):
    """Observation, reward and done flag returned per action"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    observation: np.ndarray
    reward: float
    done: bool
    info: Dict[str, Any] = Field(default_factory=dict)


class RewardParams(BaseModel):
    straight: float = 1.0
    turn: float = 0.2
    collision: float = -100.0

    @model_validator(mode="after")
    def _ordered(self) -> "RewardParams":
        if not (self.collision < self.turn < self.straight):
            raise ValueError("rewards must satisfy collision < turn < straight")
        return self


class EnvConfig(BaseModel):
    """Obstacle-avoidance environment configuration"""
    arena_size: float = Field(default=40.0, gt=0.0)
    obstacle_density: float = Field(default=0.01, ge=0.0)
    obstacle_radius_min: float = Field(default=0.5, gt=0.0)
    obstacle_radius_max: float = Field(default=1.0, gt=0.0)
    start_clearance: float = Field(default=5.0, ge=0.0)
    randomize_heading: bool = True
    n_beams: int = Field(default=31, ge=3)
    fov: float = Field(default=math.pi, gt=0.0, le=2 * math.pi)
    max_range: float = Field(default=10.0, gt=0.0)
    sectors: int = Field(default=5, ge=1)
    bin_edges: List[float] = Field(default_factory=lambda: [2.5, 5.0])
    ticks_per_step: int = Field(default=5, ge=1)
    dt: float = Field(default=0.1, gt=0.0)
    step_limit: int = Field(default=500, ge=1)
    cruise_thrust: float = Field(default=0.5, ge=-1.0, le=1.0)
    turn_thrust: float = Field(default=0.5, ge=0.0, le=1.0)
    rewards: RewardParams = Field(default_factory=RewardParams)
    dynamics: DynamicsParams = Field(default_factory=DynamicsParams)

    @field_validator("bin_edges")
    @classmethod
    def _sorted_edges(cls, value: List[float]) -> List[float]:
        if not value:
            raise ValueError("bin_edges needs at least one edge (bins >= 2)")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("bin_edges must be strictly increasing")
        return value

    @model_validator(mode="after")
    def _check(self) -> "EnvConfig":
        if self.obstacle_radius_max < self.obstacle_radius_min:
            raise ValueError("obstacle_radius_max must be >= obstacle_radius_min")
        if self.sectors > self.n_beams:
            raise ValueError("sectors cannot exceed n_beams")
        return self

    @property
    def bins(self) -> int:
        return len(self.bin_edges) + 1


class QLearningParams(BaseModel):
    alpha: float = Field(default=0.1, gt=0.0, le=1.0)
    gamma: float = Field(default=0.95, ge=0.0, lt=1.0)
    epsilon_start: float = Field(default=0.5, ge=0.0, le=1.0)
    epsilon_decay: float = Field(default=0.999, gt=0.0, le=1.0)
    epsilon_min: float = Field(default=0.05, ge=0.0, le=1.0)

    def epsilon(self, episode: int) -> float:
        return max(self.epsilon_min, self.epsilon_start * self.epsilon_decay ** episode)


class TrainConfig(BaseModel):
    episodes: int = Field(default=2000, ge=1)
    seed: int
    params: QLearningParams = Field(default_factory=QLearningParams)
    env: EnvConfig = Field(default_factory=EnvConfig)
    moving_average_window: int = Field(default=100, ge=1)


class EvalConfig(BaseModel):
    table_file: Optional[str] = None
    episodes: int = Field(default=100, ge=1)
    seed: int
    env: EnvConfig = Field(default_factory=EnvConfig)


class QTable(BaseModel):
    """Discretised-observation key -> action values in ACTION_ORDER"""
    values: Dict[str, List[float]] = Field(default_factory=dict)
    params: QLearningParams = Field(default_factory=QLearningParams)

    def get(self, key: str) -> List[float]:
        return self.values.get(key, [0.0] * len(ACTION_ORDER))

    def greedy(self, key: str) -> DiscreteAction:
        # np.argmax returns the first maximum: straight, left, right
        return DiscreteAction.from_index(int(np.argmax(self.get(key))))

    @model_validator(mode="after")
    def _finite(self) -> "QTable":
        for key, row in self.values.items():
            if len(row) != len(ACTION_ORDER) or not all(math.isfinite(v) for v in row):
                raise ValueError(f"invalid Q row for key {key!r}")
        return self


class LearningCurveRow(BaseModel):
    episode: int
    steps: int
    episode_return: float
    epsilon: float


class EvaluationMetrics(BaseModel):
    episodes: int
    mean_survival_steps: float
    collision_rate: float
    turn_bias: float
    left_turns: int
    right_turns: int
    straight_moves: int
