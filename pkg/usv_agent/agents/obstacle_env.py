"""
Obstacle-avoidance environment over the vessel simulator.

Random circular obstacles on a periodic square arena, a forward range scan
downsampled to a few sectors, and three discrete actions.
"""

import logging
import math
from typing import Any, Dict, Optional, Tuple

import gymnasium as gym
import numpy as np
from gymnasium import spaces

from usv_agent.control.controllers import action_to_thrust
from usv_agent.errors import EnvironmentContractError
from usv_agent.models.agent_models import AgentStep, DiscreteAction, EnvConfig, RewardParams
from usv_agent.models.vessel_models import Pose2D, VesselState
from usv_agent.models.world_models import ObjectKind, ObjectSize, ShapeType, WorldConfig, WorldObject
from usv_agent.sim.dynamics import step_dynamics
from usv_agent.sim.sensors import MIN_RANGE, beam_angles
from usv_agent.sim.world import CircleField

logger = logging.getLogger(__name__)

TRAIN_STREAM = 0
EVAL_STREAM = 1


def episode_seeds(seed: int, stream: int, count: int) -> np.ndarray:
    """Independent per-episode seeds for one stream of a run"""
    return np.random.SeedSequence([seed, stream]).generate_state(count)


def reward_fn(observation: np.ndarray, action: DiscreteAction, collided: bool, rewards: RewardParams = RewardParams()) -> float:
    if collided:
        return rewards.collision
    if DiscreteAction(action) is DiscreteAction.GO_STRAIGHT:
        return rewards.straight
    return rewards.turn


def sector_minima(ranges: np.ndarray, sectors: int) -> np.ndarray:
    return np.array([chunk.min() for chunk in np.array_split(ranges, sectors)])


class ObstacleAvoidanceEnv(gym.Env):
    """gymnasium environment; env_reset / advance are the plain contract underneath"""

    metadata = {"render_modes": []}

    def __init__(self, config: Optional[EnvConfig] = None):
        super().__init__()
        self.config = config or EnvConfig()
        self.action_space = spaces.Discrete(len(DiscreteAction))
        self.observation_space = spaces.Box(
            low=0.0, high=self.config.max_range, shape=(self.config.sectors,), dtype=np.float64
        )
        self._angles = beam_angles(self.config.n_beams, self.config.fov)
        self.field = CircleField(np.zeros((0, 2)), np.zeros(0), self.config.arena_size)
        self.state = VesselState()
        self.steps = 0
        self.done = True
        self.observation = np.full(self.config.sectors, self.config.max_range)

    @property
    def start(self) -> Tuple[float, float]:
        half = 0.5 * self.config.arena_size
        return half, half

    def _obstacles(self, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
        cfg = self.config
        count = int(round(cfg.obstacle_density * cfg.arena_size ** 2))
        centers, radii = [], []
        attempts = 0
        while len(centers) < count and attempts < 100 * max(count, 1):
            attempts += 1
            center = rng.uniform(0.0, cfg.arena_size, size=2)
            radius = rng.uniform(cfg.obstacle_radius_min, cfg.obstacle_radius_max)
            if math.hypot(center[0] - self.start[0], center[1] - self.start[1]) < cfg.start_clearance + radius:
                continue
            centers.append(center)
            radii.append(radius)
        return np.array(centers).reshape(-1, 2), np.array(radii)

    def world(self) -> WorldConfig:
        """Current obstacle field as a world document"""
        objects = [
            WorldObject(
                id=i,
                kind=ObjectKind.OBSTACLE_BUOY,
                shape=ShapeType.CIRCLE,
                pose=Pose2D(x=float(c[0]), y=float(c[1])),
                size=ObjectSize(radius=float(r)),
            )
            for i, (c, r) in enumerate(zip(self.field.centers, self.field.radii))
        ]
        return WorldConfig(
            objects=objects,
            start=self.state.pose,
            dynamics=self.config.dynamics,
            arena_size=self.config.arena_size,
        )

    def _observe(self) -> np.ndarray:
        pose = self.state.pose
        headings = pose.yaw + self._angles
        dirs = np.column_stack([np.cos(headings), np.sin(headings)])
        ranges = self.field.ray_distances(pose.position, dirs, self.config.max_range)
        ranges = np.clip(ranges, MIN_RANGE, self.config.max_range)
        return sector_minima(ranges, self.config.sectors)

    def env_reset(self, seed: int) -> np.ndarray:
        """Regenerate the obstacle field under seed and put the vessel at the arena centre"""
        rng = np.random.default_rng(int(seed))
        centers, radii = self._obstacles(rng)
        self.field = CircleField(centers, radii, self.config.arena_size)
        yaw = float(rng.uniform(-math.pi, math.pi)) if self.config.randomize_heading else 0.0
        self.state = VesselState(pose=Pose2D(x=self.start[0], y=self.start[1], yaw=yaw))
        self.steps = 0
        self.done = False
        self.observation = self._observe()
        return self.observation.copy()

    def _wrapped(self, state: VesselState) -> VesselState:
        size = self.config.arena_size
        pose = state.pose
        return state.model_copy(update={"pose": Pose2D(x=pose.x % size, y=pose.y % size, yaw=pose.yaw)})

    def advance(self, action: DiscreteAction) -> AgentStep:
        """Apply one action for ticks_per_step simulator ticks.

        Raises:
            EnvironmentContractError: if the episode is already over.
        """
        if self.done:
            raise EnvironmentContractError("advance() called on a finished episode; call env_reset() first")
        cfg = self.config
        action = DiscreteAction(action)
        cmd = action_to_thrust(action, cfg.cruise_thrust, cfg.turn_thrust)

        collided = False
        for _ in range(cfg.ticks_per_step):
            self.state = self._wrapped(step_dynamics(self.state, cmd, cfg.dt, cfg.dynamics))
            if self.field.collides(self.state.pose.position, cfg.dynamics.vessel_radius):
                collided = True
                break

        self.steps += 1
        self.observation = self._observe()
        reward = reward_fn(self.observation, action, collided, cfg.rewards)
        truncated = not collided and self.steps >= cfg.step_limit
        self.done = collided or truncated
        info: Dict[str, Any] = {
            "steps": self.steps,
            "collided": collided,
            "truncated": truncated,
            "success": truncated,
        }
        return AgentStep(observation=self.observation.copy(), reward=reward, done=self.done, info=info)

    env_step = advance

    def reset(self, *, seed: Optional[int] = None, options: Optional[dict] = None):
        super().reset(seed=seed)
        episode_seed = seed if seed is not None else int(self.np_random.integers(0, 2 ** 32))
        return self.env_reset(episode_seed), {}

    def step(self, action):
        result = self.advance(DiscreteAction.from_index(int(action)))
        terminated = result.info["collided"]
        return result.observation, result.reward, terminated, result.info["truncated"], result.info
