"""
Tabular Q-learning for the obstacle-avoidance environment.

Observations are discretised into one range bucket per sector; the table maps
the concatenated bucket digits to one value per action.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from usv_agent.agents.obstacle_env import EVAL_STREAM, TRAIN_STREAM, ObstacleAvoidanceEnv, episode_seeds
from usv_agent.errors import InputDomainError
from usv_agent.models.agent_models import (
    ACTION_ORDER,
    DiscreteAction,
    EnvConfig,
    EvaluationMetrics,
    LearningCurveRow,
    QLearningParams,
    QTable,
    TrainConfig,
)

logger = logging.getLogger(__name__)

# Stream for exploration draws, separate from the episode worlds
EXPLORATION_STREAM = 2


def discretize_observation(observation: Sequence[float], bin_edges: Sequence[float]) -> str:
    """One digit per sector; a value on an edge falls in the lower (nearer) bucket"""
    if len(bin_edges) < 1:
        raise InputDomainError("discretisation needs at least 2 bins")
    buckets = np.searchsorted(np.asarray(bin_edges, dtype=float), np.asarray(observation, dtype=float), side="left")
    return "".join(str(int(b)) for b in buckets)


def key_space_size(sectors: int, bins: int) -> int:
    return bins ** sectors


def q_update(
    table: QTable,
    key: str,
    action: DiscreteAction,
    reward: float,
    next_key: Optional[str],
    params: Optional[QLearningParams] = None,
) -> QTable:
    """Q(s,a) += alpha * (r + gamma * max Q(s',.) - Q(s,a)); next_key None is terminal"""
    params = params or table.params
    row = list(table.get(key))
    index = DiscreteAction(action).action_index
    bootstrap = 0.0 if next_key is None else max(table.get(next_key))
    row[index] += params.alpha * (reward + params.gamma * bootstrap - row[index])
    table.values[key] = row
    return table


def epsilon_greedy(table: QTable, key: str, epsilon: float, rng: np.random.Generator) -> DiscreteAction:
    if rng.random() < epsilon:
        return DiscreteAction.from_index(int(rng.integers(len(ACTION_ORDER))))
    return table.greedy(key)


def train(env_config: EnvConfig, train_config: TrainConfig) -> Tuple[QTable, List[LearningCurveRow]]:
    """Epsilon-greedy episodes with decaying epsilon; reproducible under train_config.seed"""
    params = train_config.params
    env = ObstacleAvoidanceEnv(env_config)
    table = QTable(params=params)
    seeds = episode_seeds(train_config.seed, TRAIN_STREAM, train_config.episodes)
    rng = np.random.default_rng(np.random.SeedSequence([train_config.seed, EXPLORATION_STREAM]))
    edges = env_config.bin_edges
    curve: List[LearningCurveRow] = []

    for episode in range(train_config.episodes):
        epsilon = params.epsilon(episode)
        key = discretize_observation(env.env_reset(int(seeds[episode])), edges)
        episode_return = 0.0
        while not env.done:
            action = epsilon_greedy(table, key, epsilon, rng)
            result = env.advance(action)
            next_key = discretize_observation(result.observation, edges)
            # truncation at the step limit still bootstraps
            q_update(table, key, action, result.reward, None if result.info["collided"] else next_key, params)
            episode_return += result.reward
            key = next_key
        curve.append(LearningCurveRow(episode=episode, steps=env.steps, episode_return=episode_return, epsilon=epsilon))
        if (episode + 1) % 100 == 0:
            recent = np.mean([row.steps for row in curve[-100:]])
            logger.debug(f"Episode {episode + 1}: trailing-100 mean survival {recent:.1f} steps, epsilon {epsilon:.3f}")

    logger.info(f"Trained {train_config.episodes} episodes, {len(table.values)} states visited")
    return table, curve


def trailing_mean_survival(curve: Sequence[LearningCurveRow], window: int = 100) -> float:
    steps = pd.Series([row.steps for row in curve], dtype=float)
    if steps.empty:
        return 0.0
    return float(steps.rolling(window, min_periods=1).mean().iloc[-1])


def _rollouts(args) -> List[Tuple[int, bool, int, int, int]]:
    table, env_config, seeds = args
    env = ObstacleAvoidanceEnv(env_config)
    edges = env_config.bin_edges
    outcomes = []
    for seed in seeds:
        key = discretize_observation(env.env_reset(int(seed)), edges)
        counts = {action: 0 for action in DiscreteAction}
        collided = False
        while not env.done:
            action = table.greedy(key)
            counts[action] += 1
            result = env.advance(action)
            collided = result.info["collided"]
            key = discretize_observation(result.observation, edges)
        outcomes.append((
            env.steps,
            collided,
            counts[DiscreteAction.TURN_LEFT],
            counts[DiscreteAction.TURN_RIGHT],
            counts[DiscreteAction.GO_STRAIGHT],
        ))
    return outcomes


def evaluate_policy(table: QTable, env_config: EnvConfig, n_episodes: int, seed: int, jobs: int = 1) -> EvaluationMetrics:
    """Greedy rollouts on fresh episode seeds.

    turn_bias = |left - right| / (left + right), 0 when the policy never turns.
    Episodes are split into contiguous chunks across jobs; the result does not
    depend on jobs.
    """
    if n_episodes < 1:
        raise InputDomainError(f"n_episodes must be >= 1, got {n_episodes}")
    seeds = episode_seeds(seed, EVAL_STREAM, n_episodes)
    chunks = [chunk for chunk in np.array_split(seeds, max(1, min(jobs, n_episodes))) if len(chunk)]
    tasks = [(table, env_config, chunk) for chunk in chunks]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_rollouts, tasks))
    else:
        parts = [_rollouts(task) for task in tasks]
    outcomes = [outcome for part in parts for outcome in part]

    steps = np.array([o[0] for o in outcomes], dtype=float)
    left = sum(o[2] for o in outcomes)
    right = sum(o[3] for o in outcomes)
    turns = left + right
    metrics = EvaluationMetrics(
        episodes=n_episodes,
        mean_survival_steps=float(steps.mean()),
        collision_rate=float(np.mean([o[1] for o in outcomes])),
        turn_bias=abs(left - right) / turns if turns else 0.0,
        left_turns=left,
        right_turns=right,
        straight_moves=sum(o[4] for o in outcomes),
    )
    logger.info(
        f"Evaluated {n_episodes} episodes: survival {metrics.mean_survival_steps:.1f}, "
        f"collision rate {metrics.collision_rate:.2f}, turn bias {metrics.turn_bias:.2f}"
    )
    return metrics
