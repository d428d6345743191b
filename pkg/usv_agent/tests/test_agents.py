"""Tests for the obstacle-avoidance environment and tabular Q-learning"""

import numpy as np
import pytest

from usv_agent.agents.obstacle_env import ObstacleAvoidanceEnv, episode_seeds, reward_fn
from usv_agent.agents.q_learning import (
    discretize_observation,
    epsilon_greedy,
    evaluate_policy,
    key_space_size,
    q_update,
    train,
    trailing_mean_survival,
)
from usv_agent.errors import EnvironmentContractError, InputDomainError
from usv_agent.models.agent_models import (
    DiscreteAction,
    EnvConfig,
    LearningCurveRow,
    QLearningParams,
    QTable,
    TrainConfig,
)
from usv_agent.models.vessel_models import Pose2D, VesselState
from usv_agent.sim.world import CircleField

STRAIGHT, LEFT, RIGHT = DiscreteAction.GO_STRAIGHT, DiscreteAction.TURN_LEFT, DiscreteAction.TURN_RIGHT


@pytest.fixture
def small_env_config():
    return EnvConfig(step_limit=50)


class TestEnvironment:
    """Reset / advance contract"""

    def test_advance_before_reset_rejected(self):
        env = ObstacleAvoidanceEnv()
        with pytest.raises(EnvironmentContractError):
            env.advance(STRAIGHT)

    def test_reset_observation(self):
        env = ObstacleAvoidanceEnv()
        obs = env.env_reset(3)
        assert obs.shape == (5,)
        assert np.all(obs > 0.0) and np.all(obs <= 10.0)
        assert env.state.pose.position == env.start

    def test_same_seed_same_episode(self):
        env_a, env_b = ObstacleAvoidanceEnv(), ObstacleAvoidanceEnv()
        assert np.array_equal(env_a.env_reset(11), env_b.env_reset(11))
        assert np.array_equal(env_a.field.centers, env_b.field.centers)
        for action in (STRAIGHT, LEFT, STRAIGHT, RIGHT):
            assert np.array_equal(env_a.advance(action).observation, env_b.advance(action).observation)

    def test_collision_ends_episode(self):
        env = ObstacleAvoidanceEnv()
        env.env_reset(0)
        sx, sy = env.start
        env.field = CircleField(np.array([[sx + 2.0, sy]]), np.array([1.0]), 40.0)
        env.state = VesselState(pose=Pose2D(x=sx, y=sy, yaw=0.0))
        result = env.advance(STRAIGHT)
        assert result.done
        assert result.info["collided"]
        assert result.reward == -100.0
        with pytest.raises(EnvironmentContractError):
            env.advance(STRAIGHT)

    def test_env_step_is_advance(self):
        env = ObstacleAvoidanceEnv(EnvConfig(obstacle_density=0.0, step_limit=5))
        env.env_reset(2)
        result = env.env_step(LEFT)
        assert result.reward == pytest.approx(0.2)
        assert not result.done

    def test_step_limit_truncates(self):
        env = ObstacleAvoidanceEnv(EnvConfig(obstacle_density=0.0, step_limit=3))
        env.env_reset(0)
        rewards = [env.advance(STRAIGHT).reward for _ in range(3)]
        assert rewards == [1.0, 1.0, 1.0]
        assert env.done
        assert env.steps == 3

    def test_gym_api(self):
        env = ObstacleAvoidanceEnv()
        obs, info = env.reset(seed=4)
        assert env.observation_space.contains(obs)
        obs, reward, terminated, truncated, info = env.step(1)
        assert reward == pytest.approx(0.2)
        assert not terminated and not truncated

    def test_dense_field_is_seen(self):
        """At 0.05 obstacles per square metre nearly every start sees an obstacle"""
        env = ObstacleAvoidanceEnv(EnvConfig(obstacle_density=0.05))
        seen = sum(bool(np.any(env.env_reset(seed) < 10.0)) for seed in range(100))
        assert seen >= 95

    def test_reward_order(self):
        obs = np.full(5, 10.0)
        assert reward_fn(obs, STRAIGHT, True) < reward_fn(obs, LEFT, False) < reward_fn(obs, STRAIGHT, False)

    def test_episode_seed_streams_differ(self):
        assert not np.array_equal(episode_seeds(1, 0, 10), episode_seeds(1, 1, 10))
        assert np.array_equal(episode_seeds(1, 0, 10), episode_seeds(1, 0, 10))


class TestDiscretisation:
    """Observation keys"""

    def test_edges_fall_in_nearer_bucket(self):
        assert discretize_observation([1.0, 2.5, 3.0, 5.0, 10.0], [2.5, 5.0]) == "00112"

    def test_empty_edges_rejected(self):
        with pytest.raises(InputDomainError):
            discretize_observation([1.0], [])

    def test_key_space(self):
        assert key_space_size(5, 3) == 243


class TestQUpdate:
    """Update rule and exploration"""

    def test_single_update_arithmetic(self):
        table = QTable(params=QLearningParams(alpha=0.1, gamma=0.9))
        q_update(table, "s", STRAIGHT, 1.0, "s2")
        assert table.get("s") == pytest.approx([0.1, 0.0, 0.0])

    def test_terminal_does_not_bootstrap(self):
        table = QTable(values={"next": [50.0, 0.0, 0.0]}, params=QLearningParams(alpha=1.0, gamma=0.9))
        q_update(table, "s", LEFT, -1.0, None)
        assert table.get("s")[1] == -1.0

    def test_converges_on_small_mdp(self):
        """Repeated sweeps over a 3-state chain match the value-iteration fixed point"""
        transitions = {
            ("s0", STRAIGHT): ("s1", 0.0), ("s0", LEFT): ("s0", 0.5),
            ("s1", STRAIGHT): ("s2", 1.0), ("s1", LEFT): ("s0", 0.0),
            ("s2", STRAIGHT): (None, 10.0), ("s2", LEFT): ("s1", 0.0),
        }
        # right behaves like straight
        transitions.update({(s, RIGHT): outcome for (s, a), outcome in list(transitions.items()) if a is STRAIGHT})
        params = QLearningParams(alpha=0.5, gamma=0.9)
        table = QTable(params=params)
        for _ in range(300):
            for (state, action), (nxt, reward) in sorted(transitions.items(), key=lambda kv: (kv[0][0], kv[0][1].value)):
                q_update(table, state, action, reward, nxt)

        values = {"s0": 0.0, "s1": 0.0, "s2": 0.0}
        for _ in range(500):
            values = {
                state: max(
                    reward + params.gamma * (values[nxt] if nxt else 0.0)
                    for (s, _), (nxt, reward) in transitions.items() if s == state
                )
                for state in values
            }
        for (state, action), (nxt, reward) in transitions.items():
            expected = reward + params.gamma * (values[nxt] if nxt else 0.0)
            assert table.get(state)[action.action_index] == pytest.approx(expected, abs=1e-3)
        assert values["s0"] == pytest.approx(9.0, abs=1e-6)
        assert table.greedy("s0") is STRAIGHT

    def test_epsilon_schedule(self):
        params = QLearningParams()
        assert params.epsilon(0) == 0.5
        assert params.epsilon(100_000) == 0.05

    def test_zero_epsilon_is_greedy(self):
        table = QTable(values={"k": [0.0, 0.0, 3.0]})
        rng = np.random.default_rng(0)
        assert all(epsilon_greedy(table, "k", 0.0, rng) is RIGHT for _ in range(20))

    def test_full_epsilon_explores(self):
        table = QTable(values={"k": [0.0, 0.0, 3.0]})
        rng = np.random.default_rng(0)
        assert {epsilon_greedy(table, "k", 1.0, rng) for _ in range(100)} == set(DiscreteAction)


class TestTraining:
    """Training runs and greedy evaluation"""

    def test_training_reproducible(self, small_env_config):
        config = TrainConfig(episodes=20, seed=1, env=small_env_config)
        table_a, curve_a = train(small_env_config, config)
        table_b, curve_b = train(small_env_config, config)
        assert table_a.values == table_b.values
        assert curve_a == curve_b
        assert len(curve_a) == 20
        assert [row.episode for row in curve_a] == list(range(20))

    def test_trailing_mean_survival(self):
        curve = [LearningCurveRow(episode=i, steps=i, episode_return=0.0, epsilon=0.1) for i in range(10)]
        assert trailing_mean_survival(curve, window=4) == pytest.approx(7.5)
        assert trailing_mean_survival([]) == 0.0

    def test_evaluate_empty_table(self, small_env_config):
        metrics = evaluate_policy(QTable(), small_env_config, 5, seed=3)
        assert metrics.episodes == 5
        assert metrics.left_turns == metrics.right_turns == 0
        assert metrics.turn_bias == 0.0
        assert 0.0 <= metrics.collision_rate <= 1.0

    def test_evaluate_needs_episodes(self, small_env_config):
        with pytest.raises(InputDomainError):
            evaluate_policy(QTable(), small_env_config, 0, seed=3)

    @pytest.mark.slow
    def test_evaluation_independent_of_jobs(self, small_env_config):
        table, _ = train(small_env_config, TrainConfig(episodes=30, seed=2, env=small_env_config))
        serial = evaluate_policy(table, small_env_config, 8, seed=5, jobs=1)
        parallel = evaluate_policy(table, small_env_config, 8, seed=5, jobs=3)
        assert serial == parallel

    @pytest.mark.slow
    def test_agent_learns_to_survive(self):
        env_config = EnvConfig()
        table, curve = train(env_config, TrainConfig(episodes=2000, seed=0, env=env_config))
        assert trailing_mean_survival(curve) >= 100
        metrics = evaluate_policy(table, env_config, 100, seed=1)
        assert metrics.collision_rate <= 0.1
