"""Tests for GPS / compass fusion"""

import math

import numpy as np
import pytest

from usv_agent.errors import InputDomainError
from usv_agent.estimation.fusion import PoseEstimator, fuse_heading, fuse_position
from usv_agent.models.vessel_models import FusionGains, Pose2D, PoseEstimate, SensorNoise, ThrustCommand
from usv_agent.models.world_models import WorldConfig
from usv_agent.sim.simulator import Simulation


class TestFusePosition:
    """Constant-gain position blend"""

    def test_gain_one_returns_gps(self):
        estimate = fuse_position(PoseEstimate(), (4.0, -2.0), (0.0, 0.0), FusionGains(position=1.0))
        assert estimate.pose.position == (4.0, -2.0)

    def test_gain_zero_dead_reckons(self):
        estimate = fuse_position(PoseEstimate(), (100.0, 100.0), (1.0, 2.0), FusionGains(position=0.0))
        assert estimate.pose.position == (1.0, 2.0)

    def test_geometric_convergence_to_biased_fix(self):
        """Stationary vessel: error shrinks by (1 - g) per update"""
        gains = FusionGains(position=0.3)
        estimate = PoseEstimate()
        for n in range(1, 21):
            estimate = fuse_position(estimate, (1.0, 0.0), (0.0, 0.0), gains)
            assert estimate.pose.x == pytest.approx(1.0 - 0.7 ** n)

    def test_non_finite_gps_skips_correction(self):
        estimate = fuse_position(PoseEstimate(), (float("nan"), 0.0), (0.5, 0.0), FusionGains())
        assert estimate.pose.position == (0.5, 0.0)

    def test_non_finite_motion_rejected(self):
        with pytest.raises(InputDomainError):
            fuse_position(PoseEstimate(), (0.0, 0.0), (float("inf"), 0.0), FusionGains())

    def test_variance_reported(self):
        gains = FusionGains(position=0.5, gps_var=1.0, position_process_var=0.0)
        estimate = fuse_position(PoseEstimate(position_var=1.0), (0.0, 0.0), (0.0, 0.0), gains)
        assert estimate.position_var == pytest.approx(0.5)


class TestFuseHeading:
    """Complementary heading blend on the circle"""

    def test_blend_takes_short_arc(self):
        prev = PoseEstimate(pose=Pose2D(yaw=0.9 * math.pi))
        estimate = fuse_heading(prev, -0.9 * math.pi, 0.0, FusionGains(heading=0.5))
        assert abs(estimate.pose.yaw) == pytest.approx(math.pi)

    def test_gain_one_passes_compass(self):
        estimate = fuse_heading(PoseEstimate(), 2.5, 0.3, FusionGains(heading=1.0))
        assert estimate.pose.yaw == pytest.approx(2.5)

    def test_gyro_prediction_without_compass(self):
        estimate = fuse_heading(PoseEstimate(), float("nan"), 0.25, FusionGains())
        assert estimate.pose.yaw == pytest.approx(0.25)


class TestPoseEstimator:
    """Estimator driven by the simulator"""

    def _drive(self, noise, ticks):
        world = WorldConfig(noise=noise)
        sim = Simulation(world, dt=0.1, seed=21)
        estimator = PoseEstimator(world.start, FusionGains.for_noise(noise))
        truth, estimates, fixes = [], [], []
        for i in range(ticks):
            sim.step(ThrustCommand(left=0.5, right=0.6 if (i // 300) % 2 else 0.45))
            reading = sim.sense()
            estimate = estimator.update(reading)
            truth.append(sim.state.pose.position)
            estimates.append(estimate.pose.position)
            fixes.append(reading.gps)
        return np.array(truth), np.array(estimates), np.array(fixes), sim, estimator

    def test_noise_free_tracks_truth(self):
        truth, estimates, _, sim, estimator = self._drive(SensorNoise(), 2000)
        assert np.max(np.linalg.norm(truth - estimates, axis=1)) < 1e-6
        assert estimator.pose.yaw == pytest.approx(sim.state.pose.yaw, abs=1e-6)

    @pytest.mark.slow
    def test_fusion_beats_raw_gps(self):
        """Position RMSE below 0.7x the raw GPS RMSE over 5000 ticks"""
        truth, estimates, fixes, _, _ = self._drive(SensorNoise(gps_sigma=1.0, compass_sigma=0.02), 5000)
        fused = np.sqrt(np.mean(np.sum((estimates - truth) ** 2, axis=1)))
        raw = np.sqrt(np.mean(np.sum((fixes - truth) ** 2, axis=1)))
        assert fused < 0.7 * raw
