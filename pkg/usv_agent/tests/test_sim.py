"""Tests for the vessel dynamics, simulated sensors and collision checks"""

import math

import numpy as np
import pytest

from usv_agent.errors import InputDomainError
from usv_agent.models.vessel_models import DynamicsParams, Pose2D, SensorNoise, ThrustCommand, VesselState
from usv_agent.models.world_models import LidarParams, WorldConfig
from usv_agent.sim.dynamics import step_dynamics
from usv_agent.sim.sensors import (
    read_compass,
    read_gps,
    reset_sensor_streams,
    sample_lidar_cloud,
    sample_range_scan,
)
from usv_agent.sim.simulator import Simulation
from usv_agent.sim.world import CircleField, check_collision


class TestStepDynamics:
    """First-order-lag differential drive"""

    def test_equal_thrust_does_not_turn(self):
        """Equal thrust produces surge and no turning moment"""
        state = step_dynamics(VesselState(), ThrustCommand(left=1.0, right=1.0), 0.1)
        assert state.yaw_rate == 0.0
        assert state.surge > 0.0

    def test_opposite_thrust_rotates_in_place(self):
        state = step_dynamics(VesselState(), ThrustCommand(left=-0.5, right=0.5), 0.1)
        assert state.surge == 0.0
        assert state.yaw_rate > 0.0

    def test_surge_converges_to_fixed_point(self):
        """Full thrust settles at k_t / c_d"""
        params = DynamicsParams()
        state = VesselState()
        for _ in range(500):
            state = step_dynamics(state, ThrustCommand(left=1.0, right=1.0), 0.1, params)
        assert state.surge == pytest.approx(params.k_t / params.c_d, abs=1e-6)
        assert state.surge <= params.surge_max

    def test_zero_thrust_never_gains_energy(self):
        state = VesselState(surge=1.5, yaw_rate=0.3)
        for _ in range(50):
            nxt = step_dynamics(state, ThrustCommand(), 0.1)
            assert abs(nxt.surge) <= abs(state.surge)
            assert abs(nxt.yaw_rate) <= abs(state.yaw_rate)
            state = nxt

    def test_yaw_stays_wrapped(self):
        state = VesselState()
        for _ in range(400):
            state = step_dynamics(state, ThrustCommand(left=0.0, right=1.0), 0.1)
            assert -math.pi < state.pose.yaw <= math.pi

    def test_non_finite_command_rejected(self):
        with pytest.raises(InputDomainError):
            step_dynamics(VesselState(), ThrustCommand(left=float("nan"), right=0.0), 0.1)

    def test_non_positive_dt_rejected(self):
        with pytest.raises(InputDomainError):
            step_dynamics(VesselState(), ThrustCommand(), 0.0)


class TestRangeScan:
    """Planar range scan"""

    def test_empty_world_reads_max_range(self, empty_world):
        scan = sample_range_scan(empty_world, VesselState(), 31, math.pi, 20.0)
        assert np.all(scan.ranges == 20.0)
        assert len(scan.angles) == len(scan.ranges) == 31

    def test_boresight_hits_circle_surface(self, buoy_world):
        """Circle of radius 1 at 10 m: boresight range is 9 m"""
        scan = sample_range_scan(buoy_world, VesselState(), 31, math.pi, 20.0)
        assert scan.angles[15] == pytest.approx(0.0)
        assert scan.ranges[15] == pytest.approx(9.0)

    def test_object_behind_field_of_view(self, make_buoy):
        world = WorldConfig(objects=[make_buoy(-10.0, 0.0, radius=1.0)])
        scan = sample_range_scan(world, VesselState(), 31, math.pi, 20.0)
        assert np.all(scan.ranges == 20.0)

    def test_box_face_distance(self, make_dock):
        world = WorldConfig(objects=[make_dock(10.0, 0.0)])
        scan = sample_range_scan(world, VesselState(), 31, math.pi, 20.0)
        assert scan.ranges[15] == pytest.approx(8.0)

    def test_needs_three_beams(self, empty_world):
        with pytest.raises(ValueError):
            sample_range_scan(empty_world, VesselState(), 2, math.pi, 20.0)


class TestLidarCloud:
    """3-D LiDAR sampling"""

    def test_empty_world_only_sea_points(self, empty_world):
        params = LidarParams()
        cloud = sample_lidar_cloud(empty_world, VesselState(), params)
        assert len(cloud) > 0
        assert np.all(cloud.labels == -1)
        np.testing.assert_allclose(cloud.points[:, 2], -params.sensor_height, atol=1e-9)

    def test_object_ahead_in_front_of_sensor(self, make_buoy):
        world = WorldConfig(objects=[make_buoy(8.0, 0.0, object_id=0)])
        cloud = sample_lidar_cloud(world, VesselState(), LidarParams())
        object_points = cloud.points[cloud.labels == 0]
        assert len(object_points) > 0
        assert np.all(object_points[:, 0] > 0.0)

    def test_points_within_max_range(self, make_buoy):
        world = WorldConfig(objects=[make_buoy(8.0, 3.0), make_buoy(-5.0, 2.0)])
        params = LidarParams(max_range=12.0)
        cloud = sample_lidar_cloud(world, VesselState(pose=Pose2D(yaw=0.4)), params)
        assert np.all(np.linalg.norm(cloud.points, axis=1) <= params.max_range + 1e-9)

    def test_same_seed_bit_identical(self, make_buoy):
        world = WorldConfig(objects=[make_buoy(8.0, 0.0)])
        first = sample_lidar_cloud(world, VesselState(), LidarParams(), np.random.default_rng(3), 0.02)
        second = sample_lidar_cloud(world, VesselState(), LidarParams(), np.random.default_rng(3), 0.02)
        assert np.array_equal(first.points, second.points)


class TestNavigationSensors:
    """GPS and compass noise"""

    def test_noise_free_gps_exact(self):
        pose = Pose2D(x=3.5, y=-2.0)
        assert read_gps(pose, SensorNoise()) == (3.5, -2.0)

    def test_gps_sample_std(self):
        rng = np.random.default_rng(11)
        noise = SensorNoise(gps_sigma=1.0)
        samples = np.array([read_gps(Pose2D(), noise, rng) for _ in range(10_000)])
        assert samples.std(axis=0) == pytest.approx([1.0, 1.0], rel=0.05)

    def test_gps_reproducible(self):
        noise = SensorNoise(gps_sigma=0.5, seed=9)
        rng_a, rng_b = np.random.default_rng(9), np.random.default_rng(9)
        a = [read_gps(Pose2D(), noise, rng_a) for _ in range(5)]
        b = [read_gps(Pose2D(), noise, rng_b) for _ in range(5)]
        assert a == b

    def test_gps_without_generator_draws_fresh_noise(self):
        """Repeated calls without a generator continue one stream per seed"""
        reset_sensor_streams()
        noise = SensorNoise(gps_sigma=1.0, seed=4)
        samples = np.array([read_gps(Pose2D(), noise) for _ in range(1000)])
        assert len(np.unique(samples[:, 0])) == 1000
        assert samples.std(axis=0) == pytest.approx([1.0, 1.0], rel=0.1)

    def test_default_streams_restart_after_reset(self):
        noise = SensorNoise(gps_sigma=1.0, compass_sigma=0.1, seed=4)
        reset_sensor_streams()
        first = [read_gps(Pose2D(), noise) for _ in range(3)]
        reset_sensor_streams()
        assert [read_gps(Pose2D(), noise) for _ in range(3)] == first
        assert read_compass(Pose2D(), noise) != read_compass(Pose2D(), noise)

    def test_noise_free_compass_exact(self):
        assert read_compass(Pose2D(yaw=1.2), SensorNoise()) == pytest.approx(1.2)

    def test_compass_wrapped_at_pi(self):
        noise = SensorNoise(compass_sigma=0.05)
        rng = np.random.default_rng(2)
        for _ in range(200):
            yaw = read_compass(Pose2D(yaw=math.pi), noise, rng)
            assert -math.pi < yaw <= math.pi


class TestCollision:
    """Closed-contact collision convention"""

    def test_vessel_at_object_center(self, make_buoy):
        world = WorldConfig(objects=[make_buoy(0.0, 0.0)])
        assert check_collision(world, Pose2D())

    def test_far_object_no_collision(self, buoy_world):
        assert not check_collision(buoy_world, Pose2D())

    def test_tangency_counts(self, make_buoy):
        world = WorldConfig(objects=[make_buoy(2.0, 0.0, radius=1.0)])
        assert check_collision(world, Pose2D(), vessel_radius=1.0)
        assert not check_collision(world, Pose2D(x=-0.001), vessel_radius=1.0)

    def test_box_contact(self, make_dock):
        world = WorldConfig(objects=[make_dock(0.0, 3.0)])
        assert check_collision(world, Pose2D(), vessel_radius=1.75)
        assert not check_collision(world, Pose2D(), vessel_radius=1.5)

    def test_periodic_field_sees_nearest_image(self):
        field = CircleField(np.array([[39.5, 20.0]]), np.array([0.5]), arena_size=40.0)
        assert field.collides((0.5, 20.0), 1.0)
        dirs = np.array([[-1.0, 0.0]])
        assert field.ray_distances((3.0, 20.0), dirs)[0] == pytest.approx(3.0)


class TestSimulation:
    """Stateful simulation instance"""

    def _run(self, seed):
        world = WorldConfig(noise=SensorNoise(gps_sigma=0.5, compass_sigma=0.05))
        sim = Simulation(world, dt=0.1, seed=seed)
        readings = []
        for i in range(30):
            sim.step(ThrustCommand(left=0.4, right=0.6 if i % 2 else 0.2))
            readings.append(sim.sense())
        return sim.state, readings

    def test_deterministic_under_seed(self):
        state_a, readings_a = self._run(5)
        state_b, readings_b = self._run(5)
        assert state_a == state_b
        assert readings_a == readings_b

    def test_seed_changes_sensor_stream(self):
        _, readings_a = self._run(5)
        _, readings_b = self._run(6)
        assert readings_a != readings_b

    def test_sense_reports_increments_since_last_reading(self, empty_world):
        sim = Simulation(empty_world, dt=0.1, seed=0)
        start = sim.state.pose
        for _ in range(3):
            sim.step(ThrustCommand(left=0.5, right=0.7))
        reading = sim.sense()
        assert reading.motion_delta[0] == pytest.approx(sim.state.pose.x - start.x)
        assert reading.motion_delta[1] == pytest.approx(sim.state.pose.y - start.y)
        assert reading.gyro_delta == pytest.approx(sim.state.pose.yaw - start.yaw)
        again = sim.sense()
        assert again.motion_delta == (0.0, 0.0)
        assert again.gyro_delta == 0.0

    def test_time_follows_ticks(self, empty_world):
        sim = Simulation(empty_world, dt=0.25)
        for _ in range(4):
            sim.step(ThrustCommand())
        assert sim.tick == 4
        assert sim.time == pytest.approx(1.0)
