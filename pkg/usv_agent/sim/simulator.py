"""
Stateful simulation instance: owns the world, the vessel truth state, the tick
counter and one random stream per sensor.
"""

import logging
from typing import Optional

import numpy as np

from usv_agent.config.settings import settings
from usv_agent.models.perception_models import PointCloud
from usv_agent.models.vessel_models import SensorNoise, SensorReading, ThrustCommand, VesselState
from usv_agent.models.world_models import LidarParams, RangeScan, WorldConfig
from usv_agent.sim.dynamics import step_dynamics
from usv_agent.sim.sensors import (
    read_compass,
    read_gps,
    sample_lidar_cloud,
    sample_range_scan,
    spawn_sensor_streams,
)
from usv_agent.sim.world import check_collision
from usv_agent.utils.geometry import angle_diff

logger = logging.getLogger(__name__)


class Simulation:
    """Single-threaded discrete-time simulation.

    Identical (world, noise, seed, command sequence) gives bit-identical state
    and sensor trajectories.
    """

    def __init__(
        self,
        world: WorldConfig,
        dt: Optional[float] = None,
        noise: Optional[SensorNoise] = None,
        seed: Optional[int] = None,
        initial_state: Optional[VesselState] = None,
    ):
        self.world = world
        self.dt = dt if dt is not None else settings.SIM_DT
        self.noise = noise if noise is not None else world.noise
        self.seed = seed if seed is not None else self.noise.seed
        self.dynamics = world.dynamics
        self.state = initial_state if initial_state is not None else VesselState(pose=world.start)
        self.tick = 0
        self._motion_delta = (0.0, 0.0)
        self._gyro_delta = 0.0

        self.rngs = spawn_sensor_streams(self.seed)
        logger.debug(f"Simulation created: {len(world.objects)} objects, dt={self.dt}, seed={self.seed}")

    @property
    def time(self) -> float:
        return self.tick * self.dt

    def step(self, cmd: ThrustCommand) -> VesselState:
        previous = self.state
        self.state = step_dynamics(previous, cmd, self.dt, self.dynamics)
        self._motion_delta = (
            self._motion_delta[0] + self.state.pose.x - previous.pose.x,
            self._motion_delta[1] + self.state.pose.y - previous.pose.y,
        )
        self._gyro_delta += angle_diff(self.state.pose.yaw, previous.pose.yaw)
        self.tick += 1
        return self.state

    def sense(self) -> SensorReading:
        """GPS and compass for this tick plus the odometry / gyro increments since the previous reading"""
        reading = SensorReading(
            gps=read_gps(self.state, self.noise, self.rngs["gps"]),
            compass=read_compass(self.state, self.noise, self.rngs["compass"]),
            motion_delta=self._motion_delta,
            gyro_delta=self._gyro_delta,
        )
        self._motion_delta = (0.0, 0.0)
        self._gyro_delta = 0.0
        return reading

    def lidar_cloud(self, params: LidarParams) -> PointCloud:
        return sample_lidar_cloud(self.world, self.state, params, self.rngs["lidar"], self.noise.lidar_sigma)

    def range_scan(self, n_beams: int, fov: float, max_range: float) -> RangeScan:
        return sample_range_scan(self.world, self.state, n_beams, fov, max_range)

    def collided(self) -> bool:
        return check_collision(self.world, self.state)
