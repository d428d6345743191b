"""
Closed-loop mission runner plus the waypoint and station-keeping missions.

Every mission runs the same tick: sense -> estimate -> behave -> control ->
actuate, logging truth, estimate and command per tick.
"""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from usv_agent.control.controllers import cascade_position_control, heading_control, mix_thrust
from usv_agent.errors import MissionFailure
from usv_agent.estimation.fusion import PoseEstimator
from usv_agent.guidance.pure_pursuit import (
    cruise_setpoint,
    pure_pursuit_command,
    pure_pursuit_target,
    remaining_path_length,
)
from usv_agent.models.behavior_models import WaypointPath
from usv_agent.models.control_models import ControllerGains, ControlStates
from usv_agent.models.mission_models import MissionConfig, MissionResult, TrajectoryLog, WaypointsTask
from usv_agent.models.vessel_models import FusionGains, PoseEstimate, ThrustCommand, VesselState
from usv_agent.models.world_models import WorldConfig
from usv_agent.sim.simulator import Simulation
from usv_agent.utils.geometry import bearing, distance

logger = logging.getLogger(__name__)

Point2 = Tuple[float, float]


class MissionBehavior(ABC):
    """A behavior turns the current estimate into a thrust command each tick"""

    name = "behavior"

    def __init__(self, gains: ControllerGains, dt: float):
        self.gains = gains
        self.dt = dt
        self.states = ControlStates.from_gains(gains)

    @property
    @abstractmethod
    def done(self) -> bool:
        ...

    @abstractmethod
    def act(self, estimate: PoseEstimate, speed: float, sim: Simulation) -> ThrustCommand:
        ...

    def observe(self, state: VesselState, time: float) -> None:
        """Truth feedback after each step, for metrics only"""

    def metrics(self) -> Dict[str, Any]:
        return {}


def build_simulation(world: WorldConfig, config: MissionConfig) -> Tuple[Simulation, PoseEstimator]:
    noise = config.noise if config.noise is not None else world.noise
    start = config.start if config.start is not None else world.start
    sim = Simulation(world, dt=config.dt, noise=noise, seed=config.seed, initial_state=VesselState(pose=start))
    return sim, PoseEstimator(start, FusionGains.for_noise(noise))


def _log_row(sim: Simulation, estimate: PoseEstimate, cmd: ThrustCommand) -> List[float]:
    state = sim.state
    return [
        sim.time,
        state.pose.x, state.pose.y, state.pose.yaw,
        estimate.pose.x, estimate.pose.y, estimate.pose.yaw,
        state.surge, state.yaw_rate,
        cmd.left, cmd.right,
    ]


def run_closed_loop(
    sim: Simulation,
    estimator: PoseEstimator,
    behavior: MissionBehavior,
    timeout: float,
    log: Optional[TrajectoryLog] = None,
) -> MissionResult:
    """Run until the behavior reports done.

    Raises:
        MissionFailure: on timeout or collision; carries the partial result.
    """
    log = log if log is not None else TrajectoryLog()
    max_ticks = sim.tick + int(round(timeout / sim.dt))

    while True:
        estimate = estimator.update(sim.sense())
        if behavior.done:
            metrics = {"success": True, "duration": sim.time, **behavior.metrics()}
            logger.info(f"{behavior.name} finished at t={sim.time:.1f}s")
            return MissionResult(success=True, reason="completed", log=log, metrics=metrics)
        if sim.tick >= max_ticks:
            reason = "timeout"
            break
        cmd = behavior.act(estimate, sim.state.surge, sim)
        log.append(_log_row(sim, estimate, cmd))
        sim.step(cmd)
        behavior.observe(sim.state, sim.time)
        if sim.collided():
            reason = "collision"
            break

    metrics = {"success": False, "duration": sim.time, "failure_reason": reason, **behavior.metrics()}
    logger.warning(f"{behavior.name} failed: {reason} at t={sim.time:.1f}s")
    result = MissionResult(success=False, reason=reason, log=log, metrics=metrics)
    raise MissionFailure(f"{behavior.name} {reason} after {sim.time:.1f}s", result=result)


class WaypointBehavior(MissionBehavior):
    name = "waypoints"

    def __init__(self, path: WaypointPath, cruise_speed: float, gains: ControllerGains, dt: float):
        super().__init__(gains, dt)
        self.path = path
        self.cruise_speed = cruise_speed
        self.progress = 0
        self.hit_times: List[float] = []

    @property
    def done(self) -> bool:
        return self.progress >= len(self.path.waypoints)

    def act(self, estimate: PoseEstimate, speed: float, sim: Simulation) -> ThrustCommand:
        pose = estimate.pose
        target, progress = pure_pursuit_target(pose, self.path, self.progress)
        for index in range(self.progress, progress):
            self.hit_times.append(round(sim.time, 6))
            logger.debug(f"Waypoint {index} {self.path.waypoints[index]} reached at t={sim.time:.1f}s")
        self.progress = progress
        if self.done:
            return ThrustCommand(left=0.0, right=0.0)
        remaining = remaining_path_length(pose.position, self.path, progress)
        setpoint = cruise_setpoint(self.cruise_speed, remaining, self.path.arrival_radius, self.gains.outer.kp)
        cmd, self.states = pure_pursuit_command(pose, speed, target, self.states, self.dt, setpoint)
        return cmd

    def metrics(self) -> Dict[str, Any]:
        return {
            "waypoints_total": len(self.path.waypoints),
            "waypoints_hit": len(self.hit_times),
            "waypoint_hit_times": list(self.hit_times),
        }


class StationKeepBehavior(MissionBehavior):
    """Cascade position loop plus heading loop on a fixed point.

    Inside freeze_radius the heading reference is frozen; it tracks the bearing
    again once the error exceeds release_radius.
    """

    name = "station_keep"

    def __init__(
        self,
        hold_point: Point2,
        duration: float,
        gains: ControllerGains,
        dt: float,
        freeze_radius: float = 1.0,
        release_radius: float = 3.0,
    ):
        super().__init__(gains, dt)
        self.hold_point = tuple(hold_point)
        self.duration = duration
        self.freeze_radius = freeze_radius
        self.release_radius = release_radius
        self.frozen = False
        self.yaw_ref: Optional[float] = None
        self.elapsed = 0.0
        self.errors: List[float] = []

    @property
    def done(self) -> bool:
        return self.elapsed >= self.duration - 1e-9

    def act(self, estimate: PoseEstimate, speed: float, sim: Simulation) -> ThrustCommand:
        pose = estimate.pose
        error = distance(pose.position, self.hold_point)
        if self.frozen and error > self.release_radius:
            self.frozen = False
        elif not self.frozen and error <= self.freeze_radius:
            self.frozen = True
            if self.yaw_ref is None:
                self.yaw_ref = pose.yaw
        if not self.frozen:
            self.yaw_ref = bearing(pose.position, self.hold_point)

        turn, heading_state = heading_control(pose.yaw, self.yaw_ref, self.states.heading, self.dt)
        surge, cascade_state = cascade_position_control(pose, self.hold_point, speed, self.states.cascade, self.dt)
        self.states = self.states.model_copy(update={"heading": heading_state, "cascade": cascade_state})
        return mix_thrust(surge, turn)

    def observe(self, state: VesselState, time: float) -> None:
        self.elapsed = time
        self.errors.append(distance(state.pose.position, self.hold_point))

    def metrics(self) -> Dict[str, Any]:
        if not self.errors:
            return {"hold_error_mean": 0.0, "hold_error_max": 0.0, "hold_error_final_half_max": 0.0}
        errors = np.asarray(self.errors)
        return {
            "hold_error_mean": float(errors.mean()),
            "hold_error_max": float(errors.max()),
            "hold_error_final_half_max": float(errors[len(errors) // 2:].max()),
            "hold_error_final": float(errors[-1]),
        }


def run_mission(world: WorldConfig, path: WaypointPath, config: MissionConfig) -> MissionResult:
    """Follow the waypoint path until every waypoint is visited or the timeout hits"""
    cruise = config.task.cruise_speed if isinstance(config.task, WaypointsTask) else 1.5
    sim, estimator = build_simulation(world, config)
    behavior = WaypointBehavior(path, cruise, config.gains, sim.dt)
    logger.info(f"Running waypoint mission: {len(path.waypoints)} waypoints, timeout {config.timeout}s")
    return run_closed_loop(sim, estimator, behavior, config.timeout)


def station_keep(
    world: WorldConfig,
    hold_point: Point2,
    duration: float,
    config: MissionConfig,
    freeze_radius: float = 1.0,
    release_radius: float = 3.0,
) -> MissionResult:
    """Hold hold_point for duration seconds; metrics carry the hold error norms"""
    if duration <= 0.0:
        raise ValueError(f"duration must be positive, got {duration}")
    sim, estimator = build_simulation(world, config)
    behavior = StationKeepBehavior(hold_point, duration, config.gains, sim.dt, freeze_radius, release_radius)
    logger.info(f"Station keeping at {hold_point} for {duration}s")
    return run_closed_loop(sim, estimator, behavior, min(config.timeout, duration + sim.dt))
