"""
Totem circling with two PID loops, one on the distance to the totem and one on
the heading deviation from the circling tangent.
"""

import logging
import math
from typing import Any, Dict, Optional, Tuple

import numpy as np

from usv_agent.control.controllers import mix_thrust
from usv_agent.control.pid import clamp, pid_step
from usv_agent.errors import GeometryError
from usv_agent.guidance.missions import MissionBehavior, build_simulation, run_closed_loop
from usv_agent.models.behavior_models import CirclingDirection, CirclingParams, CirclingState
from usv_agent.models.control_models import ControllerGains, PIDState
from usv_agent.models.mission_models import MissionConfig, MissionResult
from usv_agent.models.vessel_models import DynamicsParams, Pose2D, PoseEstimate, ThrustCommand, VesselState
from usv_agent.models.world_models import WorldConfig
from usv_agent.sim.simulator import Simulation
from usv_agent.utils.geometry import TWO_PI, angle_diff, distance, wrap_angle

logger = logging.getLogger(__name__)

Point2 = Tuple[float, float]

# Convergence band around R, as a fraction of R
BAND_FRACTION = 0.2


def circling_state(
    vessel_pose: Pose2D,
    totem_center: Point2,
    R: float,
    direction: CirclingDirection = CirclingDirection.COUNTERCLOCKWISE,
) -> CirclingState:
    """Distance to the totem and heading deviation from the tangent direction.

    Raises:
        GeometryError: vessel exactly on the totem centre.
    """
    dx, dy = vessel_pose.x - totem_center[0], vessel_pose.y - totem_center[1]
    d = math.hypot(dx, dy)
    if d < 1e-9:
        raise GeometryError("circling tangent is undefined at the totem centre")
    direction = CirclingDirection(direction)
    tangent = math.atan2(dy, dx) + direction.sign * 0.5 * math.pi
    return CirclingState(d=d, phi=wrap_angle(vessel_pose.yaw - tangent), R=R, direction=direction)


def circling_command(
    cstate: CirclingState,
    pid_d_state: PIDState,
    pid_phi_state: PIDState,
    dt: float,
    cruise_speed: float = 1.0,
    dynamics: DynamicsParams = DynamicsParams(),
    feedforward: bool = True,
) -> Tuple[ThrustCommand, Tuple[PIDState, PIDState]]:
    """Thrust pair plus the updated (d, phi) loop states.

    Turn effort is PID_phi(-phi) + s * PID_d(d - R), s = +1 counter-clockwise,
    plus the steady turn effort of a circle of radius R at cruise speed. Surge
    effort is the steady-state effort of the cruise speed.
    """
    sign = cstate.direction.sign
    phi_out, pid_phi_state = pid_step(pid_phi_state, -cstate.phi, dt)
    d_out, pid_d_state = pid_step(pid_d_state, cstate.d - cstate.R, dt)
    turn = phi_out + sign * d_out
    if feedforward:
        turn += sign * (cruise_speed / cstate.R) * dynamics.c_r / (2.0 * dynamics.k_r)
    surge = clamp(cruise_speed * dynamics.c_d / dynamics.k_t, 1.0)
    return mix_thrust(surge, clamp(turn, 1.0)), (pid_d_state, pid_phi_state)


class CirclingBehavior(MissionBehavior):
    """Circle a totem for a number of laps.

    Laps are counted from the truth angular position around the totem in the
    circling direction. The band metrics track |d - R| <= 0.2 R on truth.
    """

    name = "circle_totem"

    def __init__(
        self,
        totem_center: Point2,
        params: CirclingParams,
        laps: int,
        gains: ControllerGains,
        dt: float,
        dynamics: DynamicsParams = DynamicsParams(),
    ):
        super().__init__(gains, dt)
        self.totem_center = tuple(totem_center)
        self.params = params
        self.laps = laps
        self.dynamics = dynamics
        self.progress = 0.0
        self.last_angle: Optional[float] = None
        self.last_exit_progress = 0.0
        self.ever_in_band = False
        self.band_errors = []
        self.phis = []

    @property
    def laps_completed(self) -> int:
        return int(math.floor(self.progress / TWO_PI))

    @property
    def done(self) -> bool:
        return self.laps_completed >= self.laps

    def act(self, estimate: PoseEstimate, speed: float, sim: Simulation) -> ThrustCommand:
        cstate = circling_state(estimate.pose, self.totem_center, self.params.R, self.params.direction)
        cmd, (d_state, phi_state) = circling_command(
            cstate,
            self.states.circle_d,
            self.states.circle_phi,
            self.dt,
            self.params.cruise_speed,
            self.dynamics,
            self.params.curvature_feedforward,
        )
        self.states = self.states.model_copy(update={"circle_d": d_state, "circle_phi": phi_state})
        return cmd

    def observe(self, state: VesselState, time: float) -> None:
        pose = state.pose
        angle = math.atan2(pose.y - self.totem_center[1], pose.x - self.totem_center[0])
        if self.last_angle is not None:
            before = self.laps_completed
            self.progress += self.params.direction.sign * angle_diff(angle, self.last_angle)
            if self.laps_completed > before:
                logger.debug(f"Lap {self.laps_completed} completed at t={time:.1f}s")
        self.last_angle = angle

        d = distance(pose.position, self.totem_center)
        error = abs(d - self.params.R)
        if error > BAND_FRACTION * self.params.R:
            self.last_exit_progress = self.progress
        else:
            self.ever_in_band = True
        self.band_errors.append(error)
        if d > 1e-9:
            self.phis.append((self.progress, circling_state(pose, self.totem_center, self.params.R, self.params.direction).phi))

    def metrics(self) -> Dict[str, Any]:
        laps_in_band = max(0.0, self.progress - self.last_exit_progress) / TWO_PI if self.ever_in_band else 0.0
        converged_lap = self.last_exit_progress / TWO_PI if self.ever_in_band else None
        last_lap = [phi for progress, phi in self.phis if progress >= self.progress - TWO_PI]
        return {
            "laps_completed": self.laps_completed,
            "laps_in_band": float(math.floor(laps_in_band)),
            "converged_after_laps": converged_lap,
            "radius": self.params.R,
            "band_error_final": float(self.band_errors[-1]) if self.band_errors else None,
            "mean_phi_last_lap": float(np.mean(last_lap)) if last_lap else None,
        }


def run_circling(world: WorldConfig, totem_center: Point2, params: CirclingParams, laps: int, config: MissionConfig) -> MissionResult:
    """Circle the totem until laps are done or the timeout hits"""
    sim, estimator = build_simulation(world, config)
    behavior = CirclingBehavior(totem_center, params, laps, config.gains, sim.dt, world.dynamics)
    logger.info(f"Circling totem at {totem_center}: R={params.R}, {params.direction.value}, {laps} laps")
    return run_closed_loop(sim, estimator, behavior, config.timeout)
