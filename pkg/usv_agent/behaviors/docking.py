"""
Docking approach: pursue a point on the bay approach axis and threshold the
bearing error into three motion classes.
"""

import logging
import math
from typing import Any, Dict, Optional, Tuple

from usv_agent.control.controllers import action_to_thrust
from usv_agent.guidance.missions import MissionBehavior, build_simulation, run_closed_loop
from usv_agent.models.agent_models import DockAction
from usv_agent.models.behavior_models import DockParams
from usv_agent.models.control_models import ControllerGains
from usv_agent.models.mission_models import MissionConfig, MissionResult
from usv_agent.models.vessel_models import Pose2D, PoseEstimate, ThrustCommand, VesselState
from usv_agent.models.world_models import ShapeType, WorldConfig, WorldObject
from usv_agent.sim.simulator import Simulation
from usv_agent.utils.geometry import angle_diff, bearing

logger = logging.getLogger(__name__)


def axis_coordinates(position: Tuple[float, float], dock_pose: Pose2D) -> Tuple[float, float]:
    """(along, lateral) of a point in the bay frame; along > 0 is inside the mouth"""
    ux, uy = math.cos(dock_pose.yaw), math.sin(dock_pose.yaw)
    dx, dy = position[0] - dock_pose.x, position[1] - dock_pose.y
    return dx * ux + dy * uy, -dx * uy + dy * ux


def approach_point(position: Tuple[float, float], dock_pose: Pose2D, params: DockParams) -> Tuple[float, float]:
    along, _ = axis_coordinates(position, dock_pose)
    reach = min(along + params.lookahead, params.bay_depth)
    return dock_pose.x + reach * math.cos(dock_pose.yaw), dock_pose.y + reach * math.sin(dock_pose.yaw)


def dock_policy(vessel_pose: Pose2D, dock_pose: Pose2D, params: DockParams = DockParams()) -> DockAction:
    """Three-way action from the wrapped bearing error to the approach point"""
    aim = approach_point(vessel_pose.position, dock_pose, params)
    error = angle_diff(bearing(vessel_pose.position, aim), vessel_pose.yaw)
    if abs(error) < params.dead_band:
        return DockAction.GO_STRAIGHT
    return DockAction.TURN_LEFT if error > 0.0 else DockAction.TURN_RIGHT


def dock_pose_from_object(dock: WorldObject, bay_depth: float) -> Pose2D:
    """Bay mouth bay_depth in front of the dock's near face, heading into the bay.

    The dock's yaw is the approach direction; the vessel comes in along +yaw
    and moors against the face at -length/2.
    """
    if dock.shape != ShapeType.BOX:
        raise ValueError(f"dock object {dock.id} must be a box")
    back = 0.5 * dock.size.length + bay_depth
    c, s = math.cos(dock.pose.yaw), math.sin(dock.pose.yaw)
    return Pose2D(x=dock.pose.x - back * c, y=dock.pose.y - back * s, yaw=dock.pose.yaw)


class DockingBehavior(MissionBehavior):
    """Drive the policy until the vessel crosses the bay mouth"""

    name = "dock"

    def __init__(self, dock_pose: Pose2D, params: DockParams, gains: ControllerGains, dt: float):
        super().__init__(gains, dt)
        self.dock_pose = dock_pose
        self.params = params
        self.crossed = False
        self.mouth_lateral_error: Optional[float] = None
        self.crossing_time: Optional[float] = None
        self.actions = {action.value: 0 for action in DockAction}

    @property
    def done(self) -> bool:
        return self.crossed

    def act(self, estimate: PoseEstimate, speed: float, sim: Simulation) -> ThrustCommand:
        action = dock_policy(estimate.pose, self.dock_pose, self.params)
        self.actions[action.value] += 1
        return action_to_thrust(action, self.params.cruise_thrust, self.params.turn_thrust)

    def observe(self, state: VesselState, time: float) -> None:
        along, lateral = axis_coordinates(state.pose.position, self.dock_pose)
        if along >= 0.0 and not self.crossed:
            self.crossed = True
            self.mouth_lateral_error = lateral
            self.crossing_time = time
            logger.debug(f"Crossed the bay mouth at t={time:.1f}s, lateral error {lateral:.2f} m")

    def metrics(self) -> Dict[str, Any]:
        return {
            "crossed_mouth": self.crossed,
            "mouth_lateral_error": self.mouth_lateral_error,
            "crossing_time": self.crossing_time,
            "action_counts": dict(self.actions),
        }


def run_docking(world: WorldConfig, dock_pose: Pose2D, params: DockParams, config: MissionConfig) -> MissionResult:
    sim, estimator = build_simulation(world, config)
    behavior = DockingBehavior(dock_pose, params, config.gains, sim.dt)
    logger.info(f"Docking toward mouth ({dock_pose.x:.1f}, {dock_pose.y:.1f}) heading {math.degrees(dock_pose.yaw):.0f} deg")
    return run_closed_loop(sim, estimator, behavior, config.timeout)
