"""Tests for the data models and geometry helpers"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from usv_agent.models.agent_models import ACTION_ORDER, DiscreteAction, EnvConfig, QTable, RewardParams
from usv_agent.models.mission_models import MissionConfig, TrajectoryLog, TRAJECTORY_COLUMNS
from usv_agent.models.perception_models import PointCloud
from usv_agent.models.planning_models import PlannedPath
from usv_agent.models.vessel_models import Pose2D, ThrustCommand
from usv_agent.models.world_models import ObjectKind, ObjectSize, ShapeType, WorldConfig, WorldObject
from usv_agent.utils.geometry import angle_diff, periodic_offset, project_on_segment, wrap_angle, wrap_angles


class TestGeometry:
    """Angle wrapping and planar helpers"""

    @pytest.mark.parametrize("angle", [math.pi, -math.pi, 3 * math.pi, -3 * math.pi])
    def test_wrap_angle_keeps_pi(self, angle):
        """Odd multiples of pi wrap to +pi, never -pi"""
        assert wrap_angle(angle) == pytest.approx(math.pi)
        assert wrap_angle(angle) > 0.0

    def test_angle_diff_short_arc(self):
        """Difference across the +-pi seam takes the short arc"""
        assert angle_diff(-0.9 * math.pi, 0.9 * math.pi) == pytest.approx(0.2 * math.pi)

    def test_wrap_angles_vectorised(self):
        values = np.array([0.0, math.pi, -math.pi, 4.0, -4.0])
        wrapped = wrap_angles(values)
        assert np.all(wrapped > -math.pi) and np.all(wrapped <= math.pi)
        assert wrapped[2] == pytest.approx(math.pi)

    def test_project_on_segment_clamps(self):
        t, point = project_on_segment((20.0, 3.0), (0.0, 0.0), (10.0, 0.0))
        assert t == 1.0
        assert point == (10.0, 0.0)

    def test_periodic_offset_minimal_image(self):
        offset = periodic_offset(np.array([35.0, -35.0]), 40.0)
        np.testing.assert_allclose(offset, [-5.0, 5.0])


class TestVesselModels:
    """Pose and thrust invariants"""

    def test_pose_yaw_wrapped(self):
        assert Pose2D(x=0.0, y=0.0, yaw=3 * math.pi / 2).yaw == pytest.approx(-math.pi / 2)

    def test_thrust_clamped(self):
        cmd = ThrustCommand(left=-3.0, right=2.0)
        assert (cmd.left, cmd.right) == (-1.0, 1.0)


class TestWorldModels:
    """World document validation"""

    def test_ids_assigned_in_order(self):
        world = WorldConfig(objects=[
            WorldObject(kind=ObjectKind.OBSTACLE_BUOY, shape=ShapeType.CIRCLE, size=ObjectSize(radius=0.5)),
            WorldObject(id=4, kind=ObjectKind.TOTEM_BUOY, shape=ShapeType.CIRCLE, size=ObjectSize(radius=0.4)),
            WorldObject(kind=ObjectKind.DOCK, shape=ShapeType.BOX, size=ObjectSize(length=4.0, width=2.5)),
        ])
        assert [obj.id for obj in world.objects] == [5, 4, 6]

    def test_duplicate_ids_rejected(self):
        obj = WorldObject(id=1, kind=ObjectKind.OBSTACLE_BUOY, shape=ShapeType.CIRCLE, size=ObjectSize(radius=0.5))
        with pytest.raises(ValidationError):
            WorldConfig(objects=[obj, obj])

    def test_circle_needs_radius(self):
        with pytest.raises(ValidationError):
            WorldObject(kind=ObjectKind.OBSTACLE_BUOY, shape=ShapeType.CIRCLE, size=ObjectSize())

    def test_box_bounding_radius(self):
        obj = WorldObject(kind=ObjectKind.DOCK, shape=ShapeType.BOX, size=ObjectSize(length=6.0, width=8.0))
        assert obj.bounding_radius == pytest.approx(5.0)


class TestAgentModels:
    """Action, reward and Q-table contracts"""

    def test_action_order_is_tie_break(self):
        assert ACTION_ORDER == [DiscreteAction.GO_STRAIGHT, DiscreteAction.TURN_LEFT, DiscreteAction.TURN_RIGHT]

    def test_reward_order_enforced(self):
        with pytest.raises(ValidationError):
            RewardParams(straight=0.1, turn=0.2)

    def test_bin_edges_must_increase(self):
        with pytest.raises(ValidationError):
            EnvConfig(bin_edges=[5.0, 2.5])

    def test_greedy_tie_breaks_straight_first(self):
        table = QTable(values={"00000": [1.0, 1.0, 1.0], "11111": [0.0, 2.0, 2.0]})
        assert table.greedy("00000") is DiscreteAction.GO_STRAIGHT
        assert table.greedy("11111") is DiscreteAction.TURN_LEFT
        assert table.greedy("unseen") is DiscreteAction.GO_STRAIGHT

    def test_non_finite_q_rejected(self):
        with pytest.raises(ValidationError):
            QTable(values={"0": [0.0, float("nan"), 0.0]})


class TestMissionModels:
    """Mission document parsing"""

    def test_seed_is_mandatory(self):
        with pytest.raises(ValidationError):
            MissionConfig.model_validate({"task": {"behavior": "waypoints", "waypoints": [[1, 1]]}})

    def test_task_discriminated_by_behavior(self):
        config = MissionConfig.model_validate({
            "task": {"behavior": "circle_totem", "totem_center": [0, 0], "R": 4.0},
            "seed": 1,
        })
        assert config.task.behavior == "circle_totem"
        assert config.task.R == 4.0

    def test_circle_task_needs_totem(self):
        with pytest.raises(ValidationError):
            MissionConfig.model_validate({"task": {"behavior": "circle_totem"}, "seed": 1})

    def test_trajectory_frame_columns(self):
        log = TrajectoryLog()
        log.append([0.0] * len(TRAJECTORY_COLUMNS))
        assert list(log.to_frame().columns) == TRAJECTORY_COLUMNS


class TestGeometryModels:
    """Point clouds and planned paths"""

    def test_point_cloud_rejects_non_finite(self):
        with pytest.raises(ValidationError):
            PointCloud(points=[[0.0, float("inf"), 0.0]])

    def test_empty_point_cloud(self):
        cloud = PointCloud()
        assert cloud.is_empty and len(cloud) == 0

    def test_path_vertices_distinct(self):
        with pytest.raises(ValidationError):
            PlannedPath(vertices=[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)])

    def test_path_length(self):
        path = PlannedPath(vertices=[(0.0, 0.0), (3.0, 4.0), (3.0, 10.0)])
        assert path.length == pytest.approx(11.0)
