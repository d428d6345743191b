"""Test configuration and fixtures"""

import json

import pytest

from usv_agent.config.settings import Settings
from usv_agent.models.mission_models import MissionConfig
from usv_agent.models.vessel_models import Pose2D
from usv_agent.models.world_models import ObjectKind, ObjectSize, ShapeType, WorldConfig, WorldObject
from usv_agent.services.artifact_service import ArtifactService


def pytest_configure(config):
    """Configure pytest with custom markers"""
    config.addinivalue_line(
        "markers", "slow: long-running simulation or training test"
    )


@pytest.fixture
def test_settings(tmp_path):
    """Settings writing into a temporary directory"""
    return Settings(
        OUTPUT_DIR=str(tmp_path / "out"),
        LOG_FILE=str(tmp_path / "logs" / "usv_agent.log"),
        LOG_LEVEL="DEBUG",
    )


@pytest.fixture
def artifacts(test_settings):
    return ArtifactService(test_settings)


@pytest.fixture
def empty_world():
    return WorldConfig()


def buoy(x, y, radius=0.5, height=0.8, object_id=-1):
    return WorldObject(
        id=object_id,
        kind=ObjectKind.OBSTACLE_BUOY,
        shape=ShapeType.CIRCLE,
        pose=Pose2D(x=x, y=y),
        size=ObjectSize(radius=radius, height=height),
    )


def dock(x, y, yaw=0.0, length=4.0, width=2.5, object_id=-1):
    return WorldObject(
        id=object_id,
        kind=ObjectKind.DOCK,
        shape=ShapeType.BOX,
        pose=Pose2D(x=x, y=y, yaw=yaw),
        size=ObjectSize(length=length, width=width, height=0.6),
    )


@pytest.fixture
def buoy_world():
    """One buoy ten metres ahead of the start pose"""
    return WorldConfig(objects=[buoy(10.0, 0.0, radius=1.0)])


@pytest.fixture
def make_mission(empty_world):
    """Build a MissionConfig from a task dict with an inline world"""
    def _make(task, world=None, **overrides):
        data = {
            "world": (world or empty_world).model_dump(mode="json"),
            "task": task,
            "seed": 7,
        }
        data.update(overrides)
        return MissionConfig.model_validate(data)
    return _make


@pytest.fixture
def write_json(tmp_path):
    """Write a JSON document under tmp_path and return its path"""
    def _write(name, payload):
        path = tmp_path / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path
    return _write


@pytest.fixture
def square_waypoints():
    return [(15.0, 0.0), (15.0, 15.0), (0.0, 15.0), (0.0, 0.0)]


@pytest.fixture
def make_buoy():
    return buoy


@pytest.fixture
def make_dock():
    return dock
