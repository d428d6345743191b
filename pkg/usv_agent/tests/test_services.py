"""Tests for the artifact and dataset services"""

import json

import numpy as np
import pytest
from matplotlib import image as mpimg

from usv_agent.errors import ConfigError
from usv_agent.models.agent_models import LearningCurveRow, QLearningParams, QTable
from usv_agent.models.mission_models import TrajectoryLog, TRAJECTORY_COLUMNS
from usv_agent.models.perception_models import CLASS_ORDER, ClassLabel, FlatImage, PointCloud
from usv_agent.models.planning_models import PlannedPath
from usv_agent.models.world_models import WorldConfig
from usv_agent.services.dataset_service import DatasetService


@pytest.fixture
def short_log():
    log = TrajectoryLog()
    for i in range(5):
        log.append([0.1 * i, float(i), 0.5 * i, 0.0, float(i), 0.5 * i, 0.0, 1.0, 0.0, 0.5, 0.5])
    return log


class TestConfigLoading:
    """JSON documents to validated models"""

    def test_missing_file(self, artifacts, tmp_path):
        with pytest.raises(ConfigError):
            artifacts.load_json(str(tmp_path / "absent.json"))

    def test_malformed_json(self, artifacts, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ConfigError):
            artifacts.load_json(str(path))

    def test_invalid_document_is_config_error(self, artifacts):
        with pytest.raises(ConfigError) as exc_info:
            artifacts.parse({"objects": "nope"}, WorldConfig)
        assert exc_info.value.exit_code == 2

    def test_world_file_relative_to_config(self, artifacts, write_json, buoy_world):
        write_json("worlds/buoy.json", buoy_world.model_dump(mode="json"))
        mission = write_json("mission.json", {
            "world_file": "worlds/buoy.json",
            "task": {"behavior": "waypoints", "waypoints": [[5, 5]]},
            "seed": 1,
        })
        config = artifacts.load_mission_config(str(mission), seed=99)
        assert config.seed == 99
        assert len(config.world.objects) == 1
        assert config.world.objects[0].pose.x == 10.0

    def test_world_required(self, artifacts, tmp_path):
        with pytest.raises(ConfigError):
            artifacts.resolve_world(None, None, tmp_path)


class TestTabularArtifacts:
    """CSV output"""

    def test_trajectory_csv_header_and_bytes(self, artifacts, short_log, tmp_path):
        first = artifacts.write_trajectory_csv(short_log, tmp_path / "a.csv")
        second = artifacts.write_trajectory_csv(short_log, tmp_path / "b.csv")
        lines = first.read_text().splitlines()
        assert lines[0] == ",".join(TRAJECTORY_COLUMNS)
        assert len(lines) == 6
        assert lines[2].startswith("0.100000,1.000000")
        assert first.read_bytes() == second.read_bytes()

    def test_learning_curve_columns(self, artifacts, tmp_path):
        curve = [LearningCurveRow(episode=0, steps=12, episode_return=3.5, epsilon=0.5)]
        path = artifacts.write_learning_curve_csv(curve, tmp_path / "curve.csv")
        assert path.read_text().splitlines() == ["episode,steps,return,epsilon", "0,12,3.500000,0.500000"]

    def test_path_csv(self, artifacts, tmp_path):
        path = artifacts.write_path_csv(PlannedPath(vertices=[(0.0, 0.0), (3.0, 4.0)]), tmp_path / "path.csv")
        assert path.read_text().splitlines() == ["x,y", "0.000000,0.000000", "3.000000,4.000000"]


class TestJsonArtifacts:
    """Metrics and Q-table JSON"""

    def test_metrics_carry_schema_version(self, artifacts, tmp_path):
        path = artifacts.write_metrics_json({"value": np.float64(1.5), "counts": np.array([1, 2])}, tmp_path / "m.json")
        payload = json.loads(path.read_text())
        assert payload == {"schema_version": 1, "value": 1.5, "counts": [1, 2]}

    def test_qtable_keys_sorted_and_reloaded(self, artifacts, tmp_path):
        table = QTable(values={"21": [0.0, 1.0, 2.0], "00": [3.0, 0.0, 0.0]}, params=QLearningParams(alpha=0.2))
        path = artifacts.write_qtable_json(table, tmp_path / "qtable.json")
        assert list(json.loads(path.read_text())["values"]) == ["00", "21"]
        reloaded = artifacts.read_qtable_json(str(path))
        assert reloaded.values == table.values
        assert reloaded.params.alpha == 0.2


class TestCloudsAndImages:
    """XYZ clouds and PNG images"""

    def test_xyz_written_with_fixed_precision(self, artifacts, tmp_path):
        path = artifacts.write_xyz(PointCloud(points=[[1.0, 2.0, 3.0]]), tmp_path / "c.xyz")
        assert path.read_text() == "1.000000 2.000000 3.000000\n"
        assert np.array_equal(artifacts.read_xyz(path).points, [[1.0, 2.0, 3.0]])

    def test_empty_xyz(self, artifacts, tmp_path):
        path = artifacts.write_xyz(PointCloud(), tmp_path / "empty.xyz")
        assert artifacts.read_xyz(path).is_empty

    def test_flat_image_png_and_sidecar(self, artifacts, tmp_path):
        channels = np.zeros((3, 32, 32))
        channels[0, 16, 16] = 1.0
        path = artifacts.write_flat_image(FlatImage(channels=channels), tmp_path / "img.png")
        pixels = mpimg.imread(path)
        assert pixels.shape[:2] == (32, 32)
        assert tuple(pixels[16, 16, :3]) == (1.0, 0.0, 0.0)
        assert pixels[:, :, :3].sum() == 1.0
        sidecar = json.loads(path.with_suffix(".json").read_text())
        assert sidecar["meters_per_pixel"] == 0.25
        assert sidecar["extent_x"] == 8.0


class TestTrajectoryPlot:
    """SVG output"""

    def test_svg_is_byte_stable(self, artifacts, short_log, buoy_world, tmp_path):
        first = artifacts.write_trajectory_svg(short_log, buoy_world, tmp_path / "a.svg", title="run")
        second = artifacts.write_trajectory_svg(short_log, buoy_world, tmp_path / "b.svg", title="run")
        assert first.read_text().lstrip().startswith("<?xml")
        assert first.read_bytes() == second.read_bytes()

    def test_empty_log_still_plots(self, artifacts, tmp_path):
        path = artifacts.write_trajectory_svg(TrajectoryLog(), None, tmp_path / "empty.svg", waypoints=[(1, 1)])
        assert path.is_file()


class TestDatasetService:
    """Per-class XYZ trees"""

    def test_layout_and_reload(self, test_settings, artifacts, tmp_path):
        clouds = {
            ClassLabel.DOCK: [PointCloud(points=[[1.0, 0.0, 0.0]]), PointCloud(points=[[2.0, 0.0, 0.0]])],
            ClassLabel.TOTEM_BUOY: [PointCloud(points=[[0.0, 1.0, 0.0]])],
        }
        service = DatasetService(test_settings, artifacts)
        counts = service.write_dataset(clouds, tmp_path / "ds")
        assert counts == {"obstacle_buoy": 0, "totem_buoy": 1, "dock": 2, "deliver_box": 0}
        assert (tmp_path / "ds" / "dock" / "0001.xyz").is_file()

        loaded = service.read_dataset(tmp_path / "ds")
        assert list(loaded) == CLASS_ORDER
        assert [c.points[0, 0] for c in loaded[ClassLabel.DOCK]] == [1.0, 2.0]

    def test_missing_root(self, test_settings, tmp_path):
        with pytest.raises(ConfigError):
            DatasetService(test_settings).read_dataset(tmp_path / "nowhere")
