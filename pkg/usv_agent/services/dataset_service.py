"""Labelled cloud dataset trees: <root>/<class_name>/<sample_id>.xyz"""

import logging
from pathlib import Path
from typing import Dict, List, Optional

from usv_agent.config.settings import Settings, settings as default_settings
from usv_agent.errors import ConfigError
from usv_agent.models.perception_models import CLASS_ORDER, ClassLabel, PointCloud
from usv_agent.services.artifact_service import ArtifactService

logger = logging.getLogger(__name__)

SAMPLE_ID_WIDTH = 4


class DatasetService:
    """Writes and reads per-class XYZ sample directories"""

    def __init__(self, settings: Optional[Settings] = None, artifacts: Optional[ArtifactService] = None):
        self.settings = settings or default_settings
        self.artifacts = artifacts or ArtifactService(self.settings)

    def write_dataset(self, clouds: Dict[ClassLabel, List[PointCloud]], root: Path) -> Dict[str, int]:
        root = Path(root)
        counts = {}
        for label in CLASS_ORDER:
            samples = clouds.get(label, [])
            class_dir = root / label.value
            class_dir.mkdir(parents=True, exist_ok=True)
            for index, cloud in enumerate(samples):
                self.artifacts.write_xyz(cloud, class_dir / f"{index:0{SAMPLE_ID_WIDTH}d}.xyz")
            counts[label.value] = len(samples)
        logger.info(f"Wrote dataset to {root}: {counts}")
        return counts

    def read_dataset(self, root: Path) -> Dict[ClassLabel, List[PointCloud]]:
        """Samples per class in file-name order; unknown directories are ignored"""
        root = Path(root)
        if not root.is_dir():
            raise ConfigError(f"dataset directory not found: {root}")
        clouds: Dict[ClassLabel, List[PointCloud]] = {}
        for label in CLASS_ORDER:
            class_dir = root / label.value
            files = sorted(class_dir.glob("*.xyz")) if class_dir.is_dir() else []
            samples = []
            for file in files:
                try:
                    samples.append(self.artifacts.read_xyz(file))
                except ValueError as e:
                    logger.error(f"Skipping unreadable cloud {file}: {e}", exc_info=True)
            clouds[label] = samples
        logger.debug(f"Read dataset {root}: " + ", ".join(f"{k.value}={len(v)}" for k, v in clouds.items()))
        return clouds
