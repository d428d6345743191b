"""
Synthetic labelled object observations.

Each sample places one object of the requested class in an otherwise empty
world, puts the vessel at a random range and azimuth around it, and keeps the
LiDAR returns that hit the object. A random wedge of the object may be cut out
to imitate partial occlusion.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Tuple

import numpy as np

from usv_agent.errors import TrainingDataError
from usv_agent.models.perception_models import CLASS_ORDER, ClassLabel, DatasetConfig, PointCloud, SyntheticParams
from usv_agent.models.vessel_models import Pose2D
from usv_agent.models.world_models import ObjectKind, ObjectSize, ShapeType, WorldConfig, WorldObject
from usv_agent.sim.sensors import sample_lidar_cloud
from usv_agent.utils.geometry import wrap_angles

logger = logging.getLogger(__name__)

OBJECT_ID = 0

# Nominal course objects
TEMPLATES: Dict[ClassLabel, Tuple[ShapeType, ObjectSize]] = {
    ClassLabel.OBSTACLE_BUOY: (ShapeType.CIRCLE, ObjectSize(radius=0.5, height=0.8)),
    ClassLabel.TOTEM_BUOY: (ShapeType.CIRCLE, ObjectSize(radius=0.4, height=2.5)),
    ClassLabel.DOCK: (ShapeType.BOX, ObjectSize(length=4.0, width=2.5, height=0.6)),
    ClassLabel.DELIVER_BOX: (ShapeType.BOX, ObjectSize(length=1.5, width=1.5, height=2.0)),
}


def _jittered(size: ObjectSize, jitter: float, rng: np.random.Generator) -> ObjectSize:
    def scale(v):
        return None if v is None else float(v * (1.0 + rng.uniform(-jitter, jitter)))

    return ObjectSize(radius=scale(size.radius), length=scale(size.length), width=scale(size.width), height=scale(size.height))


def single_object_world(label: ClassLabel, yaw: float, size: ObjectSize) -> WorldConfig:
    shape, _ = TEMPLATES[label]
    obj = WorldObject(id=OBJECT_ID, kind=ObjectKind(label.value), shape=shape, pose=Pose2D(yaw=yaw), size=size)
    return WorldConfig(objects=[obj])


def _occlude(cloud: PointCloud, params: SyntheticParams, rng: np.random.Generator) -> PointCloud:
    """Remove a wedge at one angular edge of the object as seen from the sensor"""
    azimuth = np.arctan2(cloud.points[:, 1], cloud.points[:, 0])
    mean_x, mean_y = cloud.points[:, :2].mean(axis=0)
    centre = math.atan2(mean_y, mean_x)
    offset = wrap_angles(azimuth - centre)
    lo, hi = float(offset.min()), float(offset.max())
    cut = rng.uniform(0.0, params.occlusion_max_fraction) * (hi - lo)
    keep = offset >= lo + cut if rng.random() < 0.5 else offset <= hi - cut
    return cloud.subset(keep)


def synthetic_observation(label: ClassLabel, params: SyntheticParams, rng: np.random.Generator) -> PointCloud:
    """One object-only sensor-frame cloud of the given class"""
    label = ClassLabel(label)
    _, nominal = TEMPLATES[label]
    size = _jittered(nominal, params.size_jitter, rng)
    world = single_object_world(label, float(rng.uniform(-math.pi, math.pi)), size)

    distance = rng.uniform(params.range_min, params.range_max)
    azimuth = rng.uniform(-math.pi, math.pi)
    heading = float(rng.uniform(-math.pi, math.pi))
    vessel = Pose2D(x=distance * math.cos(azimuth), y=distance * math.sin(azimuth), yaw=heading)

    cloud = sample_lidar_cloud(world, vessel, params.lidar)
    cloud = cloud.subset(cloud.labels == OBJECT_ID)
    if len(cloud) > 1 and rng.random() < params.occlusion_probability:
        cloud = _occlude(cloud, params, rng)
    if params.max_points is not None and len(cloud) > params.max_points:
        cloud = cloud.subset(np.sort(rng.choice(len(cloud), size=params.max_points, replace=False)))
    return cloud


def generate_class_samples(label: ClassLabel, count: int, seed_seq: np.random.SeedSequence, params: SyntheticParams) -> List[PointCloud]:
    """count observations of one class; empty observations are redrawn"""
    rng = np.random.default_rng(seed_seq)
    samples: List[PointCloud] = []
    attempts = 0
    while len(samples) < count:
        attempts += 1
        if attempts > 20 * count:
            raise TrainingDataError(f"could not produce {count} non-empty {label.value} samples")
        cloud = synthetic_observation(label, params, rng)
        if not cloud.is_empty:
            samples.append(cloud)
    logger.debug(f"Generated {count} {label.value} samples in {attempts} draws")
    return samples


def _class_job(args) -> List[PointCloud]:
    return generate_class_samples(*args)


def generate_dataset(config: DatasetConfig, jobs: int = 1) -> Dict[ClassLabel, List[PointCloud]]:
    """samples_per_class clouds for every class; classes get independent seed streams.

    The result does not depend on jobs.
    """
    children = np.random.SeedSequence(config.seed).spawn(len(CLASS_ORDER))
    tasks = [(label, config.samples_per_class, child, config.synthetic) for label, child in zip(CLASS_ORDER, children)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_class_job, tasks))
    else:
        results = [_class_job(task) for task in tasks]
    logger.info(f"Generated dataset: {len(CLASS_ORDER)} classes x {config.samples_per_class} samples")
    return dict(zip(CLASS_ORDER, results))
