"""Flattened point-cloud perception pipeline"""

from usv_agent.perception.classifier import accuracy, classify, confusion_frame, train_centroid_model
from usv_agent.perception.flatten import flatten, image_difference
from usv_agent.perception.pipeline import evaluate_classifier, fit_classifier, object_image
from usv_agent.perception.preprocessing import (
    NO_PLANE_FLAG,
    YAW_UNDEFINED_FLAG,
    cluster,
    denoise,
    normalize_to_object_frame,
    remove_sea_plane,
    segment_objects,
    sensor_to_world,
)
from usv_agent.perception.synthetic import generate_dataset, synthetic_observation

__all__ = [
    "accuracy",
    "classify",
    "confusion_frame",
    "train_centroid_model",
    "flatten",
    "image_difference",
    "evaluate_classifier",
    "fit_classifier",
    "object_image",
    "NO_PLANE_FLAG",
    "YAW_UNDEFINED_FLAG",
    "cluster",
    "denoise",
    "normalize_to_object_frame",
    "remove_sea_plane",
    "segment_objects",
    "sensor_to_world",
    "generate_dataset",
    "synthetic_observation",
]
