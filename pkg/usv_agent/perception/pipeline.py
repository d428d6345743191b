"""Object cloud -> FlatImage -> class, and classifier evaluation over labelled clouds"""

import logging
from typing import Dict, List, Sequence, Tuple

import pandas as pd

from usv_agent.models.perception_models import (
    CentroidModel,
    ClassificationResult,
    ClassLabel,
    FlatImage,
    ImageParams,
    PointCloud,
)
from usv_agent.perception.classifier import accuracy, classify, confusion_frame, train_centroid_model
from usv_agent.perception.flatten import flatten
from usv_agent.perception.preprocessing import normalize_to_object_frame

logger = logging.getLogger(__name__)

LabeledClouds = Dict[ClassLabel, List[PointCloud]]


def object_image(cluster: PointCloud, params: ImageParams, normalize: bool = True) -> FlatImage:
    """Object frame (or centring only when normalize is False), then tri-planar projection"""
    return flatten(normalize_to_object_frame(cluster, rotate=normalize), params)


def labeled_images(clouds: LabeledClouds, params: ImageParams, normalize: bool = True) -> List[Tuple[ClassLabel, FlatImage]]:
    return [
        (label, object_image(cloud, params, normalize))
        for label, samples in clouds.items()
        for cloud in samples
        if not cloud.is_empty
    ]


def fit_classifier(clouds: LabeledClouds, params: ImageParams, normalize: bool = True) -> CentroidModel:
    return train_centroid_model(labeled_images(clouds, params, normalize))


def evaluate_classifier(
    model: CentroidModel,
    clouds: LabeledClouds,
    params: ImageParams,
    normalize: bool = True,
) -> Tuple[float, pd.DataFrame, List[ClassificationResult]]:
    """Accuracy, confusion matrix and per-sample results over a labelled set"""
    truth: List[ClassLabel] = []
    results: List[ClassificationResult] = []
    for label, image in labeled_images(clouds, params, normalize):
        truth.append(label)
        results.append(classify(model, image))
    predicted: Sequence[ClassLabel] = [r.label for r in results]
    score = accuracy(truth, predicted)
    logger.info(f"Classifier accuracy {score:.3f} on {len(truth)} samples")
    return score, confusion_frame(truth, predicted), results
