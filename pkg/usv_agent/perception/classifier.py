"""
Nearest-centroid classifier over flattened point-cloud images.
"""

import logging
from collections import defaultdict
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np
import pandas as pd
from sklearn.metrics import confusion_matrix

from usv_agent.errors import InputDomainError, TrainingDataError
from usv_agent.models.perception_models import (
    CLASS_ORDER,
    CentroidModel,
    ClassificationResult,
    ClassLabel,
    FlatImage,
)

logger = logging.getLogger(__name__)

LabeledImage = Tuple[ClassLabel, FlatImage]


def train_centroid_model(labeled_images: Iterable[LabeledImage]) -> CentroidModel:
    """Per-class pixel-wise mean image.

    Samples are ordered by content before averaging so the model does not
    depend on input order.

    Raises:
        TrainingDataError: if any class has no sample.
    """
    grouped: Dict[ClassLabel, List[np.ndarray]] = defaultdict(list)
    shape = None
    for label, image in labeled_images:
        label = ClassLabel(label)
        if shape is None:
            shape = image.channels.shape
        elif image.channels.shape != shape:
            raise InputDomainError(f"image shape {image.channels.shape} differs from {shape}")
        grouped[label].append(np.asarray(image.channels, dtype=float))

    missing = [label.value for label in CLASS_ORDER if not grouped.get(label)]
    if missing:
        raise TrainingDataError(f"training set has no samples for: {', '.join(missing)}")

    total = sum(len(v) for v in grouped.values())
    means, priors, counts = {}, {}, {}
    for label in CLASS_ORDER:
        samples = sorted(grouped[label], key=lambda a: a.tobytes())
        means[label] = np.mean(np.stack(samples), axis=0)
        counts[label] = len(samples)
        priors[label] = len(samples) / total

    logger.info(f"Trained centroid model on {total} images: " + ", ".join(f"{k.value}={v}" for k, v in counts.items()))
    return CentroidModel(means=means, priors=priors, trained_on=counts, image_shape=list(shape))


def classify(model: CentroidModel, image: FlatImage) -> ClassificationResult:
    """Nearest class mean by Euclidean pixel distance.

    The score is the gap between the two largest softmin probabilities of the
    distances; equal distances resolve to the earlier class in CLASS_ORDER.
    """
    if list(image.channels.shape) != list(model.image_shape):
        raise InputDomainError(f"image shape {image.channels.shape} does not match model {model.image_shape}")
    distances = np.array([np.linalg.norm(image.channels - model.means[label]) for label in CLASS_ORDER])
    best = int(np.argmin(distances))

    logits = -(distances - distances.min())
    probs = np.exp(logits) / np.exp(logits).sum()
    ranked = np.sort(probs)[::-1]
    score = float(ranked[0] - ranked[1]) if len(ranked) > 1 else 1.0

    return ClassificationResult(
        label=CLASS_ORDER[best],
        score=score,
        distance=float(distances[best]),
        distances={label: float(d) for label, d in zip(CLASS_ORDER, distances)},
    )


def confusion_frame(truth: Sequence[ClassLabel], predicted: Sequence[ClassLabel]) -> pd.DataFrame:
    """Rows are true classes, columns predicted classes, in CLASS_ORDER"""
    names = [label.value for label in CLASS_ORDER]
    matrix = confusion_matrix(
        [ClassLabel(t).value for t in truth],
        [ClassLabel(p).value for p in predicted],
        labels=names,
    )
    frame = pd.DataFrame(matrix, index=names, columns=names)
    frame.index.name = "true_class"
    return frame


def accuracy(truth: Sequence[ClassLabel], predicted: Sequence[ClassLabel]) -> float:
    if not truth:
        return 0.0
    return float(np.mean([ClassLabel(t) == ClassLabel(p) for t, p in zip(truth, predicted)]))
