"""Instance-based multilabel classifier using label priors and neighbor counts.

Training estimates, per label, a smoothed prior from the label's frequency
and smoothed conditional distributions of "how many of an instance's nearest
neighbors carry the label" separately for carriers and non-carriers.
Prediction scores a test instance by the posterior odds of those two
hypotheses given its own neighbor count.  This is the standard formulation
of the classic method; it is deterministic (neighbor ties break toward the
lower training index) and uses the same feature-space distance as the
resampling algorithms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import MultiLabelDataset, label_matrix
from .distance import FeatureSpace, nearest_indices
from .evaluation import PredictionSet


@dataclass(frozen=True)
class MLkNNModel:
    """Frozen training state: feature scaling, priors and conditionals."""

    space: FeatureSpace
    train_encoded: tuple[np.ndarray, np.ndarray]
    train_labels: np.ndarray        # (n_train, k) bool
    labels: tuple[str, ...]
    k_nn: int
    smoothing: float
    prior: np.ndarray               # (k,) P(label active)
    cond_active: np.ndarray         # (k, k_nn + 1) P(count | active)
    cond_inactive: np.ndarray       # (k, k_nn + 1) P(count | inactive)


def _neighbor_label_counts(
    y: np.ndarray, distances: np.ndarray, k_nn: int, exclude_self: bool
) -> np.ndarray:
    counts = np.zeros((distances.shape[0], y.shape[1]), dtype=np.int64)
    for i in range(distances.shape[0]):
        neighbors = nearest_indices(distances[i], k_nn, exclude=i if exclude_self else None)
        counts[i] = y[neighbors].sum(axis=0)
    return counts


def mlknn_train(d_train: MultiLabelDataset, k_nn: int = 10, smoothing: float = 1.0) -> MLkNNModel:
    """Fit the model on a training dataset.

    ``smoothing`` is the additive estimate regularizer: 0 gives raw
    frequencies, larger values pull priors toward 1/2 and conditionals
    toward uniform.
    """
    if k_nn < 1:
        raise ValueError("k_nn must be positive")
    if k_nn >= d_train.n:
        raise ValueError(f"k_nn ({k_nn}) must be smaller than the training size ({d_train.n})")
    if smoothing < 0:
        raise ValueError("smoothing must be non-negative")
    space = FeatureSpace(d_train)
    encoded = space.encode(d_train.instances)
    y = label_matrix(d_train)
    n, k = y.shape

    prior = (smoothing + y.sum(axis=0)) / (2 * smoothing + n)

    distances = space.pairwise(encoded)
    neighbor_counts = _neighbor_label_counts(y, distances, k_nn, exclude_self=True)

    def smoothed(histogram: np.ndarray) -> np.ndarray:
        denominator = smoothing * (k_nn + 1) + histogram.sum()
        if denominator == 0:
            # hypothesis never observed and no smoothing: uninformative
            return np.full(k_nn + 1, 1.0 / (k_nn + 1))
        return (smoothing + histogram) / denominator

    cond_active = np.zeros((k, k_nn + 1))
    cond_inactive = np.zeros((k, k_nn + 1))
    for l in range(k):
        active = y[:, l]
        cond_active[l] = smoothed(np.bincount(neighbor_counts[active, l], minlength=k_nn + 1))
        cond_inactive[l] = smoothed(
            np.bincount(neighbor_counts[~active, l], minlength=k_nn + 1)
        )
    return MLkNNModel(
        space=space,
        train_encoded=encoded,
        train_labels=y,
        labels=d_train.labels,
        k_nn=k_nn,
        smoothing=smoothing,
        prior=prior,
        cond_active=cond_active,
        cond_inactive=cond_inactive,
    )


def mlknn_predict(model: MLkNNModel, d_test: MultiLabelDataset) -> PredictionSet:
    """Score every test instance and label; the bipartition keeps scores above 1/2.

    Scores are posterior probabilities in [0, 1]; an exactly even posterior
    resolves to negative.  A doubly-unsupported neighbor count (possible only
    with zero smoothing) scores the uninformative 1/2.
    """
    if d_test.labels != model.labels:
        raise ValueError("test dataset declares different labels than the model")
    if tuple(d_test.attributes) != tuple(model.space.attributes):
        raise ValueError("test dataset schema does not match the model")
    test_encoded = model.space.encode(d_test.instances)
    distances = model.space.pairwise(test_encoded, model.train_encoded)
    neighbor_counts = _neighbor_label_counts(
        model.train_labels, distances, model.k_nn, exclude_self=False
    )

    k = len(model.labels)
    scores = np.zeros((d_test.n, k))
    for l in range(k):
        c = neighbor_counts[:, l]
        p_active = model.prior[l] * model.cond_active[l, c]
        p_inactive = (1 - model.prior[l]) * model.cond_inactive[l, c]
        total = p_active + p_inactive
        scores[:, l] = np.where(total > 0, p_active / np.where(total > 0, total, 1.0), 0.5)
    return PredictionSet(scores=scores, bipartition=scores > 0.5)
