"""Example-based evaluation metrics for multilabel predictions.

All six metrics live in [0, 1].  Degenerate cases follow fixed conventions:

* instances predicting no label contribute 0 to the precision mean, and
  instances with an empty true labelset contribute 0 to recall; both counts
  are surfaced on the report;
* ranking loss skips instances whose true labelset is empty or full (their
  pair set is empty) and is 0 when every instance is skipped;
* the ranking AUC uses a greater-or-equal comparator, so a degenerate
  all-equal score matrix scores 1.  This deliberately differs from
  tie-splitting AUC conventions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PredictionSet:
    """Per-instance per-label confidence scores plus thresholded decisions."""

    scores: np.ndarray
    bipartition: np.ndarray

    def __post_init__(self):
        scores = np.asarray(self.scores, dtype=float)
        bipartition = np.asarray(self.bipartition, dtype=bool)
        if scores.ndim != 2 or bipartition.shape != scores.shape:
            raise ValueError("scores and bipartition must be matching 2-D matrices")
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "bipartition", bipartition)


@dataclass(frozen=True)
class EvaluationReport:
    """The six metric values, plus how many degenerate terms were zeroed."""

    hamming_loss: float
    ranking_loss: float
    precision: float
    recall: float
    f_measure: float
    auc: float
    empty_predictions: int = 0
    empty_truths: int = 0

    def to_dict(self) -> dict:
        return {
            "hamming_loss": self.hamming_loss,
            "ranking_loss": self.ranking_loss,
            "precision": self.precision,
            "recall": self.recall,
            "f_measure": self.f_measure,
            "auc": self.auc,
            "empty_predictions": self.empty_predictions,
            "empty_truths": self.empty_truths,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _check(truth: np.ndarray, pred: PredictionSet) -> np.ndarray:
    truth = np.asarray(truth, dtype=bool)
    if truth.shape != pred.scores.shape:
        raise ValueError(
            f"truth shape {truth.shape} does not match predictions {pred.scores.shape}"
        )
    if truth.size == 0:
        raise ValueError("cannot evaluate an empty prediction set")
    return truth


def hamming_loss(truth: np.ndarray, pred: PredictionSet) -> float:
    """Fraction of label assignments that disagree with the truth."""
    truth = _check(truth, pred)
    return float(np.mean(truth ^ pred.bipartition))


def precision(truth: np.ndarray, pred: PredictionSet) -> float:
    """Mean per-instance fraction of predicted labels that are true."""
    truth = _check(truth, pred)
    hits = (truth & pred.bipartition).sum(axis=1)
    predicted = pred.bipartition.sum(axis=1)
    terms = np.where(predicted > 0, hits / np.maximum(predicted, 1), 0.0)
    return float(np.mean(terms))


def recall(truth: np.ndarray, pred: PredictionSet) -> float:
    """Mean per-instance fraction of true labels that were predicted."""
    truth = _check(truth, pred)
    hits = (truth & pred.bipartition).sum(axis=1)
    actual = truth.sum(axis=1)
    terms = np.where(actual > 0, hits / np.maximum(actual, 1), 0.0)
    return float(np.mean(terms))


def f_measure(truth: np.ndarray, pred: PredictionSet) -> float:
    """Harmonic mean of precision and recall (0 when both are 0)."""
    p = precision(truth, pred)
    r = recall(truth, pred)
    if p + r == 0:
        return 0.0
    return 2 * p * r / (p + r)


def ranking_loss(truth: np.ndarray, pred: PredictionSet) -> float:
    """Fraction of (relevant, irrelevant) label pairs ranked the wrong way round.

    A pair counts when the irrelevant label scores strictly above the
    relevant one.  Instances with an empty or full true labelset have no
    pairs and are excluded from the average.
    """
    truth = _check(truth, pred)
    per_instance = []
    for i in range(truth.shape[0]):
        relevant = pred.scores[i, truth[i]]
        irrelevant = pred.scores[i, ~truth[i]]
        if relevant.size == 0 or irrelevant.size == 0:
            continue
        ordered = np.sort(irrelevant, kind="stable")
        above = irrelevant.size - np.searchsorted(ordered, relevant, side="right")
        per_instance.append(above.sum() / (relevant.size * irrelevant.size))
    if not per_instance:
        return 0.0
    return float(np.mean(per_instance))


def micro_auc(truth: np.ndarray, pred: PredictionSet) -> float:
    """Fraction of (positive, negative) assignment pairs with score(pos) >= score(neg).

    Pairs range over the whole matrix, not per instance.  With no positives
    or no negatives the pair set is empty and the result is 1.
    """
    truth = _check(truth, pred)
    positive = np.sort(pred.scores[truth], kind="stable")
    negative = pred.scores[~truth]
    if positive.size == 0 or negative.size == 0:
        return 1.0
    at_least = positive.size - np.searchsorted(positive, negative, side="left")
    return float(at_least.sum() / (positive.size * negative.size))


def evaluate(truth: np.ndarray, pred: PredictionSet) -> EvaluationReport:
    """Bundle all six metrics for one prediction set."""
    truth = _check(truth, pred)
    return EvaluationReport(
        hamming_loss=hamming_loss(truth, pred),
        ranking_loss=ranking_loss(truth, pred),
        precision=precision(truth, pred),
        recall=recall(truth, pred),
        f_measure=f_measure(truth, pred),
        auc=micro_auc(truth, pred),
        empty_predictions=int((pred.bipartition.sum(axis=1) == 0).sum()),
        empty_truths=int((truth.sum(axis=1) == 0).sum()),
    )
