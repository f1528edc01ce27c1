"""Imbalance and label-concurrence characterization of multilabel datasets.

The suite covers label cardinality and density, the per-label imbalance
ratio (IRLbl) and its mean (MeanIR), the concurrence score between minority
and majority labels (SCUMBLE, globally and per instance), the theoretical
complexity score (TCS) and the distinct-labelset count.

Conventions for degenerate inputs:

* A label active in no instance has an undefined IRLbl.  ``irlbl`` and
  ``mean_ir`` raise :class:`UndefinedIRLblError`; ``profile`` marks such
  labels with ``None`` and averages MeanIR over the defined entries only.
* Instances with zero or one active label have SCUMBLE_ins 0, and empty
  labelsets contribute 0 to Card.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .dataset import MultiLabelDataset, label_counts


class UndefinedIRLblError(ValueError):
    """IRLbl requested for a label that never occurs (division by zero)."""


class ImbalanceSummary(NamedTuple):
    """Shared intermediate state: counts, nan-marked IRLbl and defined-mean IR."""

    counts: np.ndarray
    irlbl: np.ndarray
    mean_ir: float


def _require_instances(d: MultiLabelDataset) -> None:
    if d.n < 1:
        raise ValueError("metric requires a dataset with at least one instance")


def imbalance_summary(d: MultiLabelDataset) -> ImbalanceSummary:
    """Counts, IRLbl per label (NaN where undefined) and MeanIR over defined labels."""
    _require_instances(d)
    counts = label_counts(d)
    irlbl = np.full(d.k, np.nan)
    max_count = counts.max() if d.k else 0
    defined = counts > 0
    if max_count > 0:
        irlbl[defined] = max_count / counts[defined]
    mean = float(np.mean(irlbl[defined])) if defined.any() else float("nan")
    return ImbalanceSummary(counts=counts, irlbl=irlbl, mean_ir=mean)


def card(d: MultiLabelDataset) -> float:
    """Mean labelset size."""
    _require_instances(d)
    return sum(len(inst.labels) for inst in d.instances) / d.n


def dens(d: MultiLabelDataset) -> float:
    """Label cardinality normalized by the number of labels."""
    if d.k < 1:
        raise ValueError("density requires at least one label")
    return card(d) / d.k


def irlbl(d: MultiLabelDataset, label: int) -> float:
    """Imbalance ratio of one label: most frequent label's count over this one's.

    The most frequent label scores exactly 1; rarer labels score higher.
    """
    _require_instances(d)
    if not 0 <= label < d.k:
        raise ValueError(f"label index {label} out of range")
    counts = label_counts(d)
    if counts[label] == 0:
        raise UndefinedIRLblError(
            f"IRLbl undefined for label {d.labels[label]!r}: it never occurs"
        )
    return float(counts.max() / counts[label])


def mean_ir(d: MultiLabelDataset) -> float:
    """Average IRLbl over all labels; raises if any label has no occurrences."""
    _require_instances(d)
    counts = label_counts(d)
    zero = np.flatnonzero(counts == 0)
    if zero.size:
        names = [d.labels[i] for i in zero]
        raise UndefinedIRLblError(f"IRLbl undefined for zero-count labels: {names}")
    return float(np.mean(counts.max() / counts))


def _scumble_one(active_irlbl: list[float]) -> float:
    if len(active_irlbl) <= 1:
        return 0.0
    logs = [math.log(v) for v in active_irlbl]
    geometric = math.exp(sum(logs) / len(logs))
    arithmetic = sum(active_irlbl) / len(active_irlbl)
    # AM-GM keeps this in [0, 1]; the max() guards the floating-point edge.
    return max(0.0, 1.0 - geometric / arithmetic)


def scumble_values(d: MultiLabelDataset) -> np.ndarray:
    """Per-instance concurrence scores, in instance order."""
    summary = imbalance_summary(d)
    out = np.zeros(d.n)
    for i, inst in enumerate(d.instances):
        out[i] = _scumble_one([float(summary.irlbl[l]) for l in inst.labels])
    return out


def scumble_ins(d: MultiLabelDataset, i: int) -> float:
    """Concurrence score of one instance.

    One minus the ratio of geometric to arithmetic mean of the IRLbl values
    of the instance's active labels; 0 for instances with fewer than two
    active labels.
    """
    if not 0 <= i < d.n:
        raise ValueError(f"instance index {i} out of range")
    return float(scumble_values(d)[i])


def scumble(d: MultiLabelDataset) -> float:
    """Dataset concurrence score: mean of the per-instance scores."""
    return float(np.mean(scumble_values(d)))


def distinct_labelsets(d: MultiLabelDataset) -> int:
    """Number of distinct label combinations present."""
    _require_instances(d)
    return len({inst.labels.mask for inst in d.instances})


def tcs_from_counts(attributes: int, labels: int, labelsets: int) -> float:
    """Theoretical complexity score from raw counts: ln(attributes * labels * labelsets)."""
    if attributes < 1 or labels < 1 or labelsets < 1:
        raise ValueError("TCS requires all three factors to be >= 1")
    return math.log(attributes) + math.log(labels) + math.log(labelsets)


def tcs(d: MultiLabelDataset) -> float:
    """Theoretical complexity score of a dataset."""
    return tcs_from_counts(len(d.attributes), d.k, distinct_labelsets(d))


@dataclass(frozen=True)
class ImbalanceProfile:
    """Full characterization of one dataset.

    ``irlbl`` holds ``None`` for labels that never occur; those labels are
    excluded from ``mean_ir``.
    """

    card: float
    dens: float
    irlbl: tuple[float | None, ...]
    mean_ir: float
    scumble: float
    scumble_ins: tuple[float, ...]
    tcs: float
    distinct_labelsets: int

    @property
    def undefined_labels(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.irlbl) if v is None)

    def to_dict(self) -> dict:
        return {
            "card": self.card,
            "dens": self.dens,
            "irlbl": list(self.irlbl),
            "mean_ir": self.mean_ir,
            "scumble": self.scumble,
            "scumble_ins": list(self.scumble_ins),
            "tcs": self.tcs,
            "distinct_labelsets": self.distinct_labelsets,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def profile(d: MultiLabelDataset) -> ImbalanceProfile:
    """Compute every metric of the suite in one pass."""
    summary = imbalance_summary(d)
    per_label = tuple(None if math.isnan(v) else float(v) for v in summary.irlbl)
    s_values = scumble_values(d)
    return ImbalanceProfile(
        card=card(d),
        dens=dens(d),
        irlbl=per_label,
        mean_ir=summary.mean_ir,
        scumble=float(np.mean(s_values)),
        scumble_ins=tuple(float(v) for v in s_values),
        tcs=tcs(d),
        distinct_labelsets=distinct_labelsets(d),
    )


@dataclass(frozen=True)
class ConcurrenceRow:
    """Co-occurrence of one label pair, with each label's imbalance ratio."""

    label_a: str
    label_b: str
    count: int
    irlbl_a: float
    irlbl_b: float


def co_occurrence_count(d: MultiLabelDataset, label_a: int, label_b: int) -> int:
    """Number of instances in which both labels are active (symmetric)."""
    return sum(1 for inst in d.instances if label_a in inst.labels and label_b in inst.labels)


def concurrence_export(
    d: MultiLabelDataset, top_majority: int, top_minority: int
) -> tuple[ConcurrenceRow, ...]:
    """Plot-ready co-occurrence table over the most and least frequent labels.

    Selects the ``top_majority`` most frequent and ``top_minority`` least
    frequent labels (zero-count labels excluded, ties broken by label index),
    then emits one row per unordered pair of selected labels, sorted by joint
    count descending with a stable pair-index order.
    """
    if top_majority < 0 or top_minority < 0:
        raise ValueError("top counts must be non-negative")
    if top_majority > d.k or top_minority > d.k:
        raise ValueError("top counts cannot exceed the number of labels")
    summary = imbalance_summary(d)
    occurring = [l for l in range(d.k) if summary.counts[l] > 0]
    majority = sorted(occurring, key=lambda l: (-summary.counts[l], l))[:top_majority]
    minority = sorted(occurring, key=lambda l: (summary.counts[l], l))[:top_minority]
    selected = sorted(set(majority) | set(minority))
    rows = []
    for i, a in enumerate(selected):
        for b in selected[i + 1 :]:
            rows.append(
                ConcurrenceRow(
                    label_a=d.labels[a],
                    label_b=d.labels[b],
                    count=co_occurrence_count(d, a, b),
                    irlbl_a=float(summary.irlbl[a]),
                    irlbl_b=float(summary.irlbl[b]),
                )
            )
    rows.sort(key=lambda r: -r.count)
    return tuple(rows)


def concurrence_csv(rows: tuple[ConcurrenceRow, ...]) -> str:
    """CSV serialization of a concurrence table."""
    lines = ["label_a,label_b,count,irlbl_a,irlbl_b"]
    for r in rows:
        lines.append(f"{r.label_a},{r.label_b},{r.count},{r.irlbl_a!r},{r.irlbl_b!r}")
    return "\n".join(lines) + "\n"
