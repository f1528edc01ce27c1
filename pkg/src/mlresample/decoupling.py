"""Label decoupling for instances where minority and majority labels concur.

``remedial`` splits every instance whose per-instance concurrence score
exceeds a threshold into two instances sharing the feature vector: the
original keeps the minority labels (IRLbl above the dataset IRLbl mean), an
appended clone keeps the majority labels.  The threshold is either the mean
of the per-instance scores or a chosen quantile of them.  ``hybrid_resample``
chains the decoupling with one of the base resamplers, which then operates on
the decoupled dataset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dataset import Instance, Labelset, MultiLabelDataset
from .metrics import imbalance_summary, profile, scumble, scumble_values
from .resampling import AddedInstance, ResampleConfig, ResampleReport, resample

PERCENTILE_PRESETS = (0.25, 0.37, 0.50, 0.62, 0.75)


@dataclass(frozen=True)
class DecoupleConfig:
    """Threshold choice for the decoupling pass.

    ``mode`` is ``"mean"`` (threshold = dataset concurrence score) or
    ``"percentile"`` with ``q`` in (0, 1); the study presets live in
    :data:`PERCENTILE_PRESETS`.  With ``drop_empty`` a split side that ends
    up with no labels is discarded instead of kept.
    """

    mode: str = "mean"
    q: float | None = None
    drop_empty: bool = False

    def __post_init__(self):
        if self.mode not in ("mean", "percentile"):
            raise ValueError(f"unknown threshold mode {self.mode!r}")
        if self.mode == "percentile":
            if self.q is None or not 0 < self.q < 1:
                raise ValueError("percentile mode needs q in (0, 1)")
        elif self.q is not None:
            raise ValueError("mean mode takes no quantile")

    @classmethod
    def from_spec(cls, text: str, drop_empty: bool = False) -> DecoupleConfig:
        """Parse ``"mean"`` or ``"pNN"`` (NN percent, e.g. ``p25``)."""
        if text == "mean":
            return cls(drop_empty=drop_empty)
        if text.startswith("p") and text[1:].isdigit():
            q = int(text[1:]) / 100.0
            if 0 < q < 1:
                return cls(mode="percentile", q=q, drop_empty=drop_empty)
        raise ValueError(f"bad decoupling threshold {text!r} (expected 'mean' or 'pNN')")

    def spec_string(self) -> str:
        if self.mode == "mean":
            return "mean"
        return f"p{round(self.q * 100):02d}"


@dataclass(frozen=True)
class HybridConfig:
    """Decoupling stage followed by a resampling stage."""

    decouple: DecoupleConfig
    resample: ResampleConfig


def nearest_rank_quantile(values: np.ndarray, q: float) -> float:
    """Inclusive nearest-rank quantile: the ceil(q*n)-th smallest value."""
    if values.size == 0:
        raise ValueError("quantile of an empty vector")
    if not 0 < q < 1:
        raise ValueError("q must be in (0, 1)")
    rank = max(1, math.ceil(q * values.size))
    return float(np.sort(values, kind="stable")[rank - 1])


def remedial(
    d: MultiLabelDataset, config: DecoupleConfig = DecoupleConfig()
) -> tuple[MultiLabelDataset, ResampleReport]:
    """Split high-concurrence instances into a minority and a majority copy.

    IRLbl, its mean and the per-instance scores are computed once on the
    input.  Instances scoring strictly above the threshold are split in
    place: the original keeps labels with IRLbl above the mean, the appended
    clone keeps the rest.  Untouched instances pass through bit-identical and
    in order.  Deterministic; no randomness involved.
    """
    if d.n < 1:
        raise ValueError("cannot decouple an empty dataset")
    summary = imbalance_summary(d)
    scores = scumble_values(d)
    if config.mode == "mean":
        threshold = scumble(d)
    else:
        threshold = nearest_rank_quantile(scores, config.q)
    minority_mask = Labelset.from_indices(
        l for l in range(d.k) if summary.counts[l] > 0 and summary.irlbl[l] > summary.mean_ir
    )

    kept: list[Instance] = []
    appended: list[Instance] = []
    added: list[AddedInstance] = []
    removed: list[int] = []
    decoupled: list[int] = []
    for i, inst in enumerate(d.instances):
        if not scores[i] > threshold:
            kept.append(inst)
            continue
        decoupled.append(i)
        minority_side = inst.labels & minority_mask
        majority_side = inst.labels - minority_mask
        if config.drop_empty and not minority_side:
            removed.append(i)
        else:
            kept.append(Instance(features=inst.features, labels=minority_side))
        if not (config.drop_empty and not majority_side):
            appended.append(Instance(features=inst.features, labels=majority_side))
            added.append(AddedInstance(kind="clone", source=i))
    out = d.replace_instances(kept + appended)
    return out, ResampleReport(
        instances_before=d.n,
        instances_after=out.n,
        added=tuple(added),
        removed=tuple(removed),
        profile_before=profile(d),
        profile_after=profile(out),
        decoupled=tuple(decoupled),
    )


def hybrid_resample(
    d: MultiLabelDataset, config: HybridConfig
) -> tuple[MultiLabelDataset, ResampleReport]:
    """Decouple, then resample the decoupled dataset.

    The resampler sees the decoupled dataset, so its minority bags follow the
    decoupled IRLbl/MeanIR.  The combined report chains both stage records;
    stage indices refer to the dataset each stage ran on.
    """
    decoupled_d, first = remedial(d, config.decouple)
    out, second = resample(decoupled_d, config.resample)
    report = ResampleReport(
        instances_before=d.n,
        instances_after=out.n,
        added=first.added + second.added,
        removed=first.removed + second.removed,
        profile_before=first.profile_before,
        profile_after=second.profile_after,
        decoupled=first.decoupled,
        stages=(first, second),
    )
    return out, report
