"""Feature-space geometry shared by the neighbor-based algorithms.

Numeric attributes are min-max scaled to the reference dataset's observed
range and compared by squared difference; nominal attributes contribute 0
when equal and 1 otherwise; a missing value is maximally distant (term 1)
from everything, including another missing value.  The distance is the
Euclidean norm over the per-attribute terms.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .dataset import Instance, MultiLabelDataset


class FeatureSpace:
    """Precomputed scaling for one attribute schema, anchored to a reference dataset."""

    def __init__(self, reference: MultiLabelDataset):
        self.attributes = reference.attributes
        self._numeric = [i for i, a in enumerate(self.attributes) if not a.is_nominal]
        self._nominal = [i for i, a in enumerate(self.attributes) if a.is_nominal]
        mins = np.zeros(len(self._numeric))
        spans = np.ones(len(self._numeric))
        for col, attr_idx in enumerate(self._numeric):
            values = [
                inst.features[attr_idx]
                for inst in reference.instances
                if inst.features[attr_idx] is not None
            ]
            if values:
                lo, hi = min(values), max(values)
                mins[col] = lo
                if hi > lo:
                    spans[col] = hi - lo
        self._mins = mins
        self._spans = spans

    def encode(self, instances: Sequence[Instance]) -> tuple[np.ndarray, np.ndarray]:
        """Scaled numeric matrix (NaN = missing) and nominal code matrix (-1 = missing)."""
        n = len(instances)
        numeric = np.full((n, len(self._numeric)), np.nan)
        nominal = np.full((n, len(self._nominal)), -1, dtype=np.int64)
        for row, inst in enumerate(instances):
            for col, attr_idx in enumerate(self._numeric):
                v = inst.features[attr_idx]
                if v is not None:
                    numeric[row, col] = (v - self._mins[col]) / self._spans[col]
            for col, attr_idx in enumerate(self._nominal):
                v = inst.features[attr_idx]
                if v is not None:
                    nominal[row, col] = v
        return numeric, nominal

    def pairwise(
        self,
        a: tuple[np.ndarray, np.ndarray],
        b: tuple[np.ndarray, np.ndarray] | None = None,
    ) -> np.ndarray:
        """Distance matrix between two encoded instance blocks (or one with itself)."""
        a_num, a_nom = a
        b_num, b_nom = a if b is None else b
        total = np.zeros((a_num.shape[0], b_num.shape[0]))
        for col in range(a_num.shape[1]):
            diff = a_num[:, col, None] - b_num[None, :, col]
            term = diff * diff
            total += np.where(np.isnan(term), 1.0, term)
        for col in range(a_nom.shape[1]):
            av = a_nom[:, col, None]
            bv = b_nom[None, :, col]
            total += ((av != bv) | (av < 0) | (bv < 0)).astype(float)
        return np.sqrt(total)


def nearest_indices(distances: np.ndarray, count: int, exclude: int | None = None) -> list[int]:
    """Indices of the ``count`` smallest entries, ties broken by lower index."""
    order = np.lexsort((np.arange(distances.shape[0]), distances))
    picked = []
    for idx in order:
        if exclude is not None and idx == exclude:
            continue
        picked.append(int(idx))
        if len(picked) == count:
            break
    return picked


def pairwise_distances(d: MultiLabelDataset) -> np.ndarray:
    """All-pairs distance matrix of one dataset, scaled to its own ranges."""
    space = FeatureSpace(d)
    encoded = space.encode(d.instances)
    return space.pairwise(encoded)
