"""Core data model for multilabel datasets.

A dataset couples a feature schema (numeric and nominal attributes) with an
ordered global label list and a sequence of instances.  Feature values are
plain Python scalars: ``float`` for numeric attributes, ``int`` (index into
the attribute's declared value list) for nominal attributes, ``None`` for a
missing value.  Labelsets are integer bitmasks, so set operations on label
collections stay cheap even for datasets with hundreds of labels.

Datasets are immutable after construction; every operation over them is a
pure function and safe to run concurrently.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

import numpy as np

FeatureValue = float | int | None


@dataclass(frozen=True)
class AttributeSpec:
    """Schema of one input attribute.

    ``values`` is ``None`` for a numeric attribute and the ordered tuple of
    declared symbols for a nominal one.
    """

    name: str
    values: tuple[str, ...] | None = None

    def __post_init__(self):
        if not self.name:
            raise ValueError("attribute name must be non-empty")
        if self.values is not None:
            if len(self.values) == 0:
                raise ValueError(f"nominal attribute {self.name!r} declares no values")
            if len(set(self.values)) != len(self.values):
                raise ValueError(f"nominal attribute {self.name!r} declares duplicate values")

    @property
    def is_nominal(self) -> bool:
        return self.values is not None


@dataclass(frozen=True, order=True)
class Labelset:
    """Set of active label indices stored as a bitmask."""

    mask: int = 0

    def __post_init__(self):
        if self.mask < 0:
            raise ValueError("labelset mask must be non-negative")

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> Labelset:
        mask = 0
        for i in indices:
            if i < 0:
                raise ValueError(f"negative label index {i}")
            mask |= 1 << i
        return cls(mask)

    @property
    def indices(self) -> tuple[int, ...]:
        out = []
        mask = self.mask
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return tuple(out)

    @property
    def active(self) -> frozenset[int]:
        return frozenset(self.indices)

    def __contains__(self, index: int) -> bool:
        return bool(self.mask >> index & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __or__(self, other: Labelset) -> Labelset:
        return Labelset(self.mask | other.mask)

    def __and__(self, other: Labelset) -> Labelset:
        return Labelset(self.mask & other.mask)

    def __sub__(self, other: Labelset) -> Labelset:
        return Labelset(self.mask & ~other.mask)

    def hamming(self, other: Labelset) -> int:
        """Number of labels active in exactly one of the two sets."""
        return (self.mask ^ other.mask).bit_count()

    def union_size(self, other: Labelset) -> int:
        return (self.mask | other.mask).bit_count()


@dataclass(frozen=True)
class Instance:
    """One data pattern: a feature vector plus its labelset."""

    features: tuple[FeatureValue, ...]
    labels: Labelset


def _check_instance(inst: Instance, attributes: tuple[AttributeSpec, ...], k: int, where: str) -> None:
    if len(inst.features) != len(attributes):
        raise ValueError(
            f"{where}: expected {len(attributes)} feature values, got {len(inst.features)}"
        )
    for attr, value in zip(attributes, inst.features):
        if value is None:
            continue
        if attr.is_nominal:
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValueError(f"{where}: nominal attribute {attr.name!r} needs an int index")
            if not 0 <= value < len(attr.values):
                raise ValueError(
                    f"{where}: nominal index {value} out of range for attribute {attr.name!r}"
                )
        elif not isinstance(value, float):
            raise ValueError(f"{where}: numeric attribute {attr.name!r} needs a float")
    if inst.labels.mask >> k:
        raise ValueError(f"{where}: labelset references a label index >= {k}")


@dataclass(frozen=True)
class MultiLabelDataset:
    """Immutable multilabel dataset.

    Attributes appear in declaration order, labels in header order.  Empty
    labelsets are accepted (some benchmark datasets contain them); metric
    operations define their contribution explicitly.
    """

    attributes: tuple[AttributeSpec, ...]
    labels: tuple[str, ...]
    instances: tuple[Instance, ...]
    name: str = "unnamed"

    def __post_init__(self):
        attr_names = [a.name for a in self.attributes]
        if len(set(attr_names)) != len(attr_names):
            raise ValueError("duplicate attribute names")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate label names")
        overlap = set(attr_names) & set(self.labels)
        if overlap:
            raise ValueError(f"names used both as attribute and label: {sorted(overlap)}")
        k = len(self.labels)
        for i, inst in enumerate(self.instances):
            _check_instance(inst, self.attributes, k, f"instance {i}")

    @property
    def n(self) -> int:
        return len(self.instances)

    @property
    def k(self) -> int:
        return len(self.labels)

    def replace_instances(
        self, instances: Iterable[Instance], name: str | None = None
    ) -> MultiLabelDataset:
        """New dataset with the same schema but different instances."""
        return MultiLabelDataset(
            attributes=self.attributes,
            labels=self.labels,
            instances=tuple(instances),
            name=self.name if name is None else name,
        )

    def subset(self, indices: Iterable[int], name: str | None = None) -> MultiLabelDataset:
        """New dataset keeping the given instances, in the given order."""
        return self.replace_instances((self.instances[i] for i in indices), name=name)


def label_counts(d: MultiLabelDataset) -> np.ndarray:
    """Per-label number of instances in which the label is active."""
    counts = np.zeros(d.k, dtype=np.int64)
    for inst in d.instances:
        for l in inst.labels:
            counts[l] += 1
    return counts


def label_matrix(d: MultiLabelDataset) -> np.ndarray:
    """Binary label assignment matrix of shape (n, k)."""
    out = np.zeros((d.n, d.k), dtype=bool)
    for i, inst in enumerate(d.instances):
        for l in inst.labels:
            out[i, l] = True
    return out
