"""Seeded dataset generators for experiments and property suites.

``random_dataset`` draws small unconstrained datasets for oracle and
round-trip testing.  ``imbalanced_dataset`` builds a larger fixture with a
steep label-frequency ramp and deliberate co-occurrence of rare labels with
the frequent ones, so that both the global imbalance and the concurrence
score are high.  ``separable_clusters`` builds an easy two-cluster,
two-label problem for classifier smoke checks.
"""

from __future__ import annotations

import numpy as np

from .dataset import AttributeSpec, Instance, Labelset, MultiLabelDataset


def random_dataset(
    seed: int | np.random.Generator,
    max_n: int = 20,
    max_k: int = 5,
    max_attrs: int = 4,
    allow_missing: bool = True,
    allow_empty_labelsets: bool = True,
    ensure_all_labels: bool = False,
    name: str | None = None,
) -> MultiLabelDataset:
    """One random small dataset with mixed numeric and nominal attributes."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    n = int(rng.integers(1, max_n + 1))
    k = int(rng.integers(1, max_k + 1))
    n_attrs = int(rng.integers(1, max_attrs + 1))

    attributes = []
    for j in range(n_attrs):
        if rng.random() < 0.35:
            size = int(rng.integers(2, 5))
            attributes.append(
                AttributeSpec(name=f"a{j}", values=tuple(f"v{j}_{u}" for u in range(size)))
            )
        else:
            attributes.append(AttributeSpec(name=f"a{j}"))

    instances = []
    for _ in range(n):
        features: list[float | int | None] = []
        for attr in attributes:
            if allow_missing and rng.random() < 0.06:
                features.append(None)
            elif attr.is_nominal:
                features.append(int(rng.integers(0, len(attr.values))))
            else:
                features.append(float(np.round(rng.normal(0, 3), 6)))
        active = [l for l in range(k) if rng.random() < 0.4]
        if not active and not allow_empty_labelsets:
            active = [int(rng.integers(0, k))]
        instances.append(
            Instance(features=tuple(features), labels=Labelset.from_indices(active))
        )

    if ensure_all_labels:
        for l in range(k):
            if not any(l in inst.labels for inst in instances):
                i = int(rng.integers(0, n))
                inst = instances[i]
                instances[i] = Instance(
                    features=inst.features,
                    labels=Labelset(inst.labels.mask | (1 << l)),
                )

    return MultiLabelDataset(
        attributes=tuple(attributes),
        labels=tuple(chr(ord("A") + l) if k <= 26 else f"L{l}" for l in range(k)),
        instances=tuple(instances),
        name=name or f"random-{n}x{k}",
    )


def imbalanced_dataset(
    seed: int,
    n: int = 500,
    k: int = 8,
    n_numeric: int = 6,
    concurrence_rate: float = 0.45,
) -> MultiLabelDataset:
    """High-imbalance, high-concurrence fixture.

    The first two labels are frequent; the rest follow a steep frequency
    ramp and, when drawn, almost always ride along with a frequent label
    (that co-occurrence is what drives the concurrence score up).  Features
    are noisy sums of per-label centroids plus one nominal marker.
    """
    if k < 4:
        raise ValueError("need at least four labels for the frequency ramp")
    rng = np.random.default_rng(seed)
    rare = np.arange(2, k)
    rare_weights = 0.7 ** np.arange(rare.size)
    rare_weights /= rare_weights.sum()
    centroids = rng.uniform(-3, 3, size=(k, n_numeric))

    instances = []
    for _ in range(n):
        active = set()
        if rng.random() < 0.80:
            active.add(0)
        if rng.random() < 0.45:
            active.add(1)
        if rng.random() < concurrence_rate:
            active.add(int(rng.choice(rare, p=rare_weights)))
            if rng.random() < 0.25:
                active.add(int(rng.choice(rare, p=rare_weights)))
            if not active & {0, 1} and rng.random() < 0.9:
                active.add(0)
        if not active:
            active.add(0)
        ordered = sorted(active)
        mean = centroids[ordered].mean(axis=0)
        values = rng.normal(mean, 0.6)
        features = tuple(float(v) for v in values) + (int(min(ordered) % 3),)
        instances.append(
            Instance(features=features, labels=Labelset.from_indices(ordered))
        )

    # Rare tail labels can miss small samples entirely; pin a floor of two
    # occurrences so every label keeps a defined imbalance ratio.
    for l in range(k):
        holders = sum(1 for inst in instances if l in inst.labels)
        need = 2 - holders
        for _ in range(max(0, need)):
            i = int(rng.integers(0, n))
            inst = instances[i]
            instances[i] = Instance(
                features=inst.features, labels=Labelset(inst.labels.mask | (1 << l) | 1)
            )

    attributes = tuple(AttributeSpec(name=f"x{j}") for j in range(n_numeric)) + (
        AttributeSpec(name="group", values=("g0", "g1", "g2")),
    )
    return MultiLabelDataset(
        attributes=attributes,
        labels=tuple(f"L{l}" for l in range(k)),
        instances=tuple(instances),
        name=f"synthetic-imbalanced-{seed}",
    )


def separable_clusters(
    seed: int, n_train_per: int = 20, n_test_per: int = 5
) -> tuple[MultiLabelDataset, MultiLabelDataset]:
    """(train, test) pair of two widely separated single-label clusters."""
    rng = np.random.default_rng(seed)
    attributes = (AttributeSpec(name="x0"), AttributeSpec(name="x1"))
    labels = ("left", "right")

    def draw(count: int, center: float, label: int) -> list[Instance]:
        out = []
        for _ in range(count):
            point = rng.normal(center, 0.3, size=2)
            out.append(
                Instance(
                    features=(float(point[0]), float(point[1])),
                    labels=Labelset.from_indices([label]),
                )
            )
        return out

    train = draw(n_train_per, -5.0, 0) + draw(n_train_per, 5.0, 1)
    test = draw(n_test_per, -5.0, 0) + draw(n_test_per, 5.0, 1)
    return (
        MultiLabelDataset(attributes, labels, tuple(train), name="clusters-train"),
        MultiLabelDataset(attributes, labels, tuple(test), name="clusters-test"),
    )
