import pytest
from hypothesis import strategies as st

from mlresample import AttributeSpec, Instance, Labelset, MultiLabelDataset


def make_dataset(attrs, labels, rows, name="fixture"):
    """Compact dataset builder: rows are (features tuple, label index list)."""
    instances = tuple(
        Instance(features=tuple(f), labels=Labelset.from_indices(ls)) for f, ls in rows
    )
    return MultiLabelDataset(tuple(attrs), tuple(labels), instances, name=name)


@pytest.fixture
def toy6():
    """Six instances over labels A, B, C with labelsets {A}x3, {A,B}, {B}, {A,C}."""
    attrs = (AttributeSpec("f0"), AttributeSpec("color", values=("red", "blue")))
    return make_dataset(
        attrs,
        ("A", "B", "C"),
        [
            ((0.0, 0), [0]),
            ((1.0, 1), [0]),
            ((2.0, 0), [0]),
            ((3.0, 1), [0, 1]),
            ((4.0, 0), [1]),
            ((5.0, 1), [0, 2]),
        ],
        name="toy6",
    )


@st.composite
def datasets(
    draw,
    max_n=20,
    max_k=5,
    max_attrs=4,
    allow_missing=True,
    allow_empty_labelsets=True,
    ensure_all_labels=False,
    quotable_names=False,
):
    k = draw(st.integers(1, max_k))
    n = draw(st.integers(max(1, k) if ensure_all_labels else 1, max_n))
    n_attrs = draw(st.integers(1, max_attrs))

    name_alphabet = "abc_0 -" if quotable_names else "abc_0"
    attrs = []
    for j in range(n_attrs):
        if draw(st.booleans()):
            size = draw(st.integers(2, 4))
            attrs.append(
                AttributeSpec(name=f"a{j}", values=tuple(f"v{j}_{u}" for u in range(size)))
            )
        else:
            suffix = draw(st.text(alphabet=name_alphabet, min_size=0, max_size=4)).strip()
            attrs.append(AttributeSpec(name=f"a{j}{suffix}" if suffix else f"a{j}"))

    finite = st.floats(allow_nan=False, allow_infinity=False, width=64)
    rows = []
    for _ in range(n):
        features = []
        for attr in attrs:
            if allow_missing and draw(st.integers(0, 9)) == 0:
                features.append(None)
            elif attr.is_nominal:
                features.append(draw(st.integers(0, len(attr.values) - 1)))
            else:
                features.append(draw(finite))
        active = draw(
            st.sets(st.integers(0, k - 1), min_size=0 if allow_empty_labelsets else 1)
        )
        rows.append((tuple(features), sorted(active)))

    if ensure_all_labels:
        missing = [l for l in range(k) if not any(l in ls for _, ls in rows)]
        for i, l in enumerate(missing):
            features, ls = rows[i % n]
            rows[i % n] = (features, sorted(set(ls) | {l}))

    labels = tuple(chr(ord("A") + l) for l in range(k))
    return make_dataset(attrs, labels, rows, name="generated")


def write_dataset_files(d, directory, stem="data"):
    """Write a MULAN pair into directory, returning (arff_path, xml_path)."""
    from mlresample import write_mulan

    arff_text, xml_text = write_mulan(d)
    arff_path = directory / f"{stem}.arff"
    xml_path = directory / f"{stem}.xml"
    arff_path.write_text(arff_text)
    xml_path.write_text(xml_text)
    return arff_path, xml_path
