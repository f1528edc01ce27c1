"""Reading and writing the MULAN dataset format (ARFF data + XML label header).

Supported ARFF subset: ``@relation``, ``@attribute <name> numeric`` (also the
``real``/``integer`` aliases) and ``@attribute <name> {v1,...}`` nominal
declarations, dense comma-separated rows, sparse ``{index value, ...}`` rows,
``?`` for missing values and full-line ``%`` comments.  String and date
attributes are out of scope.

The XML header lists the label attributes; nested label hierarchies are
flattened to their name list in document order.  Label columns must hold 0/1.
"""

from __future__ import annotations

import xml.etree.ElementTree as ElementTree

from .dataset import AttributeSpec, FeatureValue, Instance, Labelset, MultiLabelDataset

_NUMERIC_KINDS = {"numeric", "real", "integer"}


class MulanFormatError(ValueError):
    """Malformed ARFF text or XML label header; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _unquote(token: str) -> str:
    if len(token) >= 2 and token[0] == token[-1] and token[0] in "'\"":
        return token[1:-1]
    return token


def _split_respecting_quotes(text: str, sep: str, line_no: int) -> list[str]:
    """Split on ``sep`` outside quoted regions; tokens come back stripped."""
    parts: list[str] = []
    buf: list[str] = []
    quote: str | None = None
    for ch in text:
        if quote is not None:
            buf.append(ch)
            if ch == quote:
                quote = None
        elif ch in "'\"":
            quote = ch
            buf.append(ch)
        elif ch == sep:
            parts.append("".join(buf).strip())
            buf = []
        else:
            buf.append(ch)
    if quote is not None:
        raise MulanFormatError("unterminated quote", line_no)
    parts.append("".join(buf).strip())
    return parts


def _take_token(text: str, line_no: int) -> tuple[str, str]:
    """Split off one (possibly quoted) leading token, returning (token, rest)."""
    text = text.lstrip()
    if not text:
        raise MulanFormatError("missing token", line_no)
    if text[0] in "'\"":
        quote = text[0]
        end = text.find(quote, 1)
        if end < 0:
            raise MulanFormatError("unterminated quote", line_no)
        return text[1:end], text[end + 1 :]
    for i, ch in enumerate(text):
        if ch.isspace():
            return text[:i], text[i:]
    return text, ""


def _parse_attribute(rest: str, line_no: int) -> AttributeSpec:
    name, remainder = _take_token(rest, line_no)
    kind = remainder.strip()
    if not kind:
        raise MulanFormatError(f"attribute {name!r} has no type", line_no)
    if kind.startswith("{"):
        if not kind.endswith("}"):
            raise MulanFormatError(f"attribute {name!r}: unterminated value list", line_no)
        raw = _split_respecting_quotes(kind[1:-1], ",", line_no)
        values = tuple(_unquote(v) for v in raw)
        if any(v == "" for v in values):
            raise MulanFormatError(f"attribute {name!r}: empty nominal value", line_no)
        try:
            return AttributeSpec(name=name, values=values)
        except ValueError as exc:
            raise MulanFormatError(str(exc), line_no) from exc
    if kind.lower() in _NUMERIC_KINDS:
        return AttributeSpec(name=name)
    raise MulanFormatError(f"attribute {name!r}: unsupported type {kind!r}", line_no)


def _parse_cell(token: str, attr: AttributeSpec, line_no: int) -> FeatureValue:
    if token == "?":
        return None
    token = _unquote(token)
    if attr.is_nominal:
        try:
            return attr.values.index(token)
        except ValueError:
            raise MulanFormatError(
                f"value {token!r} not in declared list of attribute {attr.name!r}", line_no
            ) from None
    try:
        return float(token)
    except ValueError:
        raise MulanFormatError(
            f"non-numeric value {token!r} for attribute {attr.name!r}", line_no
        ) from None


def _sparse_default(attr: AttributeSpec) -> FeatureValue:
    return 0 if attr.is_nominal else 0.0


def _parse_row(line: str, columns: tuple[AttributeSpec, ...], line_no: int) -> list[FeatureValue]:
    line = line.strip()
    if line.startswith("{"):
        if not line.endswith("}"):
            raise MulanFormatError("unterminated sparse row", line_no)
        cells: list[FeatureValue] = [_sparse_default(a) for a in columns]
        body = line[1:-1].strip()
        if not body:
            return cells
        seen: set[int] = set()
        for entry in _split_respecting_quotes(body, ",", line_no):
            pieces = entry.split(None, 1)
            if len(pieces) != 2:
                raise MulanFormatError(f"bad sparse entry {entry!r}", line_no)
            try:
                idx = int(pieces[0])
            except ValueError:
                raise MulanFormatError(f"bad sparse index {pieces[0]!r}", line_no) from None
            if not 0 <= idx < len(columns):
                raise MulanFormatError(f"sparse index {idx} out of range", line_no)
            if idx in seen:
                raise MulanFormatError(f"duplicate sparse index {idx}", line_no)
            seen.add(idx)
            cells[idx] = _parse_cell(pieces[1].strip(), columns[idx], line_no)
        return cells
    tokens = _split_respecting_quotes(line, ",", line_no)
    if len(tokens) != len(columns):
        raise MulanFormatError(
            f"expected {len(columns)} values, got {len(tokens)}", line_no
        )
    return [_parse_cell(tok, attr, line_no) for tok, attr in zip(tokens, columns)]


def parse_label_header(xml_text: str) -> tuple[str, ...]:
    """Label names declared in a MULAN XML header, flattened in document order."""
    try:
        root = ElementTree.fromstring(xml_text)
    except ElementTree.ParseError as exc:
        raise MulanFormatError(f"bad XML label header: {exc}") from exc
    names: list[str] = []
    for element in root.iter():
        tag = element.tag.rsplit("}", 1)[-1]
        if tag == "label":
            name = element.get("name")
            if name is None:
                raise MulanFormatError("label element without a name attribute")
            names.append(name)
    if not names:
        raise MulanFormatError("XML header declares no labels")
    if len(set(names)) != len(names):
        raise MulanFormatError("XML header declares duplicate labels")
    return tuple(names)


def _label_value(value: FeatureValue, attr: AttributeSpec, line_no: int) -> bool:
    if attr.is_nominal and value is not None:
        value = _label_symbol_to_number(attr.values[value], attr, line_no)
    if value == 0.0:
        return False
    if value == 1.0:
        return True
    raise MulanFormatError(
        f"non-binary value {value!r} in label column {attr.name!r}", line_no
    )


def _label_symbol_to_number(symbol: str, attr: AttributeSpec, line_no: int) -> float:
    try:
        return float(symbol)
    except ValueError:
        raise MulanFormatError(
            f"non-binary value {symbol!r} in label column {attr.name!r}", line_no
        ) from None


def parse_mulan(arff_text: str, xml_label_header: str) -> MultiLabelDataset:
    """Parse a MULAN ARFF/XML pair into a dataset.

    The XML-declared attributes become the labels in XML order; the remaining
    ARFF attributes become features in declaration order.  Instance and
    attribute order is never changed.
    """
    label_names = parse_label_header(xml_label_header)

    relation = "unnamed"
    columns: list[AttributeSpec] = []
    rows: list[tuple[list[FeatureValue], int]] = []
    in_data = False
    for line_no, raw in enumerate(arff_text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if not in_data and line.lower().startswith("@relation"):
            relation, _ = _take_token(line[len("@relation") :], line_no)
        elif not in_data and line.lower().startswith("@attribute"):
            columns.append(_parse_attribute(line[len("@attribute") :], line_no))
        elif not in_data and line.lower().startswith("@data"):
            in_data = True
        elif in_data:
            rows.append((_parse_row(line, tuple(columns), line_no), line_no))
        else:
            raise MulanFormatError(f"unexpected content {line!r}", line_no)

    if not in_data:
        raise MulanFormatError("no @data section found")

    by_name = {attr.name: i for i, attr in enumerate(columns)}
    for name in label_names:
        if name not in by_name:
            raise MulanFormatError(f"XML label {name!r} is not an ARFF attribute")
    label_positions = [by_name[name] for name in label_names]
    label_set = set(label_positions)
    feature_positions = [i for i in range(len(columns)) if i not in label_set]
    attributes = tuple(columns[i] for i in feature_positions)

    instances = []
    for cells, line_no in rows:
        features = tuple(cells[i] for i in feature_positions)
        active = [
            j
            for j, pos in enumerate(label_positions)
            if _label_value(cells[pos], columns[pos], line_no)
        ]
        instances.append(Instance(features=features, labels=Labelset.from_indices(active)))

    try:
        return MultiLabelDataset(
            attributes=attributes,
            labels=label_names,
            instances=tuple(instances),
            name=relation,
        )
    except ValueError as exc:
        raise MulanFormatError(str(exc)) from exc


_NEEDS_QUOTING = set(" ,{}%'\"\t")


def _quote(text: str) -> str:
    if text and not (_NEEDS_QUOTING & set(text)):
        return text
    if '"' not in text:
        return f'"{text}"'
    if "'" not in text:
        return f"'{text}'"
    raise ValueError(f"cannot serialize token mixing both quote kinds: {text!r}")


def _format_cell(value: FeatureValue, attr: AttributeSpec) -> str:
    if value is None:
        return "?"
    if attr.is_nominal:
        return _quote(attr.values[value])
    return repr(value)


def write_mulan(d: MultiLabelDataset) -> tuple[str, str]:
    """Serialize a dataset to (arff_text, xml_label_header).

    Numeric values use the shortest round-tripping representation, so
    ``parse_mulan(*write_mulan(d))`` reproduces ``d`` structurally.
    """
    lines = [f"@relation {_quote(d.name)}", ""]
    for attr in d.attributes:
        if attr.is_nominal:
            decl = "{" + ",".join(_quote(v) for v in attr.values) + "}"
        else:
            decl = "numeric"
        lines.append(f"@attribute {_quote(attr.name)} {decl}")
    for name in d.labels:
        lines.append(f"@attribute {_quote(name)} {{0,1}}")
    lines.append("")
    lines.append("@data")
    for inst in d.instances:
        cells = [_format_cell(v, a) for v, a in zip(inst.features, d.attributes)]
        cells.extend("1" if l in inst.labels else "0" for l in range(d.k))
        lines.append(",".join(cells))
    arff_text = "\n".join(lines) + "\n"

    xml_lines = ['<?xml version="1.0" encoding="utf-8"?>']
    xml_lines.append('<labels xmlns="http://mulan.sourceforge.net/labels">')
    for name in d.labels:
        escaped = (
            name.replace("&", "&amp;").replace("<", "&lt;").replace('"', "&quot;")
        )
        xml_lines.append(f'  <label name="{escaped}"></label>')
    xml_lines.append("</labels>")
    return arff_text, "\n".join(xml_lines) + "\n"
