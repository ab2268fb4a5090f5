"""Schemas, attribute normalization and decision-table parsing."""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from decimal import Decimal
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import MissingValue, OutOfDomain, ParseError, SchemaError, SchemaMismatch, UnknownClass, UnknownId
from .numbers import format_decimal, to_decimal


class Preference(str, Enum):
    GAIN = "gain"  # higher is better
    COST = "cost"  # lower is better
    NONE = "none"  # no order; compared for equality only

    @property
    def is_criterion(self) -> bool:
        return self is not Preference.NONE


@dataclass(frozen=True)
class NumericInterval:
    lo: Decimal
    hi: Decimal
    norm_lo: Decimal = Decimal(0)
    norm_hi: Decimal = Decimal(1)

    def __post_init__(self):
        if not self.lo < self.hi:
            raise SchemaError(f"numeric interval needs lo < hi, got [{self.lo}, {self.hi}]")
        if self.norm_lo == self.norm_hi:
            raise SchemaError("normalized interval is degenerate")

    def contains_normalized(self, value: Decimal) -> bool:
        a, b = sorted((self.norm_lo, self.norm_hi))
        return a <= value <= b


@dataclass(frozen=True)
class OrderedCategorical:
    labels: tuple[str, ...]
    codes: tuple[Decimal, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.codes):
            raise SchemaError("each categorical label needs exactly one code")
        if not self.labels:
            raise SchemaError("categorical domain is empty")
        if len({lab.casefold() for lab in self.labels}) != len(self.labels):
            raise SchemaError(f"duplicate categorical labels in {self.labels}")
        if len(set(self.codes)) != len(self.codes):
            raise SchemaError(f"categorical codes are not distinct: {self.codes}")

    def contains_normalized(self, value: Decimal) -> bool:
        return value in self.codes


AttributeKind = Union[NumericInterval, OrderedCategorical]


@dataclass(frozen=True)
class AttributeSpec:
    name: str
    kind: AttributeKind
    preference: Preference

    def __post_init__(self):
        if not self.name or not self.name.isidentifier():
            raise SchemaError(f"attribute name {self.name!r} is not an identifier")
        if not isinstance(self.preference, Preference):
            object.__setattr__(self, "preference", Preference(self.preference))


@dataclass(frozen=True)
class ClassOrder:
    """Class labels ordered worst first."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) < 2:
            raise SchemaError("a class order needs at least two labels")
        if len(set(self.labels)) != len(self.labels):
            raise SchemaError(f"duplicate class labels in {self.labels}")

    def rank(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownClass(label) from None

    @property
    def worst(self) -> str:
        return self.labels[0]

    @property
    def best(self) -> str:
        return self.labels[-1]

    def __contains__(self, label) -> bool:
        return label in self.labels

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)


@dataclass(frozen=True)
class Schema:
    attributes: tuple[AttributeSpec, ...]
    class_order: ClassOrder
    name: str = ""
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not self.attributes:
            raise SchemaError("schema has no attributes")
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise SchemaError(f"duplicate attribute names in {names}")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    def __len__(self):
        return len(self.attributes)

    def __iter__(self):
        return iter(self.attributes)

    def __getitem__(self, i: int) -> AttributeSpec:
        return self.attributes[i]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.attributes)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise SchemaMismatch(f"attribute {name!r} is not in the schema") from None

    def with_preferences(self, **prefs: str) -> Schema:
        """Copy with some attributes' preference directions overridden."""
        unknown = set(prefs) - set(self._index)
        if unknown:
            raise SchemaMismatch(f"unknown attributes: {sorted(unknown)}")
        attrs = tuple(
            AttributeSpec(a.name, a.kind, Preference(prefs.get(a.name, a.preference)))
            for a in self.attributes
        )
        return Schema(attrs, self.class_order, self.name)


@dataclass(frozen=True)
class ObjectRecord:
    id: int
    values: tuple[Decimal, ...]
    label: str | None


@dataclass(frozen=True)
class DecisionTable:
    schema: Schema
    objects: tuple[ObjectRecord, ...]

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        for pos, rec in enumerate(self.objects, start=1):
            if rec.id != pos:
                raise SchemaError(f"object ids must run 1..n in order; found {rec.id} at position {pos}")
            check_record(self.schema, rec)
            if rec.label not in self.schema.class_order:
                raise UnknownClass(rec.label)

    @property
    def class_order(self) -> ClassOrder:
        return self.schema.class_order

    @property
    def ids(self) -> range:
        return range(1, len(self.objects) + 1)

    def __len__(self):
        return len(self.objects)

    def __iter__(self):
        return iter(self.objects)

    def __getitem__(self, object_id: int) -> ObjectRecord:
        if not isinstance(object_id, int) or not 1 <= object_id <= len(self.objects):
            raise UnknownId(object_id)
        return self.objects[object_id - 1]

    def label_counts(self) -> dict[str, int]:
        counts = {c: 0 for c in self.class_order}
        for rec in self.objects:
            counts[rec.label] += 1
        return counts


def check_record(schema: Schema, rec: ObjectRecord) -> None:
    if len(rec.values) != len(schema):
        raise SchemaMismatch(f"record {rec.id} has {len(rec.values)} values, schema has {len(schema)}")
    for attr, v in zip(schema, rec.values):
        if not attr.kind.contains_normalized(v):
            raise OutOfDomain(attr.name, format_decimal(v), "normalized domain")


# -- normalization ---------------------------------------------------------

_MISSING = {"", "?", "na", "nan", "null"}


def normalize_value(attr: AttributeSpec, raw) -> Decimal:
    """Map a raw-domain value onto the attribute's normalized scale."""
    if raw is None or (isinstance(raw, str) and raw.strip().casefold() in _MISSING):
        raise MissingValue(attr.name)
    kind = attr.kind
    if isinstance(kind, OrderedCategorical):
        key = str(raw).strip().casefold()
        for label, code in zip(kind.labels, kind.codes):
            if label.casefold() == key:
                return code
        raise OutOfDomain(attr.name, raw, f"expected one of {list(kind.labels)}")
    try:
        x = Fraction(to_decimal(str(raw) if isinstance(raw, float) else raw, strict=False))
    except (ValueError, TypeError):
        raise OutOfDomain(attr.name, raw, "not a number") from None
    lo, hi = Fraction(kind.lo), Fraction(kind.hi)
    if not lo <= x <= hi:
        raise OutOfDomain(attr.name, raw, f"expected [{kind.lo}, {kind.hi}]")
    nlo, nhi = Fraction(kind.norm_lo), Fraction(kind.norm_hi)
    return to_decimal(nlo + (x - lo) * (nhi - nlo) / (hi - lo), strict=False)


def normalize_record(schema: Schema, raw: Sequence, object_id: int = 1) -> ObjectRecord:
    """Normalize one raw row: a value per attribute followed by the class label."""
    if len(raw) != len(schema) + 1:
        raise SchemaMismatch(f"raw record has {len(raw)} fields, expected {len(schema) + 1}")
    values = tuple(normalize_value(attr, v) for attr, v in zip(schema, raw))
    label = str(raw[-1]).strip()
    if not label:
        raise MissingValue("class")
    if label not in schema.class_order:
        raise UnknownClass(label)
    return ObjectRecord(object_id, values, label)


# -- dataset files ---------------------------------------------------------

def _read_text(stream) -> str:
    if isinstance(stream, bytes):
        data = stream
    elif isinstance(stream, str):
        return stream
    else:
        data = stream.read()
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8 text ({exc.reason})") from None
    return data


def parse_records(stream, schema: Schema, *, labeled: bool | None = True) -> list[ObjectRecord]:
    """Parse comma-separated normalized rows.

    ``labeled=True`` requires a trailing class token, ``False`` forbids it
    and ``None`` accepts either per line. Blank lines are skipped but still
    counted for error positions; ids number the records 1..n.
    """
    text = _read_text(stream)
    m = len(schema)
    records: list[ObjectRecord] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split(",")]
        if labeled is True:
            want = (m + 1,)
        elif labeled is False:
            want = (m,)
        else:
            want = (m, m + 1)
        if len(fields) not in want:
            raise ParseError(f"arity: expected {' or '.join(map(str, want))} fields, got {len(fields)}", lineno)
        values = []
        for col, (attr, tok) in enumerate(zip(schema, fields[:m]), start=1):
            if tok.casefold() in _MISSING:
                raise ParseError(f"missing value for {attr.name}", lineno, col)
            try:
                v = to_decimal(tok)
            except ValueError as exc:
                raise ParseError(f"{attr.name}: {exc}", lineno, col) from None
            if not attr.kind.contains_normalized(v):
                raise ParseError(f"{attr.name}: value {tok} outside normalized domain", lineno, col)
            values.append(v)
        label = None
        if len(fields) == m + 1:
            label = fields[m]
            if label not in schema.class_order:
                raise ParseError(f"unknown class token {label!r}", lineno, m + 1)
        records.append(ObjectRecord(len(records) + 1, tuple(values), label))
    return records


def parse_normalized_dataset(stream, schema: Schema, *, allow_empty: bool = False) -> DecisionTable:
    records = parse_records(stream, schema, labeled=True)
    if not records and not allow_empty:
        raise ParseError("empty dataset")
    return DecisionTable(schema, tuple(records))


def serialize_records(records: Iterable[ObjectRecord]) -> str:
    lines = []
    for rec in records:
        fields = [format_decimal(v) for v in rec.values]
        if rec.label is not None:
            fields.append(rec.label)
        lines.append(",".join(fields))
    return "".join(line + "\n" for line in lines)


def serialize_table(table: DecisionTable) -> str:
    return serialize_records(table.objects)


def read_table(path: str | os.PathLike, schema: Schema) -> DecisionTable:
    with open(path, "rb") as fh:
        return parse_normalized_dataset(fh, schema)


def parse_raw_records(stream, schema: Schema) -> list[ObjectRecord]:
    """Normalize a CSV of raw-domain rows (labels, years, hours) plus class."""
    text = _read_text(stream)
    out = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row):
            continue
        try:
            out.append(normalize_record(schema, row, len(out) + 1))
        except (OutOfDomain, MissingValue, SchemaMismatch, UnknownClass) as exc:
            raise ParseError(str(exc), lineno) from exc
    return out


# -- schema files ----------------------------------------------------------

def _dec(x) -> Decimal:
    return to_decimal(str(x) if not isinstance(x, (Decimal, str)) else x)


def schema_from_dict(data: dict) -> Schema:
    try:
        attrs = []
        for a in data["attributes"]:
            kind_name = a["kind"]
            if kind_name == "numeric-interval":
                lo, hi = a["domain"]
                nlo, nhi = a.get("normalized", (0, 1))
                kind = NumericInterval(_dec(lo), _dec(hi), _dec(nlo), _dec(nhi))
            elif kind_name == "ordered-categorical":
                kind = OrderedCategorical(tuple(str(x) for x in a["labels"]), tuple(_dec(c) for c in a["codes"]))
            else:
                raise SchemaError(f"unknown attribute kind {kind_name!r}")
            attrs.append(AttributeSpec(a["name"], kind, Preference(a["preference"])))
        order = ClassOrder(tuple(str(c) for c in data["class_order"]))
    except KeyError as exc:
        raise SchemaError(f"schema is missing field {exc.args[0]!r}") from None
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc)) from None
    return Schema(tuple(attrs), order, data.get("name", ""))


def schema_to_dict(schema: Schema) -> dict:
    attrs = []
    for a in schema:
        entry: dict = {"name": a.name}
        if isinstance(a.kind, NumericInterval):
            entry["kind"] = "numeric-interval"
            entry["domain"] = [format_decimal(a.kind.lo), format_decimal(a.kind.hi)]
            entry["normalized"] = [format_decimal(a.kind.norm_lo), format_decimal(a.kind.norm_hi)]
        else:
            entry["kind"] = "ordered-categorical"
            entry["labels"] = list(a.kind.labels)
            entry["codes"] = [format_decimal(c) for c in a.kind.codes]
        entry["preference"] = a.preference.value
        attrs.append(entry)
    return {"name": schema.name, "class_order": list(schema.class_order), "attributes": attrs}


def load_schema(name_or_path: str | os.PathLike) -> Schema:
    """Resolve a preset name (see :mod:`drsa.presets`) or read a JSON schema file."""
    from .presets import PRESETS

    key = str(name_or_path)
    if key in PRESETS:
        return PRESETS[key]()
    try:
        with open(name_or_path, encoding="utf-8") as fh:
            data = json.load(fh, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise ParseError(f"schema is not valid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return schema_from_dict(data)
