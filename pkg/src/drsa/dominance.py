"""Dominance relation, cones, class unions and rough approximations.

Object ``x`` dominates ``y`` when it is at least as good on every criterion
(``>=`` on gain attributes, ``<=`` on cost attributes) and equal on every
attribute without a preference. Values are compared on their published
scales; cost attributes are never negated.

The positive cone D+(x) holds the objects dominating ``x``; the negative
cone D-(x) holds the objects ``x`` dominates. Both contain ``x``.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from enum import Enum

from .errors import SchemaMismatch, UnknownClass
from .numbers import format_decimal
from .table import DecisionTable, ObjectRecord, Preference, Schema


class UnionKind(str, Enum):
    UPWARD = "upward"  # class >= t
    DOWNWARD = "downward"  # class <= t


@dataclass(frozen=True)
class DominanceCone:
    origin: int
    positive: frozenset[int]
    negative: frozenset[int]


@dataclass(frozen=True)
class ClassUnion:
    kind: UnionKind
    threshold: str
    members: frozenset[int]


@dataclass(frozen=True)
class RoughApproximation:
    union: ClassUnion
    lower: frozenset[int]
    upper: frozenset[int]

    @property
    def boundary(self) -> frozenset[int]:
        return self.upper - self.lower


class WitnessKind(str, Enum):
    IDENTICAL = "identical-vector"
    STRICT = "strict-dominance"


@dataclass(frozen=True)
class InconsistentPair:
    dominating: int
    dominated: int
    kind: WitnessKind


@dataclass(frozen=True)
class InconsistencyReport:
    pairs: tuple[InconsistentPair, ...]

    def __bool__(self):
        return bool(self.pairs)

    def __len__(self):
        return len(self.pairs)

    @property
    def object_ids(self) -> frozenset[int]:
        return frozenset(i for p in self.pairs for i in (p.dominating, p.dominated))

    def to_dict(self, table: DecisionTable) -> dict:
        return {
            "consistent": not self.pairs,
            "pairs": [
                {
                    "dominating": p.dominating,
                    "dominated": p.dominated,
                    "kind": p.kind.value,
                    "labels": [table[p.dominating].label, table[p.dominated].label],
                    "values": {
                        str(i): dict(zip(table.schema.names, map(format_decimal, table[i].values)))
                        for i in (p.dominating, p.dominated)
                    },
                }
                for p in self.pairs
            ],
        }

    def to_json(self, table: DecisionTable) -> str:
        return json.dumps(self.to_dict(table), indent=2, sort_keys=True) + "\n"

    def to_text(self, table: DecisionTable) -> str:
        if not self.pairs:
            return "no inconsistencies\n"
        lines = [f"{len(self.pairs)} inconsistent pair(s)"]
        for p in self.pairs:
            x, y = table[p.dominating], table[p.dominated]
            lines.append(
                f"row {x.id} ({x.label}) dominates row {y.id} ({y.label}): {p.kind.value}"
            )
            for rec in (x, y):
                vals = ", ".join(f"{n}={format_decimal(v)}" for n, v in zip(table.schema.names, rec.values))
                lines.append(f"  row {rec.id}: {vals}")
        return "\n".join(lines) + "\n"


def _at_least_as_good(pref: Preference, a, b) -> bool:
    if pref is Preference.GAIN:
        return a >= b
    if pref is Preference.COST:
        return a <= b
    return a == b


def dominates(x: ObjectRecord, y: ObjectRecord, schema: Schema) -> bool:
    if len(x.values) != len(schema) or len(y.values) != len(schema):
        raise SchemaMismatch("records do not match the schema arity")
    return all(_at_least_as_good(a.preference, vx, vy) for a, vx, vy in zip(schema, x.values, y.values))


@functools.lru_cache(maxsize=64)
def _all_cones(table: DecisionTable) -> tuple[DominanceCone, ...]:
    objs = table.objects
    pos: list[set[int]] = [set() for _ in objs]
    neg: list[set[int]] = [set() for _ in objs]
    for x in objs:
        for y in objs:
            if dominates(x, y, table.schema):
                neg[x.id - 1].add(y.id)
                pos[y.id - 1].add(x.id)
    return tuple(DominanceCone(o.id, frozenset(p), frozenset(n)) for o, p, n in zip(objs, pos, neg))


def dominance_cone(table: DecisionTable, object_id: int) -> DominanceCone:
    table[object_id]  # raises UnknownId
    return _all_cones(table)[object_id - 1]


def class_union(table: DecisionTable, threshold: str, kind: UnionKind | str) -> ClassUnion:
    kind = UnionKind(kind)
    order = table.class_order
    if threshold not in order:
        raise UnknownClass(threshold)
    t = order.rank(threshold)
    if kind is UnionKind.UPWARD:
        members = frozenset(o.id for o in table if order.rank(o.label) >= t)
    else:
        members = frozenset(o.id for o in table if order.rank(o.label) <= t)
    return ClassUnion(kind, threshold, members)


def approximate(table: DecisionTable, union: ClassUnion) -> RoughApproximation:
    """Dominance-based lower and upper approximations of ``union``.

    For a downward union U: lower = {x : D-(x) in U}, upper = {x : D+(x) meets U}.
    Upward unions swap the cones.
    """
    cones = _all_cones(table)
    members = union.members
    lower, upper = set(), set()
    for c in cones:
        inner, outer = (c.negative, c.positive) if union.kind is UnionKind.DOWNWARD else (c.positive, c.negative)
        if inner <= members:
            lower.add(c.origin)
        if outer & members:
            upper.add(c.origin)
    return RoughApproximation(union, frozenset(lower), frozenset(upper))


def find_inconsistencies(table: DecisionTable) -> InconsistencyReport:
    """Ordered pairs (x, y) where x dominates y yet carries a worse class."""
    order = table.class_order
    pairs = []
    for c in _all_cones(table):
        x = table[c.origin]
        rx = order.rank(x.label)
        for yid in sorted(c.negative):
            y = table[yid]
            if rx < order.rank(y.label):
                kind = WitnessKind.IDENTICAL if x.values == y.values else WitnessKind.STRICT
                pairs.append(InconsistentPair(x.id, y.id, kind))
    return InconsistencyReport(tuple(pairs))
