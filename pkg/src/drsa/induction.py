"""DOMLEM rule induction over dominance-based approximations.

Rules are conjunctions of elementary conditions. For a downward union the
conditions on a gain criterion are upper bounds (``attr <= v``), on a cost
criterion lower bounds (``attr >= v``); upward unions reverse this.
Attributes without a preference only take equality conditions.

The covering loop is greedy: a rule is grown one condition at a time,
always taking the candidate whose cover is the purest with respect to the
still-uncovered target objects, until the cover lies inside the target.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .dominance import UnionKind, class_union
from .dominance import approximate as rough_approximation
from .errors import DivisionUndefined, EmptyTarget, SchemaMismatch, UnknownClass
from .numbers import format_truncated, format_threshold, to_decimal
from .table import DecisionTable, ObjectRecord, Preference, Schema


class Relation(str, Enum):
    AT_MOST = "<="
    AT_LEAST = ">="
    EQUAL = "="

    def holds(self, value: Decimal, threshold: Decimal) -> bool:
        if self is Relation.AT_MOST:
            return value <= threshold
        if self is Relation.AT_LEAST:
            return value >= threshold
        return value == threshold


# Tie-break preference between relations on the same attribute.
_RELATION_RANK = {Relation.AT_MOST: 2, Relation.AT_LEAST: 1, Relation.EQUAL: 0}


@dataclass(frozen=True)
class ElementaryCondition:
    attribute: str
    relation: Relation
    threshold: Decimal

    def __str__(self):
        return f"{self.attribute}{self.relation.value}{format_threshold(self.threshold)}"

    def holds(self, record: ObjectRecord, schema: Schema) -> bool:
        return self.relation.holds(record.values[schema.index(self.attribute)], self.threshold)

    def tighter(self, other: ElementaryCondition) -> ElementaryCondition:
        """The stronger of two bounds of the same attribute and relation."""
        if self.relation is Relation.AT_MOST:
            return self if self.threshold <= other.threshold else other
        if self.relation is Relation.AT_LEAST:
            return self if self.threshold >= other.threshold else other
        if self.threshold != other.threshold:
            raise ValueError(f"contradictory conditions {self} and {other}")
        return self


@dataclass(frozen=True)
class ConditionSet:
    """A conjunction holding at most one condition per (attribute, relation).

    Certain rules only ever use one relation per attribute. Approximate
    rules may bound an attribute from both sides.
    """

    conditions: tuple[ElementaryCondition, ...] = ()

    def __iter__(self):
        return iter(self.conditions)

    def __len__(self):
        return len(self.conditions)

    def add(self, cond: ElementaryCondition) -> ConditionSet:
        out = list(self.conditions)
        for i, c in enumerate(out):
            if c.attribute == cond.attribute and c.relation is cond.relation:
                out[i] = c.tighter(cond)
                return ConditionSet(tuple(out))
        out.append(cond)
        return ConditionSet(tuple(out))

    def without(self, index: int) -> ConditionSet:
        return ConditionSet(self.conditions[:index] + self.conditions[index + 1:])

    def matches(self, record: ObjectRecord, schema: Schema) -> bool:
        return all(c.holds(record, schema) for c in self.conditions)

    def cover(self, table: DecisionTable) -> frozenset[int]:
        return frozenset(o.id for o in table if self.matches(o, table.schema))

    def __str__(self):
        return " & ".join(f"({c})" for c in self.conditions)


class RuleKind(str, Enum):
    CERTAIN = "certain"
    APPROXIMATE = "approximate"


@dataclass(frozen=True)
class DecisionRule:
    """``If conditions Then conclusion``.

    Certain rules conclude a class union (``union`` + ``threshold``);
    approximate rules conclude the disjunction in ``classes``.
    """

    kind: RuleKind
    conditions: ConditionSet
    classes: tuple[str, ...]
    covered: frozenset[int]
    support: Fraction
    union: UnionKind | None = None
    threshold: str | None = None

    def matches(self, record: ObjectRecord, schema: Schema) -> bool:
        return self.conditions.matches(record, schema)

    def conclusion_text(self, order: Sequence[str]) -> str:
        if self.kind is RuleKind.APPROXIMATE:
            return "Output=" + " or ".join(self.classes)
        extreme = order[0] if self.union is UnionKind.DOWNWARD else order[-1]
        if self.threshold == extreme:
            return f"Output={self.threshold}"
        op = "<=" if self.union is UnionKind.DOWNWARD else ">="
        return f"Output{op}{self.threshold}"


@dataclass(frozen=True)
class RuleBase:
    attributes: tuple[str, ...]
    class_order: tuple[str, ...]
    rules: tuple[DecisionRule, ...]
    default_class: str
    target_class: str
    lower: frozenset[int] = frozenset()
    boundary: frozenset[int] = frozenset()
    default_support: Fraction = Fraction(1)

    @property
    def certain(self) -> tuple[DecisionRule, ...]:
        return tuple(r for r in self.rules if r.kind is RuleKind.CERTAIN)

    @property
    def approximate(self) -> tuple[DecisionRule, ...]:
        return tuple(r for r in self.rules if r.kind is RuleKind.APPROXIMATE)

    def check_schema(self, schema: Schema) -> None:
        if tuple(schema.names) != self.attributes:
            raise SchemaMismatch(
                f"rule base attributes {list(self.attributes)} differ from schema {list(schema.names)}"
            )
        if tuple(schema.class_order) != self.class_order:
            raise SchemaMismatch("rule base class order differs from schema")

    def to_text(self) -> str:
        lines = []
        for n, rule in enumerate(self.rules, start=1):
            pct = format_truncated(rule.support * 100)
            lhs = str(rule.conditions) or "(true)"
            lines.append(f"Rule {n}.\tIf {lhs} Then ({rule.conclusion_text(self.class_order)})\t{pct}%")
        n = len(self.rules) + 1
        pct = format_truncated(self.default_support * 100)
        lines.append(f"Rule {n}.\tElse (Output={self.default_class})\t{pct}%")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "attributes": list(self.attributes),
            "class_order": list(self.class_order),
            "target_class": self.target_class,
            "default_class": self.default_class,
            "default_support": _frac_dict(self.default_support),
            "lower": sorted(self.lower),
            "boundary": sorted(self.boundary),
            "rules": [
                {
                    "kind": r.kind.value,
                    "conditions": [
                        {"attribute": c.attribute, "relation": c.relation.value, "threshold": str(c.threshold)}
                        for c in r.conditions
                    ],
                    "union": r.union.value if r.union else None,
                    "threshold": r.threshold,
                    "classes": list(r.classes),
                    "covered": sorted(r.covered),
                    "support": _frac_dict(r.support),
                }
                for r in self.rules
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> RuleBase:
        rules = []
        for r in data["rules"]:
            conds = ConditionSet(tuple(
                ElementaryCondition(c["attribute"], Relation(c["relation"]), to_decimal(c["threshold"]))
                for c in r["conditions"]
            ))
            rules.append(DecisionRule(
                kind=RuleKind(r["kind"]),
                conditions=conds,
                classes=tuple(r["classes"]),
                covered=frozenset(r["covered"]),
                support=_frac_parse(r["support"]),
                union=UnionKind(r["union"]) if r.get("union") else None,
                threshold=r.get("threshold"),
            ))
        return cls(
            attributes=tuple(data["attributes"]),
            class_order=tuple(data["class_order"]),
            rules=tuple(rules),
            default_class=data["default_class"],
            target_class=data["target_class"],
            lower=frozenset(data.get("lower", ())),
            boundary=frozenset(data.get("boundary", ())),
            default_support=_frac_parse(data.get("default_support", {"numerator": 1, "denominator": 1})),
        )

    @classmethod
    def from_json(cls, text: str) -> RuleBase:
        return cls.from_dict(json.loads(text))


def _frac_dict(f: Fraction) -> dict:
    return {"numerator": f.numerator, "denominator": f.denominator,
            "percent": format_truncated(f * 100)}


def _frac_parse(d: dict) -> Fraction:
    return Fraction(int(d["numerator"]), int(d["denominator"]))


# -- candidate generation and scoring --------------------------------------

def _relations(pref: Preference, kind: UnionKind, both: bool) -> tuple[Relation, ...]:
    if pref is Preference.NONE:
        return (Relation.EQUAL,)
    if both:
        return (Relation.AT_MOST, Relation.AT_LEAST)
    toward_worse = (pref is Preference.GAIN) == (kind is UnionKind.DOWNWARD)
    return (Relation.AT_MOST,) if toward_worse else (Relation.AT_LEAST,)


def candidate_conditions(
    objects: Iterable[int],
    table: DecisionTable,
    kind: UnionKind | str,
    *,
    both_directions: bool = False,
) -> list[ElementaryCondition]:
    """One condition per attribute, relation and distinct value seen in ``objects``.

    ``both_directions`` admits lower and upper bounds on every criterion
    (used for boundary regions).
    """
    kind = UnionKind(kind)
    ids = list(objects)
    out = []
    for q, attr in enumerate(table.schema):
        values = sorted({table[i].values[q] for i in ids})
        for rel in _relations(attr.preference, kind, both_directions):
            out.extend(ElementaryCondition(attr.name, rel, v) for v in values)
    return out


def evaluate_candidate(
    conditions: ConditionSet,
    candidate: ElementaryCondition,
    uncovered: Iterable[int],
    table: DecisionTable,
) -> Fraction:
    """|[E + e] & G| / |[E + e]| with the cover taken over the whole table."""
    cover = conditions.add(candidate).cover(table)
    if not cover:
        raise DivisionUndefined(f"{candidate} leaves the cover empty")
    return Fraction(len(cover & frozenset(uncovered)), len(cover))


class _Covers:
    """Per-condition cover cache for one table."""

    def __init__(self, table: DecisionTable):
        self.table = table
        self.all = frozenset(table.ids)
        self._cache: dict[ElementaryCondition, frozenset[int]] = {}

    def of(self, cond: ElementaryCondition) -> frozenset[int]:
        hit = self._cache.get(cond)
        if hit is None:
            q = self.table.schema.index(cond.attribute)
            hit = frozenset(o.id for o in self.table if cond.relation.holds(o.values[q], cond.threshold))
            self._cache[cond] = hit
        return hit

    def of_set(self, conds: ConditionSet) -> frozenset[int]:
        out = self.all
        for c in conds:
            out = out & self.of(c)
        return out


def _strictness(cond: ElementaryCondition):
    # larger is stricter for >=; smaller is stricter for <=; equality prefers small values
    return cond.threshold if cond.relation is Relation.AT_LEAST else -cond.threshold


def _grow(target: frozenset[int], uncovered: set[int], table, kind, both, covers: _Covers) -> ConditionSet:
    conds = ConditionSet()
    cover = covers.all
    matching = set(uncovered)
    schema = table.schema
    while not cover <= target:
        best = None
        for cand in candidate_conditions(sorted(matching), table, kind, both_directions=both):
            grown = conds.add(cand)
            c = cover & covers.of(cand)
            if c == cover or not c:
                continue
            hits = len(c & uncovered)
            key = (Fraction(hits, len(c)), hits, -schema.index(cand.attribute),
                   _RELATION_RANK[cand.relation], _strictness(cand))
            if best is None or key > best[0]:
                best = (key, grown, c)
        if best is None:  # pragma: no cover - targets are unions of dominance-closed sets
            raise RuntimeError("no condition narrows the cover; target is not separable")
        _, conds, cover = best
        matching &= cover
    return conds


def _prune(conds: ConditionSet, target: frozenset[int], covers: _Covers) -> ConditionSet:
    i = 0
    while i < len(conds):
        trial = conds.without(i)
        if covers.of_set(trial) <= target:
            conds = trial
        else:
            i += 1
    return conds


def domlem(
    table: DecisionTable,
    target: Iterable[int],
    kind: UnionKind | str,
    classes: Sequence[str],
    *,
    approximate: bool = False,
    threshold: str | None = None,
) -> list[DecisionRule]:
    """Induce a small set of rules whose covers lie in ``target`` and jointly equal it.

    ``target`` is a lower approximation (certain rules) or a boundary
    (``approximate=True``). ``classes`` is the conclusion: the concluded
    union's threshold class for certain rules, the class disjunction for
    approximate ones.
    """
    kind = UnionKind(kind)
    target = frozenset(target)
    if not target:
        return []
    covers = _Covers(table)
    uncovered = set(target)
    found: list[ConditionSet] = []
    while uncovered:
        conds = _grow(target, uncovered, table, kind, approximate, covers)
        conds = _prune(conds, target, covers)
        found.append(conds)
        uncovered -= covers.of_set(conds)

    # drop rules whose cover is implied by the rest, latest first
    i = len(found) - 1
    while i >= 0 and len(found) > 1:
        others = frozenset().union(*(covers.of_set(c) for j, c in enumerate(found) if j != i))
        if covers.of_set(found[i]) <= others:
            del found[i]
        i -= 1

    rkind = RuleKind.APPROXIMATE if approximate else RuleKind.CERTAIN
    rules = []
    for conds in found:
        covered = covers.of_set(conds)
        rules.append(DecisionRule(
            kind=rkind,
            conditions=conds,
            classes=tuple(classes),
            covered=covered,
            support=rule_support_fraction(covered, target),
            union=None if approximate else kind,
            threshold=None if approximate else (threshold or classes[0]),
        ))
    return rules


def rule_support_fraction(covered: Iterable[int], target: Iterable[int]) -> Fraction:
    target = frozenset(target)
    if not target:
        raise EmptyTarget("support is undefined for an empty target region")
    return Fraction(len(frozenset(covered) & target), len(target))


def rule_support(rule: DecisionRule, target: Iterable[int]) -> tuple[Fraction, str]:
    """Support as an exact fraction and as a truncated percentage string."""
    frac = rule_support_fraction(rule.covered, target)
    return frac, format_truncated(frac * 100) + "%"


def build_rulebase(
    table: DecisionTable,
    target_class: str | None = None,
    default_class: str | None = None,
    *,
    approximate: bool = True,
) -> RuleBase:
    """Certain rules for the downward union of the worst class, then
    approximate rules for its boundary, then a default-class fallback."""
    order = table.class_order
    target_class = order.worst if target_class is None else target_class
    default_class = order.best if default_class is None else default_class
    for c in (target_class, default_class):
        if c not in order:
            raise UnknownClass(c)
    if target_class != order.worst:
        raise ValueError(f"target class must be the worst class {order.worst!r}")
    if default_class == target_class:
        raise ValueError("default class must differ from the target class")

    union = class_union(table, target_class, UnionKind.DOWNWARD)
    approx = rough_approximation(table, union)
    rules = domlem(table, approx.lower, UnionKind.DOWNWARD, (target_class,), threshold=target_class)
    if approximate and approx.boundary:
        nxt = order.labels[order.rank(target_class) + 1]
        rules += domlem(table, approx.boundary, UnionKind.DOWNWARD, (target_class, nxt), approximate=True)

    certain_cover = frozenset().union(*(r.covered for r in rules if r.kind is RuleKind.CERTAIN))
    defaults = frozenset(o.id for o in table if o.label == default_class)
    default_support = Fraction(len(defaults - certain_cover), len(defaults)) if defaults else Fraction(1)
    return RuleBase(
        attributes=tuple(table.schema.names),
        class_order=tuple(order.labels),
        rules=tuple(rules),
        default_class=default_class,
        target_class=target_class,
        lower=approx.lower,
        boundary=approx.boundary,
        default_support=default_support,
    )
