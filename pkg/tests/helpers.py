"""Random tables and brute-force oracles shared by the test modules.

The oracles work on raw value tuples and re-derive every definition from
scratch; they never call into drsa.dominance or drsa.induction.
"""

import itertools
import random
from decimal import Decimal

from hypothesis import strategies as st

from drsa.table import (
    AttributeSpec,
    ClassOrder,
    DecisionTable,
    NumericInterval,
    ObjectRecord,
    Preference,
    Schema,
)

GRID = tuple(Decimal(x) for x in ("0", "0.5", "1"))


def make_table(rows, prefs, classes=("c0", "c1")):
    """rows: sequence of (values..., label); prefs: 'gain'/'cost'/'none' per attribute."""
    attrs = tuple(
        AttributeSpec(f"a{i}", NumericInterval(Decimal(0), Decimal(1)), Preference(p))
        for i, p in enumerate(prefs)
    )
    objs = tuple(
        ObjectRecord(i + 1, tuple(Decimal(str(v)) for v in row[:-1]), row[-1]) for i, row in enumerate(rows)
    )
    return DecisionTable(Schema(attrs, ClassOrder(tuple(classes))), objs)


def random_table(rng: random.Random, max_objects=8, max_attrs=3, grid=GRID):
    m = rng.randint(1, max_attrs)
    n = rng.randint(1, max_objects)
    k = rng.randint(2, 3)
    classes = tuple(f"c{i}" for i in range(k))
    prefs = [rng.choice(("gain", "cost", "none")) for _ in range(m)]
    rows = [tuple(rng.choice(grid) for _ in range(m)) + (rng.choice(classes),) for _ in range(n)]
    return make_table(rows, prefs, classes)


@st.composite
def tables(draw, max_objects=8, max_attrs=3):
    m = draw(st.integers(1, max_attrs))
    k = draw(st.integers(2, 3))
    classes = tuple(f"c{i}" for i in range(k))
    prefs = draw(st.lists(st.sampled_from(("gain", "cost", "none")), min_size=m, max_size=m))
    row = st.tuples(*[st.sampled_from(GRID)] * m, st.sampled_from(classes))
    rows = draw(st.lists(row, min_size=1, max_size=max_objects))
    return make_table(rows, prefs, classes)


# -- oracles ----------------------------------------------------------------

def _prefs(table):
    return [a.preference.value for a in table.schema]


def oracle_dominates(xv, yv, prefs):
    for a, b, p in zip(xv, yv, prefs):
        if p == "gain" and not a >= b:
            return False
        if p == "cost" and not a <= b:
            return False
        if p == "none" and a != b:
            return False
    return True


def oracle_union(table, threshold, kind):
    order = list(table.class_order)
    t = order.index(threshold)
    if kind == "upward":
        return {o.id for o in table if order.index(o.label) >= t}
    return {o.id for o in table if order.index(o.label) <= t}


def oracle_approximation(table, members, kind):
    """Lower/upper straight from the cone definitions, pair by pair."""
    prefs = _prefs(table)
    objs = list(table)
    lower, upper = set(), set()
    for x in objs:
        # downward: everything x dominates must be inside; upward: everything dominating x
        inner_ok = True
        outer_hit = False
        for y in objs:
            x_dom_y = oracle_dominates(x.values, y.values, prefs)
            y_dom_x = oracle_dominates(y.values, x.values, prefs)
            inner = x_dom_y if kind == "downward" else y_dom_x
            outer = y_dom_x if kind == "downward" else x_dom_y
            if inner and y.id not in members:
                inner_ok = False
            if outer and y.id in members:
                outer_hit = True
        if inner_ok:
            lower.add(x.id)
        if outer_hit:
            upper.add(x.id)
    return lower, upper


def _oriented(pref, kind):
    if pref == "none":
        return ("eq",)
    return ("le",) if (pref == "gain") == (kind == "downward") else ("ge",)


def _holds(rel, v, t):
    return v <= t if rel == "le" else v >= t if rel == "ge" else v == t


def enumerate_sound_rules(table, target, kind):
    """Every oriented conjunction (one condition or none per attribute) whose
    non-empty cover lies inside ``target``; yields (conditions, cover)."""
    prefs = _prefs(table)
    objs = list(table)
    options = []
    for q, p in enumerate(prefs):
        vals = sorted({o.values[q] for o in objs})
        options.append([None] + [(q, rel, v) for rel in _oriented(p, kind) for v in vals])
    for combo in itertools.product(*options):
        conds = [c for c in combo if c is not None]
        cover = {o.id for o in objs if all(_holds(rel, o.values[q], v) for q, rel, v in conds)}
        if cover and cover <= set(target):
            yield conds, cover
