"""Classification with a default class, confusion counts and metrics."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import LengthMismatch, SchemaMismatch, UndefinedMetric
from .induction import DecisionRule, RuleBase, RuleKind
from .numbers import format_truncated, percent
from .table import ObjectRecord, Schema

UNCERTAIN = "UNCERTAIN"


def match(rule: DecisionRule, record: ObjectRecord, schema: Schema) -> bool:
    if len(record.values) != len(schema):
        raise SchemaMismatch(f"record {record.id} has {len(record.values)} values, schema has {len(schema)}")
    return rule.matches(record, schema)


@dataclass(frozen=True)
class Prediction:
    """Outcome for one record.

    ``label`` is ``None`` when only an approximate rule fired; ``classes``
    then lists the candidate classes. ``rule`` is the 1-based number of the
    rule that fired; the default rule is numbered after the induced ones.
    """

    object_id: int
    label: str | None
    classes: tuple[str, ...]
    rule: int
    default: bool = False

    @property
    def uncertain(self) -> bool:
        return self.label is None

    @property
    def outcome(self) -> str:
        return UNCERTAIN if self.label is None else self.label


def classify(rulebase: RuleBase, record: ObjectRecord, schema: Schema) -> Prediction:
    rulebase.check_schema(schema)
    if len(record.values) != len(schema):
        raise SchemaMismatch(f"record {record.id} has {len(record.values)} values, schema has {len(schema)}")
    fallback = None
    for n, rule in enumerate(rulebase.rules, start=1):
        if not rule.matches(record, schema):
            continue
        if rule.kind is RuleKind.CERTAIN:
            return Prediction(record.id, rule.threshold, (rule.threshold,), n)
        if fallback is None:
            fallback = Prediction(record.id, None, rule.classes, n)
    if fallback is not None:
        return fallback
    d = rulebase.default_class
    return Prediction(record.id, d, (d,), len(rulebase.rules) + 1, default=True)


def classify_all(rulebase: RuleBase, records: Sequence[ObjectRecord], schema: Schema) -> list[Prediction]:
    return [classify(rulebase, r, schema) for r in records]


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    tn: int
    fp: int
    fn: int
    positive: str = ""

    def __post_init__(self):
        for name in ("tp", "tn", "fp", "fn"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {v!r}")

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


def confusion(predictions: Sequence[Prediction], truth: Sequence[str], positive: str) -> ConfusionMatrix:
    """Binary counts with ``positive`` against every other class.

    An uncertain prediction is always an error: FN on a positive object,
    FP on a negative one.
    """
    if len(predictions) != len(truth):
        raise LengthMismatch(f"{len(predictions)} predictions for {len(truth)} labels")
    tp = tn = fp = fn = 0
    for p, t in zip(predictions, truth):
        actual = t == positive
        if p.uncertain:
            predicted = not actual
        else:
            predicted = p.label == positive
        if predicted and actual:
            tp += 1
        elif predicted:
            fp += 1
        elif actual:
            fn += 1
        else:
            tn += 1
    return ConfusionMatrix(tp, tn, fp, fn, positive)


def accuracy(cm: ConfusionMatrix) -> Fraction:
    if cm.total == 0:
        raise UndefinedMetric("accuracy")
    return percent(cm.tp + cm.tn, cm.total)


def sensitivity(cm: ConfusionMatrix) -> Fraction:
    if cm.tp + cm.fn == 0:
        raise UndefinedMetric("sensitivity")
    return percent(cm.tp, cm.tp + cm.fn)


def specificity(cm: ConfusionMatrix) -> Fraction:
    if cm.fp + cm.tn == 0:
        raise UndefinedMetric("specificity")
    return percent(cm.tn, cm.fp + cm.tn)


def ppv(cm: ConfusionMatrix) -> Fraction:
    if cm.tp + cm.fp == 0:
        raise UndefinedMetric("ppv")
    return percent(cm.tp, cm.tp + cm.fp)


def npv(cm: ConfusionMatrix) -> Fraction:
    if cm.fn + cm.tn == 0:
        raise UndefinedMetric("npv")
    return percent(cm.tn, cm.fn + cm.tn)


METRIC_FUNCTIONS = {
    "accuracy": accuracy,
    "sensitivity": sensitivity,
    "specificity": specificity,
    "ppv": ppv,
    "npv": npv,
}

TABLE_LABELS = {
    "accuracy": "Accuracy (%)",
    "sensitivity": "Sensitivity (%)",
    "specificity": "Specificity (%)",
    "ppv": "Positive Predictive Value (%)",
    "npv": "Negative Predictive Value",
}


@dataclass(frozen=True)
class MetricsReport:
    """Exact percentages; ``None`` marks a metric with a zero denominator."""

    accuracy: Fraction | None
    sensitivity: Fraction | None
    specificity: Fraction | None
    ppv: Fraction | None
    npv: Fraction | None

    def require(self, name: str) -> Fraction:
        value = getattr(self, name)
        if value is None:
            raise UndefinedMetric(name)
        return value

    def formatted(self) -> dict[str, str]:
        return {
            name: "undefined" if getattr(self, name) is None else format_truncated(getattr(self, name))
            for name in METRIC_FUNCTIONS
        }


def metrics(cm: ConfusionMatrix) -> MetricsReport:
    values = {}
    for name, fn in METRIC_FUNCTIONS.items():
        try:
            values[name] = fn(cm)
        except UndefinedMetric:
            values[name] = None
    return MetricsReport(**values)


def render_metrics_table(cm: ConfusionMatrix, report: MetricsReport) -> str:
    rows = [("TP", str(cm.tp)), ("TN", str(cm.tn)), ("FP", str(cm.fp)), ("FN", str(cm.fn))]
    formatted = report.formatted()
    rows += [(TABLE_LABELS[name], formatted[name]) for name in METRIC_FUNCTIONS]
    width = max(len(label) for label, _ in rows)
    return "".join(f"{label:<{width}}  {value:>9}\n" for label, value in rows)


def metrics_to_dict(cm: ConfusionMatrix, report: MetricsReport) -> dict:
    out: dict = {"positive": cm.positive, "tp": cm.tp, "tn": cm.tn, "fp": cm.fp, "fn": cm.fn}
    for name, text in report.formatted().items():
        value = getattr(report, name)
        out[name] = None if value is None else {
            "numerator": value.numerator, "denominator": value.denominator, "percent": text,
        }
    return out


def metrics_to_json(cm: ConfusionMatrix, report: MetricsReport) -> str:
    return json.dumps(metrics_to_dict(cm, report), indent=2, sort_keys=True) + "\n"


def render_predictions(predictions: Sequence[Prediction]) -> str:
    lines = []
    for p in predictions:
        line = f"{p.object_id}\t{p.outcome}\trule {p.rule}"
        if p.uncertain:
            line += "\t" + "|".join(p.classes)
        elif p.default:
            line += "\tdefault"
        lines.append(line)
    return "".join(line + "\n" for line in lines)


def predictions_to_json(predictions: Sequence[Prediction]) -> str:
    data = [
        {"id": p.object_id, "outcome": p.outcome, "classes": list(p.classes), "rule": p.rule, "default": p.default}
        for p in predictions
    ]
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
