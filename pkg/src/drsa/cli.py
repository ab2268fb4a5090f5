"""``drsa`` command line.

Exit status: 0 success (or a consistent table), 1 inconsistencies found by
``audit``, 2 usage, I/O or parse failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .dominance import find_inconsistencies
from .errors import DRSAError
from .evaluate import (
    ConfusionMatrix,
    classify_all,
    confusion,
    metrics,
    metrics_to_json,
    predictions_to_json,
    render_metrics_table,
    render_predictions,
)
from .induction import RuleBase, build_rulebase
from .table import (
    DecisionTable,
    load_schema,
    parse_normalized_dataset,
    parse_raw_records,
    parse_records,
    serialize_records,
)


class UsageError(Exception):
    pass


def _read_bytes(path: str) -> bytes:
    return Path(path).read_bytes()


def _load_table(args) -> DecisionTable:
    schema = load_schema(args.schema)
    return parse_normalized_dataset(_read_bytes(args.data), schema)


def _load_rules(path: str) -> RuleBase:
    try:
        return RuleBase.from_json(Path(path).read_text(encoding="utf-8"))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DRSAError):
            raise
        raise UsageError(f"{path}: not a rule base file ({exc})") from None


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run_audit(args) -> int:
    table = _load_table(args)
    report = find_inconsistencies(table)
    text = report.to_json(table) if args.format == "machine" else report.to_text(table)
    _emit(text, args.output)
    return 1 if report else 0


def run_induce(args) -> int:
    table = _load_table(args)
    rb = build_rulebase(table, approximate=args.approximate)
    if not rb.rules:
        print(f"warning: no rules induced for class {rb.target_class!r}; default rule only", file=sys.stderr)
    if args.output:
        Path(args.output).write_text(rb.to_json(), encoding="utf-8")
    if args.text_output:
        Path(args.text_output).write_text(rb.to_text(), encoding="utf-8")
    sys.stdout.write(rb.to_json() if args.format == "machine" else rb.to_text())
    return 0


def run_classify(args) -> int:
    schema = load_schema(args.schema)
    rb = _load_rules(args.rules)
    rb.check_schema(schema)
    records = parse_records(_read_bytes(args.data), schema, labeled=None)
    preds = classify_all(rb, records, schema)
    _emit(predictions_to_json(preds) if args.format == "machine" else render_predictions(preds), args.output)
    return 0


def run_evaluate(args) -> int:
    table = _load_table(args)
    rb = _load_rules(args.rules)
    rb.check_schema(table.schema)
    positive = args.positive or table.class_order.best
    if positive not in table.class_order:
        raise UsageError(f"unknown positive class {positive!r}")
    preds = classify_all(rb, table.objects, table.schema)
    cm = confusion(preds, [o.label for o in table], positive)
    report = metrics(cm)
    if args.format == "machine":
        text = metrics_to_json(cm, report)
    else:
        correct = sum(1 for p, o in zip(preds, table) if p.label == o.label)
        uncertain = sum(1 for p in preds if p.uncertain)
        text = (f"positive class: {positive}\n"
                f"definite-correct: {correct}/{len(table)}\n"
                f"uncertain: {uncertain}\n\n") + render_metrics_table(cm, report)
    _emit(text, args.output)
    return 0


def run_metrics(args) -> int:
    cm = ConfusionMatrix(args.tp, args.tn, args.fp, args.fn)
    report = metrics(cm)
    text = metrics_to_json(cm, report) if args.format == "machine" else render_metrics_table(cm, report)
    _emit(text, args.output)
    return 0


def run_normalize(args) -> int:
    schema = load_schema(args.schema)
    records = parse_raw_records(_read_bytes(args.input), schema)
    _emit(serialize_records(records), args.output)
    return 0


def _count(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"counts must be non-negative, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="drsa", description="Dominance-based rough set rule induction.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, data=True, rules=False, output_help="write the report here instead of stdout"):
        if data:
            p.add_argument("--data", required=True, help="normalized comma-separated dataset")
        if rules:
            p.add_argument("--rules", required=True, help="rule base written by `induce --output`")
        p.add_argument("--schema", default="fertility", help="preset name or JSON schema file (default: fertility)")
        p.add_argument("--format", choices=("text", "machine"), default="text")
        p.add_argument("--output", help=output_help)

    p = sub.add_parser("audit", help="list pairs violating dominance monotonicity")
    common(p)
    p.set_defaults(func=run_audit)

    p = sub.add_parser("induce", help="induce a rule base")
    common(p, output_help="write the machine-format rule base here")
    p.add_argument("--approximate", action=argparse.BooleanOptionalAction, default=True,
                   help="also induce rules for the boundary region (default: on)")
    p.add_argument("--text-output", help="also write the human-readable rule list here")
    p.set_defaults(func=run_induce)

    p = sub.add_parser("classify", help="classify records with a rule base")
    common(p, rules=True)
    p.set_defaults(func=run_classify)

    p = sub.add_parser("evaluate", help="resubstitution confusion matrix and metrics")
    common(p, rules=True)
    p.add_argument("--positive", help="positive class (default: best class)")
    p.set_defaults(func=run_evaluate)

    p = sub.add_parser("metrics", help="metrics from explicit confusion counts")
    for name in ("tp", "tn", "fp", "fn"):
        p.add_argument(f"--{name}", type=_count, required=True)
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--output")
    p.set_defaults(func=run_metrics)

    p = sub.add_parser("normalize", help="normalize raw-domain records")
    p.add_argument("--input", required=True, help="CSV of raw values plus class label")
    p.add_argument("--schema", default="fertility")
    p.add_argument("--output")
    p.set_defaults(func=run_normalize)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DRSAError, UsageError, OSError) as exc:
        print(f"drsa {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
