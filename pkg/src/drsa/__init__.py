"""Dominance-based rough set approach: approximations, DOMLEM rules, evaluation."""

__version__ = "0.1.0"

from .dominance import (
    ClassUnion,
    DominanceCone,
    InconsistencyReport,
    RoughApproximation,
    UnionKind,
    approximate,
    class_union,
    dominance_cone,
    dominates,
    find_inconsistencies,
)
from .evaluate import (
    ConfusionMatrix,
    MetricsReport,
    Prediction,
    classify,
    classify_all,
    confusion,
    format_truncated,
    match,
    metrics,
)
from .induction import (
    ConditionSet,
    DecisionRule,
    ElementaryCondition,
    Relation,
    RuleBase,
    RuleKind,
    build_rulebase,
    candidate_conditions,
    domlem,
    evaluate_candidate,
    rule_support,
)
from .table import (
    AttributeSpec,
    ClassOrder,
    DecisionTable,
    NumericInterval,
    ObjectRecord,
    OrderedCategorical,
    Preference,
    Schema,
    load_schema,
    normalize_record,
    normalize_value,
    parse_normalized_dataset,
    read_table,
    serialize_table,
)
