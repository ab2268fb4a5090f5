"""Built-in schemas for the UCI fertility ("Assisted Reproduction") data.

Both presets share the same domains and normalization codes; they differ
only in preference directions.

``fertility``
    Age and Alcohol are gain criteria; the remaining seven attributes carry
    no preference and are compared for equality. This is the reading under
    which the dataset's only inconsistency is rows 67/71 and the induced
    rules use ``=`` on everything except Age and Alcohol.

``fertility-ordinal``
    Every attribute is a criterion, oriented by the harm each factor is
    believed to do (Age, Smoking and Sitting are costs). Under this reading
    rows 18, 22, 28 and 36 also fall into the boundary of the Altered class.
"""

from __future__ import annotations

from .table import Schema, schema_from_dict

_YES_NO = {"kind": "ordered-categorical", "labels": ["Yes", "No"], "codes": ["0", "1"]}

_ATTRIBUTES = [
    ("Season", {"kind": "ordered-categorical", "labels": ["Winter", "Spring", "Summer", "Fall"],
                "codes": ["-1", "-0.33", "0.33", "1"]}),
    ("Age", {"kind": "numeric-interval", "domain": ["18", "36"], "normalized": ["0", "1"]}),
    ("Disease", _YES_NO),
    ("Trauma", _YES_NO),
    ("Surgery", _YES_NO),
    ("Fever", {"kind": "ordered-categorical",
               "labels": ["Less than three months ago", "More than three months ago", "No"],
               "codes": ["-1", "0", "1"]}),
    ("Alcohol", {"kind": "ordered-categorical",
                 "labels": ["Several times a day", "Every day", "Several times a week", "Once a week",
                            "Hardly ever or never"],
                 "codes": ["0.2", "0.4", "0.6", "0.8", "1"]}),
    ("Smoking", {"kind": "ordered-categorical", "labels": ["Never", "Occasionally", "Daily"],
                 "codes": ["-1", "0", "1"]}),
    ("Sitting", {"kind": "numeric-interval", "domain": ["0", "16"], "normalized": ["0", "1"]}),
]

FERTILITY_PREFERENCES = {
    "Season": "none", "Age": "gain", "Disease": "none", "Trauma": "none", "Surgery": "none",
    "Fever": "none", "Alcohol": "gain", "Smoking": "none", "Sitting": "none",
}

FERTILITY_ORDINAL_PREFERENCES = {
    "Season": "gain", "Age": "cost", "Disease": "gain", "Trauma": "gain", "Surgery": "gain",
    "Fever": "gain", "Alcohol": "gain", "Smoking": "cost", "Sitting": "cost",
}

# Altered (O) is the worse outcome.
FERTILITY_CLASSES = ["O", "N"]


def _fertility_dict(name: str, prefs: dict[str, str]) -> dict:
    return {
        "name": name,
        "class_order": FERTILITY_CLASSES,
        "attributes": [dict(spec, name=n, preference=prefs[n]) for n, spec in _ATTRIBUTES],
    }


def fertility() -> Schema:
    return schema_from_dict(_fertility_dict("fertility", FERTILITY_PREFERENCES))


def fertility_ordinal() -> Schema:
    return schema_from_dict(_fertility_dict("fertility-ordinal", FERTILITY_ORDINAL_PREFERENCES))


PRESETS = {
    "fertility": fertility,
    "fertility-ordinal": fertility_ordinal,
}
