import io
import json
from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from drsa.errors import MissingValue, OutOfDomain, ParseError, SchemaError, UnknownClass
from drsa.numbers import format_truncated, format_threshold, to_decimal
from drsa.presets import PRESETS
from drsa.table import (
    AttributeSpec,
    ClassOrder,
    NumericInterval,
    OrderedCategorical,
    Preference,
    load_schema,
    normalize_record,
    normalize_value,
    parse_normalized_dataset,
    parse_raw_records,
    parse_records,
    schema_from_dict,
    schema_to_dict,
    serialize_table,
)

from helpers import tables

D = Decimal


def attr(schema, name):
    return schema[schema.index(name)]


class TestNormalizeValue:
    def test_age_lower_endpoint(self, schema):
        assert normalize_value(attr(schema, "Age"), 18) == D("0")

    def test_age_upper_endpoint(self, schema):
        assert normalize_value(attr(schema, "Age"), 36) == D("1")

    def test_sitting_eight_hours(self, schema):
        assert normalize_value(attr(schema, "Sitting"), "8") == D("0.5")

    def test_categorical_positions(self, schema):
        assert normalize_value(attr(schema, "Season"), "Winter") == D("-1")
        assert normalize_value(attr(schema, "Season"), "spring") == D("-0.33")
        assert normalize_value(attr(schema, "Alcohol"), "Once a week") == D("0.8")

    def test_out_of_interval(self, schema):
        with pytest.raises(OutOfDomain):
            normalize_value(attr(schema, "Age"), 17)

    def test_unknown_label(self, schema):
        with pytest.raises(OutOfDomain):
            normalize_value(attr(schema, "Season"), "Monsoon")

    def test_missing(self, schema):
        with pytest.raises(MissingValue):
            normalize_value(attr(schema, "Age"), "?")

    def test_rounds_to_grid(self, schema):
        # 1/18 is not representable; it lands on the nearest 1e-4 step
        assert normalize_value(attr(schema, "Age"), 19) == D("0.0556")


@given(st.sampled_from(["Season", "Disease", "Trauma", "Surgery", "Fever", "Alcohol", "Smoking"]))
def test_categorical_maps_injective(name):
    a = attr(load_schema("fertility"), name)
    codes = [normalize_value(a, lab) for lab in a.kind.labels]
    assert len(set(codes)) == len(codes)


@given(st.integers(-1000, 1000), st.integers(1, 1000))
def test_interval_midpoint_maps_to_midpoint(lo, width):
    hi = lo + 2 * width
    a = AttributeSpec("x", NumericInterval(D(lo), D(hi), D(0), D(1)), Preference.GAIN)
    assert normalize_value(a, lo + width) == D("0.5")


class TestNormalizeRecord:
    BEST = ["Fall", "18", "No", "No", "No", "No", "Hardly ever or never", "Never", "0", "N"]

    def test_all_best(self, schema):
        rec = normalize_record(schema, self.BEST, 1)
        assert rec.values == tuple(D(x) for x in ("1", "0", "1", "1", "1", "1", "1", "-1", "0"))
        assert rec.label == "N"

    def test_age_27(self, schema):
        raw = list(self.BEST)
        raw[1] = "27"
        assert normalize_record(schema, raw).values[1] == D("0.5")

    def test_unknown_season(self, schema):
        raw = list(self.BEST)
        raw[0] = "Monsoon"
        with pytest.raises(OutOfDomain) as err:
            normalize_record(schema, raw)
        assert err.value.attribute == "Season"

    def test_missing_label(self, schema):
        with pytest.raises(MissingValue):
            normalize_record(schema, self.BEST[:-1] + [""])

    def test_unknown_label(self, schema):
        with pytest.raises(UnknownClass):
            normalize_record(schema, self.BEST[:-1] + ["X"])

    def test_raw_csv(self, schema):
        text = ",".join(self.BEST) + "\n" + "Winter,27,Yes,No,No,No,Every day,Daily,8,O\n"
        recs = parse_raw_records(text.encode(), schema)
        assert [r.id for r in recs] == [1, 2]
        assert recs[1].values == tuple(D(x) for x in ("-1", "0.5", "0", "1", "1", "1", "0.4", "1", "0.5"))


class TestParse:
    def test_fertility_file(self, fertility):
        assert len(fertility) == 100
        assert fertility.label_counts() == {"N": 88, "O": 12}

    def test_crlf_and_exact_values(self, fertility_path, schema):
        table = parse_normalized_dataset(fertility_path.read_bytes(), schema)
        assert table[1].values[0] == D("-0.33")
        assert table[71].values == table[67].values

    def test_empty_stream(self, schema):
        with pytest.raises(ParseError):
            parse_normalized_dataset(b"", schema)
        assert len(parse_normalized_dataset(b"", schema, allow_empty=True)) == 0

    def test_arity(self, schema):
        with pytest.raises(ParseError) as err:
            parse_normalized_dataset(b"1,0.5,1,1,1,1,1,-1,N\n", schema)
        assert err.value.line == 1 and "arity" in err.value.cause

    def test_bad_number(self, schema):
        with pytest.raises(ParseError) as err:
            parse_normalized_dataset(b"1,0.5,1,1,1,1,1,-1,0.5,N\n1,abc,1,1,1,1,1,-1,0.5,N\n", schema)
        assert (err.value.line, err.value.column) == (2, 2)

    def test_out_of_domain_code(self, schema):
        with pytest.raises(ParseError) as err:
            parse_normalized_dataset(b"0.5,0.5,1,1,1,1,1,-1,0.5,N\n", schema)
        assert err.value.column == 1

    def test_unknown_class_token(self, schema):
        with pytest.raises(ParseError) as err:
            parse_normalized_dataset(b"1,0.5,1,1,1,1,1,-1,0.5,X\n", schema)
        assert err.value.column == 10

    def test_too_precise(self, schema):
        with pytest.raises(ParseError):
            parse_normalized_dataset(b"1,0.50001,1,1,1,1,1,-1,0.5,N\n", schema)

    def test_text_stream(self, schema):
        table = parse_normalized_dataset(io.StringIO("1,0.5,1,1,1,1,1,-1,0.5,N\n"), schema)
        assert table[1].label == "N"

    def test_unlabeled_records(self, schema):
        recs = parse_records(b"1,0.5,1,1,1,1,1,-1,0.5\n1,0.5,1,1,1,1,1,-1,0.5,O\n", schema, labeled=None)
        assert [r.label for r in recs] == [None, "O"]


def test_serialize_roundtrip_fertility(fertility, schema):
    again = parse_normalized_dataset(serialize_table(fertility).encode(), schema)
    assert again == fertility


@given(tables())
def test_serialize_roundtrip_random(table):
    assert parse_normalized_dataset(serialize_table(table).encode(), table.schema) == table


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_schema_dict_roundtrip(name, tmp_path):
    schema = load_schema(name)
    path = tmp_path / "schema.json"
    path.write_text(json.dumps(schema_to_dict(schema)))
    assert load_schema(path) == schema


def test_preset_directions():
    prefs = {a.name: a.preference.value for a in load_schema("fertility")}
    assert prefs["Age"] == "gain" and prefs["Alcohol"] == "gain"
    assert {v for k, v in prefs.items() if k not in ("Age", "Alcohol")} == {"none"}
    ordinal = {a.name: a.preference.value for a in load_schema("fertility-ordinal")}
    assert ordinal == {
        "Season": "gain", "Age": "cost", "Disease": "gain", "Trauma": "gain", "Surgery": "gain",
        "Fever": "gain", "Alcohol": "gain", "Smoking": "cost", "Sitting": "cost",
    }


def test_with_preferences_override(schema):
    flipped = schema.with_preferences(Age="cost")
    assert attr(flipped, "Age").preference is Preference.COST
    assert attr(schema, "Age").preference is Preference.GAIN


class TestInvariants:
    def test_interval_needs_lo_below_hi(self):
        with pytest.raises(SchemaError):
            NumericInterval(D(1), D(1))

    def test_categorical_codes_distinct(self):
        with pytest.raises(SchemaError):
            OrderedCategorical(("a", "b"), (D(0), D(0)))

    def test_categorical_labels_distinct(self):
        with pytest.raises(SchemaError):
            OrderedCategorical(("a", "A"), (D(0), D(1)))

    def test_class_order_two_labels(self):
        with pytest.raises(SchemaError):
            ClassOrder(("N",))

    def test_schema_kind_unknown(self):
        with pytest.raises(SchemaError):
            schema_from_dict({"class_order": ["a", "b"],
                              "attributes": [{"name": "x", "kind": "blob", "preference": "gain"}]})


class TestNumbers:
    def test_refuses_float(self):
        with pytest.raises(TypeError):
            to_decimal(0.33)

    def test_threshold_rendering(self):
        assert format_threshold(D("0.5")) == "0.50"
        assert format_threshold(D("-0.33")) == "-0.33"
        assert format_threshold(D("1.0000")) == "1"
        assert format_threshold(D("0.0625")) == "0.0625"

    @pytest.mark.parametrize("value, text", [
        (Fraction(8000, 85), "94.11"),
        (Fraction(600, 11), "54.54"),
        (Fraction(100), "100.00"),
        (Fraction(0), "0.00"),
    ])
    def test_truncated(self, value, text):
        assert format_truncated(value) == text
