import json
from fractions import Fraction

import pytest

from flagcones import Basis, ParseError, ValidationError, parse_config, parse_rational

GOOD = {
    "curve": {"genus": 0, "label": "X"},
    "bundle": {
        "summands": [
            {"degree": 1, "multiplicity": 1},
            {"degree": 2, "multiplicity": 1},
            {"degree": 0, "multiplicity": 3},
        ]
    },
    "flag": {"quotient_ranks": [4, 3]},
    "divisors": [{"name": "L", "basis": "nef", "coords": [3, "4", "1/2"]}],
}


def as_text(data):
    return json.dumps(data)


class TestParseRational:
    def test_int(self):
        assert parse_rational(7) == 7

    def test_fraction_string(self):
        assert parse_rational("3/5") == Fraction(3, 5)
        assert parse_rational("-3/5") == Fraction(-3, 5)
        assert parse_rational("12") == 12

    def test_zero_denominator(self):
        with pytest.raises(ParseError):
            parse_rational("1/0")

    def test_float_rejected(self):
        with pytest.raises(ParseError):
            parse_rational(0.5)

    def test_garbage(self):
        with pytest.raises(ParseError):
            parse_rational("three")
        with pytest.raises(ParseError):
            parse_rational("1/2/3")
        with pytest.raises(ParseError):
            parse_rational(True)


class TestParseConfig:
    def test_good_document(self):
        config = parse_config(as_text(GOOD))
        assert config.curve.genus == 0
        assert config.summand_degrees() == (1, 2, 0, 0, 0)
        assert config.flag_ranks == (4, 3)
        divisor = config.divisors[0]
        assert divisor.name == "L"
        assert divisor.basis is Basis.NEF
        assert divisor.coords == (3, 4, Fraction(1, 2))

    def test_multiplicity_expansion(self):
        data = dict(GOOD)
        data["bundle"] = {"summands": [{"degree": 2, "multiplicity": 3}]}
        assert parse_config(as_text(data)).summand_degrees() == (2, 2, 2)

    def test_hn_steps_variant(self):
        data = dict(GOOD)
        data["bundle"] = {"hn_steps": [[1, 4], [4, 4], [5, 3]]}
        config = parse_config(as_text(data))
        assert config.summands is None
        assert config.hn_steps == ((1, 4), (4, 4), (5, 3))

    def test_divisors_optional(self):
        data = {k: v for k, v in GOOD.items() if k != "divisors"}
        assert parse_config(as_text(data)).divisors == ()

    def test_curve_defaults(self):
        data = {k: v for k, v in GOOD.items() if k != "curve"}
        config = parse_config(as_text(data))
        assert (config.curve.genus, config.curve.label) == (0, "X")

    def test_syntax_error_reports_location(self):
        with pytest.raises(ParseError) as info:
            parse_config("{not json")
        assert "line 1" in str(info.value)

    def test_empty_summands(self):
        data = dict(GOOD)
        data["bundle"] = {"summands": []}
        with pytest.raises(ValidationError):
            parse_config(as_text(data))

    def test_both_bundle_forms(self):
        data = dict(GOOD)
        data["bundle"] = {"summands": [{"degree": 1}], "hn_steps": [[1, 1]]}
        with pytest.raises(ValidationError):
            parse_config(as_text(data))

    def test_neither_bundle_form(self):
        data = dict(GOOD)
        data["bundle"] = {}
        with pytest.raises(ValidationError):
            parse_config(as_text(data))

    def test_missing_flag(self):
        data = {k: v for k, v in GOOD.items() if k != "flag"}
        with pytest.raises(ValidationError):
            parse_config(as_text(data))

    def test_zero_denominator_in_coords(self):
        data = dict(GOOD)
        data["divisors"] = [{"name": "L", "basis": "nef", "coords": ["1/0"]}]
        with pytest.raises(ParseError):
            parse_config(as_text(data))

    def test_float_coordinate_rejected(self):
        data = dict(GOOD)
        data["divisors"] = [{"name": "L", "basis": "nef", "coords": [0.5]}]
        with pytest.raises(ParseError):
            parse_config(as_text(data))

    def test_bad_basis(self):
        data = dict(GOOD)
        data["divisors"] = [{"name": "L", "basis": "weird", "coords": [1]}]
        with pytest.raises(ValidationError):
            parse_config(as_text(data))

    def test_bad_multiplicity(self):
        data = dict(GOOD)
        data["bundle"] = {"summands": [{"degree": 1, "multiplicity": 0}]}
        with pytest.raises(ValidationError):
            parse_config(as_text(data))

    def test_negative_genus(self):
        data = dict(GOOD)
        data["curve"] = {"genus": -1}
        with pytest.raises(ValidationError):
            parse_config(as_text(data))

    def test_unknown_key(self):
        data = dict(GOOD)
        data["extra"] = 1
        with pytest.raises(ValidationError):
            parse_config(as_text(data))

    def test_boolean_degree_rejected(self):
        data = dict(GOOD)
        data["bundle"] = {"summands": [{"degree": True}]}
        with pytest.raises(ParseError):
            parse_config(as_text(data))

    def test_nonpositive_flag_rank(self):
        data = dict(GOOD)
        data["flag"] = {"quotient_ranks": [0]}
        with pytest.raises(ValidationError):
            parse_config(as_text(data))
