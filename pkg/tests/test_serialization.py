from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from knotfloer.complex import ValidationError
from knotfloer.families import random_complex, standard_families, torus_knot
from knotfloer.serialization import (
    ParseError,
    family_to_dict,
    format_rational,
    load_family,
    parse_family,
    parse_rational,
    save_family,
    serialize_family,
)


def test_rationals():
    assert parse_rational("3") == 3
    assert parse_rational("-1/2") == Fraction(-1, 2)
    assert parse_rational(4) == 4
    for bad in ("1.5", "1/0", "x", 0.5, True, None, "1/-2"):
        with pytest.raises(ParseError):
            parse_rational(bad)
    assert format_rational(Fraction(-6, 4)) == "-3/2" and format_rational(Fraction(2)) == "2"


@given(st.fractions(max_denominator=50))
def test_rational_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_round_trip_standard_families():
    for f in standard_families():
        text = serialize_family(f)
        assert parse_family(text) == f
        assert serialize_family(parse_family(text)) == text


@given(st.integers(0, 10_000))
def test_round_trip_fuzz(seed):
    f = random_complex(seed)
    assert parse_family(serialize_family(f)) == f


def test_canonical_form_ignores_input_order():
    data = family_to_dict(torus_knot(2, 3))
    data["complexes"]["0"]["generators"].reverse()
    data["complexes"]["0"]["arrows"].reverse()
    assert serialize_family(parse_family(json.dumps(data))) == serialize_family(torus_knot(2, 3))


def test_non_integer_power_rejected():
    data = family_to_dict(torus_knot(2, 3))
    for g in data["complexes"]["0"]["generators"]:
        if g["id"] == "x1":
            g["m"] = "-2"
    with pytest.raises(ValidationError) as err:
        parse_family(json.dumps(data))
    assert "upower_not_integer" in err.value.report.codes()


def test_powers_are_never_read():
    data = family_to_dict(torus_knot(2, 3))
    data["complexes"]["0"]["arrows"][0]["power"] = 7
    assert parse_family(json.dumps(data)) == torus_knot(2, 3)


def test_parse_errors_carry_location():
    with pytest.raises(ParseError) as err:
        parse_family('{\n  "name": "x",\n  oops\n}')
    assert err.value.line == 3
    data = family_to_dict(torus_knot(2, 3))
    del data["complexes"]["0"]["generators"][0]["a"]
    with pytest.raises(ParseError) as err:
        parse_family(json.dumps(data))
    assert "generators[0]" in err.value.field
    with pytest.raises(ParseError):
        parse_family("[]")


def test_unchecked_parse_allows_invalid():
    data = family_to_dict(torus_knot(2, 3))
    data["claimed_genus"] = "-1"
    f = parse_family(json.dumps(data), check=False)
    assert f.claimed_genus == -1


def test_file_round_trip(tmp_path):
    f = torus_knot(3, 4, claimed_genus=3)
    path = tmp_path / "t34.json"
    save_family(f, path)
    assert load_family(path) == f
