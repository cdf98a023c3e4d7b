from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from knotfloer.complex import (
    CosetMismatch,
    Generator,
    IllegalBasisChange,
    KnotComplex,
    KnotComplexFamily,
    SpinCStructure,
    ValidationError,
    basis_change,
    direct_sum,
    flip,
    legal_basis_changes,
    shift,
    single_label,
    validate,
    validate_complex,
)
from knotfloer.families import acyclic_primitive, random_complex, staircase_complex, unknot_complex


def trefoil():
    return staircase_complex((1, 0, -1))


def test_generators_sorted_canonically():
    c = KnotComplex((Generator("b", 0, 1), Generator("a", -2, -1), Generator("c", -1, 0)), (("c", "b"), ("c", "a")))
    assert [g.id for g in c.generators] == ["a", "c", "b"]


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        Generator("x", 0.5, 0)


def test_repeated_arrow_cancels_over_f2():
    gens = (Generator("p", 0, 0), Generator("q", -1, -1))
    assert KnotComplex(gens, (("p", "q"), ("p", "q")), "raw").arrows == ()


def test_trefoil_is_valid():
    assert validate_complex(trefoil()).ok


def test_unknot_is_valid():
    assert validate_complex(unknot_complex()).ok


def test_non_integer_upower_is_reported():
    c = KnotComplex((Generator("a", 0, 0), Generator("b", 0, 0)), (("a", "b"),), "raw")
    report = validate_complex(c)
    assert "upower_not_integer" in report.codes()
    assert "upower ≠ (M(to)−M(from)+1)/2" in str(report.violations[0])


def test_negative_upower_and_jdrop():
    c = KnotComplex((Generator("a", 0, 0), Generator("b", -3, 0)), (("a", "b"),), "raw")
    assert "upower_negative" in validate_complex(c).codes()
    c = KnotComplex((Generator("a", 0, 0), Generator("b", -1, 1)), (("a", "b"),), "raw")
    assert "jdrop_negative" in validate_complex(c).codes()


def test_d_squared_detected():
    gens = (Generator("a", 0, 0), Generator("b", -1, 0), Generator("c", -2, 0))
    c = KnotComplex(gens, (("a", "b"), ("b", "c")), "raw")
    assert "d_squared" in validate_complex(c).codes()


def test_cosets():
    c = KnotComplex((Generator("a", 0, 0), Generator("b", 0, Fraction(1, 2))), (), "raw")
    assert "alexander_coset" in validate_complex(c).codes()
    c = KnotComplex((Generator("a", 0, 0), Generator("b", Fraction(1, 2), 0)), (), "raw")
    assert "maslov_coset" in validate_complex(c).codes()


def test_kind_rank_checks():
    box = acyclic_primitive("box")
    assert validate_complex(box).ok
    assert "kind_knot_rank" in validate_complex(box.with_kind("knot")).codes()
    assert "kind_acyclic_rank" in validate_complex(trefoil().with_kind("acyclic")).codes()


def test_unknown_and_self_arrows():
    c = KnotComplex((Generator("a", 0, 0),), (("a", "zz"), ("a", "a")), "raw")
    assert {"unknown_generator", "self_arrow"} <= validate_complex(c).codes()


def test_family_validation_codes():
    c = unknot_complex()
    spinc = (SpinCStructure("0", "1", "0"), SpinCStructure("1", "1", "1"))
    report = validate(KnotComplexFamily("bad", spinc, {"0": c, "1": c}))
    assert "conj_not_involutive" in report.codes()
    spinc = (SpinCStructure("0", "0", "1"), SpinCStructure("1", "1", "1"))
    assert "pdk_not_permutation" in validate(KnotComplexFamily("bad", spinc, {"0": c, "1": c})).codes()
    spinc = (SpinCStructure("0", "0", "9"),)
    assert "unknown_label" in validate(KnotComplexFamily("bad", spinc, {"0": c})).codes()
    spinc = (SpinCStructure("0", "0", "0"), SpinCStructure("1", "1", "1"))
    assert "missing_complex" in validate(KnotComplexFamily("bad", spinc, {"0": c})).codes()
    assert "negative_genus" in validate(single_label("n", c, -1)).codes()
    with pytest.raises(ValidationError):
        single_label("n", c, -1).check()


def test_conj_pdk_relation():
    c = unknot_complex()
    # conj = identity, pdk = 3-cycle: conj pdk = pdk != pdk^-1 conj
    spinc = tuple(SpinCStructure(str(i), str(i), str((i + 1) % 3)) for i in range(3))
    report = validate(KnotComplexFamily("bad", spinc, {str(i): c for i in range(3)}))
    assert "conj_pdk_relation" in report.codes()


def test_shift_and_direct_sum():
    c = direct_sum(unknot_complex(), acyclic_primitive("box"))
    assert c.kind == "knot" and len(c) == 5 and validate_complex(c).ok
    s = shift(c, 2, 1)
    assert s.max_alexander == c.max_alexander + 1
    with pytest.raises(CosetMismatch):
        direct_sum(unknot_complex(), unknot_complex(0, Fraction(1, 2)))
    both = direct_sum(unknot_complex(), unknot_complex())
    assert both.kind == "raw" and {g.id for g in both.generators} == {"x", "x'"}
    with pytest.raises(ValidationError):
        direct_sum(unknot_complex(), unknot_complex(), kind="knot")


def test_flip_example():
    f = flip(trefoil())
    assert {(g.id, g.maslov, g.alexander) for g in f.generators} == {
        ("x0", -2, -1), ("x1", -1, 0), ("x2", 0, 1)}
    assert validate_complex(f).ok


@given(st.integers(0, 10_000))
def test_flip_is_involution_and_valid(seed):
    c = random_complex(seed)[random_complex(seed).labels[0]]
    assert flip(flip(c)) == c
    assert validate_complex(flip(c)).ok


@given(st.integers(0, 10_000))
def test_flip_swaps_upower_and_jdrop(seed):
    c = random_complex(seed)["0"]
    f = flip(c)
    for a, b in c.arrows:
        assert f.power(a, b) == c.jdrop(a, b)
        assert f.jdrop(a, b) == c.power(a, b)


def test_basis_change_rejects_illegal_moves():
    c = trefoil()
    with pytest.raises(IllegalBasisChange):
        basis_change(c, "x0", "x1", 0)
    with pytest.raises(IllegalBasisChange):
        basis_change(c, "x0", "x0", 0)


@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_legal_basis_changes_stay_valid(seed, pick):
    c = random_complex(seed)["0"]
    moves = legal_basis_changes(c)
    if not moves:
        return
    x, y, k = moves[pick % len(moves)]
    new = basis_change(c, x, y, k)
    assert validate_complex(new).ok
    # the same move undoes itself over F_2
    assert basis_change(new, x, y, k) == c


def test_random_complexes_validate():
    for seed in range(50):
        assert validate(random_complex(seed)).ok, seed


def test_random_complex_is_deterministic():
    assert random_complex(7) == random_complex(7)
    assert random.Random(1).random() == random.Random(1).random()
