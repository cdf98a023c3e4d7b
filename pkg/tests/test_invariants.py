from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from knotfloer.algebra import dual, dual_family
from knotfloer.complex import basis_change, direct_sum, flip, legal_basis_changes, shift, single_label
from knotfloer.families import (
    acyclic_primitive,
    figure_eight,
    floer_simple,
    lens_unknot,
    random_complex,
    staircase_complex,
    torus_knot,
    unknot,
    unknot_complex,
)
from knotfloer.homology import forget_alexander
from knotfloer.invariants import (
    HatRankNotOne,
    NotKnotLike,
    a_subcomplex,
    d_of,
    genus_report,
    h_invariant,
    is_locally_trivial,
    is_totally_locally_trivial,
    locally_trivial_complex,
    middle_grading,
    middle_spectrum,
    nu_plus,
    nu_plus_dual,
    nu_plus_s,
    tau,
    v_invariant,
    v_table,
    window,
)

from conftest import oracle_v

TREFOIL = staircase_complex((1, 0, -1))
BOX = acyclic_primitive("box")

# V-tables of the trefoil and its mirror over the padded window, computed
# once by the truncation oracle on the unreduced subcomplexes and frozen.
TREFOIL_V = {-2: 2, -1: 1, 0: 1, 1: 0, 2: 0}
DUAL_TREFOIL_V = {-2: 2, -1: 1, 0: 0, 1: 0, 2: 0}


def test_a_subcomplex_examples():
    assert a_subcomplex(unknot_complex(), 0) == forget_alexander(unknot_complex())
    g = a_subcomplex(TREFOIL, 0)
    assert dict(g.generators) == {"x0": -2, "x1": -1, "x2": -2}
    assert a_subcomplex(TREFOIL, 1) == forget_alexander(TREFOIL)
    assert a_subcomplex(TREFOIL, 5) == forget_alexander(TREFOIL)


def test_frozen_tables_agree_with_oracle():
    for s, v in TREFOIL_V.items():
        assert oracle_v(TREFOIL, s) == v
    for s, v in DUAL_TREFOIL_V.items():
        assert oracle_v(dual(TREFOIL), s) == v


def test_trefoil_v_and_h():
    assert v_table(TREFOIL) == {Fraction(s): v for s, v in TREFOIL_V.items()}
    assert v_table(dual(TREFOIL)) == {Fraction(s): v for s, v in DUAL_TREFOIL_V.items()}
    assert v_invariant(unknot_complex(), 0) == 0
    assert h_invariant(unknot_complex(), 0) == 0
    assert h_invariant(TREFOIL, 0) == 1
    assert h_invariant(TREFOIL, -1) == v_invariant(TREFOIL, 1) == 0


def test_v_of_unknot_plus_box():
    c = direct_sum(unknot_complex(), BOX)
    assert len(c) == 5 and v_invariant(c, 0) == 0 == oracle_v(c, 0)


def test_not_knot_like():
    with pytest.raises(NotKnotLike):
        v_invariant(BOX, 0)


def test_nu_plus_examples():
    assert nu_plus(unknot()).value == 0
    tref = torus_knot(2, 3)
    assert nu_plus(tref).value == 1 and nu_plus_dual(tref) == 0
    assert nu_plus_s(shift(unknot_complex(), 0, 3)) == 3
    assert nu_plus_s(shift(unknot_complex(), 0, Fraction(1, 2))) == Fraction(1, 2)


def test_middle_grading_examples():
    assert middle_grading(unknot_complex()) == middle_grading(TREFOIL)
    m = middle_grading(TREFOIL)
    assert (m.r_balance, m.r_formula, m.consistent) == (0, 0, True)
    m = middle_grading(shift(unknot_complex(), 0, Fraction(1, 2)))
    assert (m.r_balance, m.r_formula, m.consistent) == (Fraction(1, 2), Fraction(1, 2), True)


def test_middle_spectrum_examples():
    spectrum = middle_spectrum(lens_unknot(2, 1, boxes_per_label=2))
    assert set(spectrum.values.values()) == {0}
    spectrum = middle_spectrum(torus_knot(2, 3))
    assert spectrum.values == {"0": 0} and spectrum.a_max == spectrum.a_min == 0
    q = Fraction(1, 4)
    fam = floer_simple([("a", 0, q, "c", "a"), ("b", 0, 0, "b", "b"), ("c", 0, -q, "a", "c")])
    spectrum = middle_spectrum(fam)
    assert spectrum.symmetric and spectrum.label_symmetric and spectrum.a_max == q and spectrum.a_min == -q


def test_tau_examples():
    assert tau(unknot_complex()) == 0
    assert tau(TREFOIL) == 1
    assert tau(dual(TREFOIL)) == -1
    assert tau(figure_eight()["0"]) == 0
    for p, q in ((2, 5), (3, 4)):
        assert tau(torus_knot(p, q)["0"]) == (p - 1) * (q - 1) // 2


def test_tau_needs_hat_rank_one():
    # unknot plus a horizontal segment: three classes survive at U = 0
    c = direct_sum(unknot_complex(), acyclic_primitive("segment_h"))
    with pytest.raises(HatRankNotOne):
        tau(c)


def test_local_triviality_examples():
    assert locally_trivial_complex(unknot_complex())
    fe = figure_eight()
    assert is_locally_trivial(fe, "0") and is_totally_locally_trivial(fe)
    assert not is_locally_trivial(torus_knot(2, 3), "0")
    fam = lens_unknot(3, 1, boxes_per_label=2)
    assert all(is_locally_trivial(fam, lab) for lab in fam.labels)


def test_genus_report_examples():
    rep = genus_report(torus_knot(2, 3, claimed_genus=1))
    assert (rep.genus_lower_bound, rep.sharp) == (1, True)
    rep = genus_report(unknot())
    assert (rep.genus_lower_bound, rep.sharp) == (0, True)
    rep = genus_report(figure_eight(claimed_genus=1))
    assert (rep.genus_lower_bound, rep.sharp) == (0, False)
    rep = genus_report(torus_knot(2, 3))
    assert rep.sharp is None
    row = rep.labels[0]
    assert (row.nu_plus_s, row.r_s, row.d_s, row.tau) == (1, 0, 0, 1)


def test_window():
    assert window(TREFOIL) == [Fraction(s) for s in range(-2, 3)]
    assert window(TREFOIL, pad=3)[0] == -4


def _any(seed):
    fam = random_complex(seed)
    return fam, fam[fam.labels[0]]


@given(st.integers(0, 10_000))
def test_v_monotone_with_unit_steps(seed):
    _, c = _any(seed)
    table = v_table(c, pad=2)
    vals = list(table.values())
    for a, b in zip(vals, vals[1:]):
        assert a - b in (0, 1)
    assert vals[-1] == 0


@given(st.integers(0, 10_000))
def test_v_matches_truncation_oracle(seed):
    _, c = _any(seed)
    for s in window(c):
        assert v_invariant(c, s) == oracle_v(c, s)


@given(st.integers(0, 10_000))
def test_h_minus_v_is_s_minus_r(seed):
    _, c = _any(seed)
    r = middle_grading(c)
    assert r.consistent
    for s in window(c):
        assert h_invariant(c, s) - v_invariant(c, s) == s - r.r_balance


@given(st.integers(0, 10_000))
def test_nu_plus_at_least_middle_grading(seed):
    fam, _ = _any(seed)
    for lab in fam.labels:
        c = fam[lab]
        assert nu_plus_s(c) >= middle_grading(c).r_balance


@given(st.integers(0, 10_000))
def test_middle_grading_of_dual(seed):
    fam, c = _any(seed)
    assert middle_grading(dual(c)) == -middle_grading(c)
    mirror = dual_family(fam)
    for lab in fam.labels:
        assert middle_grading(mirror[fam.conj[lab]]).r_balance == -middle_grading(fam[lab]).r_balance


@given(st.integers(0, 10_000))
def test_tau_bounded_by_nu_plus(seed):
    _, c = _any(seed)
    try:
        t = tau(c)
    except HatRankNotOne:
        return
    assert -nu_plus_s(dual(c)) <= t <= nu_plus_s(c)


@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_basis_change_invariance(seed, pick):
    _, c = _any(seed)
    moves = legal_basis_changes(c)
    if not moves:
        return
    new = basis_change(c, *moves[pick % len(moves)])
    assert v_table(new) == v_table(c)
    assert d_of(new) == d_of(c)
    assert middle_grading(new) == middle_grading(c)
    assert nu_plus_s(dual(new)) == nu_plus_s(dual(c))


def test_flip_preserves_d_for_s3_knots():
    assert d_of(flip(TREFOIL)) == 0
    assert flip(unknot_complex()) == unknot_complex()
