"""Constructors for the knot complexes used as test data.

Staircases model L-space knots in S^3 from the exponents of their Alexander
polynomial; torus knots and L-space cables are produced through exact integer
polynomial arithmetic.  ``random_complex`` builds the fuzz corpus.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .complex import (
    ComplexError,
    Generator,
    KnotComplex,
    KnotComplexFamily,
    SpinCStructure,
    basis_change,
    direct_sum,
    flip,
    frac,
    legal_basis_changes,
    shift,
    single_label,
)


class FamilyError(ComplexError):
    pass


class InvalidAlexanderData(FamilyError):
    pass


class NotCoprime(FamilyError):
    pass


class NotStaircasePolynomial(FamilyError):
    pass


class CableConditionViolated(FamilyError):
    pass


class ConjDMismatch(FamilyError):
    pass


class SymmetryViolation(FamilyError):
    pass


# -- Alexander polynomials --------------------------------------------------------


@dataclass(frozen=True)
class AlexanderData:
    """Exponents a_0 > a_1 > ... > a_2m of an alternating, symmetric polynomial."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        object.__setattr__(self, "exponents", exps)
        if len(exps) % 2 == 0:
            raise InvalidAlexanderData(f"need an odd number of exponents, got {len(exps)}")
        if any(a <= b for a, b in zip(exps, exps[1:])):
            raise InvalidAlexanderData(f"exponents not strictly decreasing: {exps}")
        if exps != tuple(-e for e in reversed(exps)):
            raise InvalidAlexanderData(f"exponents not symmetric: {exps}")

    @property
    def genus(self) -> int:
        return self.exponents[0]

    def polynomial(self) -> dict[int, int]:
        return {e: (-1) ** i for i, e in enumerate(self.exponents)}

    @classmethod
    def from_polynomial(cls, poly: dict[int, int]) -> "AlexanderData":
        terms = sorted(((e, c) for e, c in poly.items() if c), reverse=True)
        for i, (e, c) in enumerate(terms):
            if c != (-1) ** i:
                raise NotStaircasePolynomial(
                    f"coefficient {c} at t^{e}; staircase needs alternating +1/-1 starting at +1")
        try:
            return cls(tuple(e for e, _ in terms))
        except InvalidAlexanderData as exc:
            raise NotStaircasePolynomial(str(exc)) from exc


def _poly_mul(p: dict[int, int], q: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _poly_divexact(num: dict[int, int], den: dict[int, int]) -> dict[int, int]:
    """Exact division of Laurent polynomials with integer coefficients (den monic or -monic at top)."""
    num = dict(num)
    dtop = max(den)
    dlead = den[dtop]
    quot: dict[int, int] = {}
    while num:
        top = max(num)
        if top < dtop or num[top] % dlead:
            raise ValueError("division is not exact")
        c = num[top] // dlead
        e = top - dtop
        quot[e] = c
        for de, dc in den.items():
            k = de + e
            num[k] = num.get(k, 0) - c * dc
            if num[k] == 0:
                del num[k]
    return quot


def torus_alexander(p: int, q: int) -> AlexanderData:
    """Symmetrized Alexander polynomial of T(p, q)."""
    if p < 1 or q < 1 or math.gcd(p, q) != 1:
        raise NotCoprime(f"T({p},{q}) needs coprime positive p, q")
    num = _poly_mul({p * q: 1, 0: -1}, {1: 1, 0: -1})
    den = _poly_mul({p: 1, 0: -1}, {q: 1, 0: -1})
    quot = _poly_divexact(num, den)
    g = (p - 1) * (q - 1) // 2
    return AlexanderData.from_polynomial({e - g: c for e, c in quot.items()})


def cable_alexander(base: AlexanderData, p: int, q: int) -> AlexanderData:
    """Alexander polynomial of the (p, q)-cable, Δ_K(t^p)·Δ_{T(p,q)}(t)."""
    if p < 1 or q < 1 or math.gcd(p, q) != 1:
        raise NotCoprime(f"cable ({p},{q}) needs coprime positive p, q")
    if not q > p * (2 * base.genus - 1):
        raise CableConditionViolated(f"q={q} must exceed p(2g-1) = {p * (2 * base.genus - 1)}")
    stretched = {e * p: c for e, c in base.polynomial().items()}
    return AlexanderData.from_polynomial(_poly_mul(stretched, torus_alexander(p, q).polynomial()))


# -- complexes ----------------------------------------------------------------------


def unknot_complex(dM=0, dA=0, gid: str = "x") -> KnotComplex:
    return KnotComplex((Generator(gid, frac(dM), frac(dA)),), (), "knot")


def unknot(name: str = "U", claimed_genus=0) -> KnotComplexFamily:
    return single_label(name, unknot_complex(), claimed_genus)


def staircase_complex(ad: AlexanderData | Sequence[int]) -> KnotComplex:
    """Zig-zag complex with A(x_i) = a_i and M(x_0) = 0.

    Odd generators x_{2i+1} map to x_{2i} with U-power a_{2i} - a_{2i+1} and to
    x_{2i+2} with U-power 0.
    """
    if not isinstance(ad, AlexanderData):
        ad = AlexanderData(tuple(ad))
    a = ad.exponents
    M = [Fraction(0)] * len(a)
    arrows = []
    for i in range(1, len(a), 2):
        M[i] = M[i - 1] + 1 - 2 * (a[i - 1] - a[i])
        M[i + 1] = M[i] - 1
        arrows += [(f"x{i}", f"x{i - 1}"), (f"x{i}", f"x{i + 1}")]
    gens = tuple(Generator(f"x{i}", M[i], a[i]) for i in range(len(a)))
    return KnotComplex(gens, tuple(arrows), "knot")


def staircase(ad: AlexanderData | Sequence[int], name: Optional[str] = None, claimed_genus=None) -> KnotComplexFamily:
    if not isinstance(ad, AlexanderData):
        ad = AlexanderData(tuple(ad))
    name = name or "staircase(" + ",".join(map(str, ad.exponents)) + ")"
    return single_label(name, staircase_complex(ad), claimed_genus)


def staircase_exponents(c: KnotComplex) -> Optional[AlexanderData]:
    """Recover the Alexander data of ``c`` if it is literally a staircase, else None."""
    exps = tuple(int(g.alexander) for g in sorted(c.generators, key=lambda g: -g.alexander))
    if any(g.alexander.denominator != 1 for g in c.generators):
        return None
    try:
        ad = AlexanderData(exps)
    except InvalidAlexanderData:
        return None
    model = staircase_complex(ad)
    mine = sorted((g.alexander, g.maslov) for g in c.generators)
    theirs = sorted((g.alexander, g.maslov) for g in model.generators)
    if mine != theirs or len(c.arrows) != len(model.arrows):
        return None
    return ad


def torus_knot(p: int, q: int, claimed_genus=None) -> KnotComplexFamily:
    ad = torus_alexander(p, q)
    return staircase(ad, f"T({p},{q})", claimed_genus)


def cable_staircase(base: AlexanderData | Sequence[int], p: int, q: int, claimed_genus=None) -> KnotComplexFamily:
    if not isinstance(base, AlexanderData):
        base = AlexanderData(tuple(base))
    ad = cable_alexander(base, p, q)
    name = "cable(" + ",".join(map(str, base.exponents)) + f";{p},{q})"
    return staircase(ad, name, claimed_genus)


PRIMITIVES = ("segment_v", "segment_h", "box")


def acyclic_primitive(kind: str, dM=0, dA=0, prefix: str = "") -> KnotComplex:
    """Acyclic building blocks (localized homology zero)."""
    if kind == "segment_v":
        gens = [("p", 0, 0), ("q", -1, -1)]
        arrows = [("p", "q")]
    elif kind == "segment_h":
        gens = [("p", 0, 0), ("q", 1, 1)]
        arrows = [("p", "q")]
    elif kind == "box":
        gens = [("a", 0, 0), ("b", -1, -1), ("c", 1, 1), ("d", 0, 0)]
        arrows = [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]
    else:
        raise FamilyError(f"unknown primitive {kind!r}; expected one of {PRIMITIVES}")
    c = KnotComplex(
        tuple(Generator(prefix + i, m, a) for i, m, a in gens),
        tuple((prefix + x, prefix + y) for x, y in arrows),
        "acyclic",
    )
    return shift(c, dM, dA)


def figure_eight(claimed_genus=None) -> KnotComplexFamily:
    c = direct_sum(unknot_complex(), acyclic_primitive("box"))
    return single_label("4_1", c, claimed_genus)


# -- rational homology spheres ----------------------------------------------------


@lru_cache(maxsize=None)
def lens_space_d(p: int, q: int, i: int) -> Fraction:
    """Correction term d(L(p, q), i) by the standard recursion.

    d(L(p,q), i) = -1/4 + (2i + 1 - p - q)^2 / (4pq) - d(L(q, r), j)
    with r = p mod q, j = i mod q, and d(S^3) = 0.  Requires p = 1 or
    0 < q < p, and 0 <= i < p + q.
    """
    if p == 1:
        return Fraction(0)
    if not (0 < q < p) or math.gcd(p, q) != 1:
        raise NotCoprime(f"L({p},{q}) needs coprime 0 < q < p")
    if not 0 <= i < p + q:
        raise ValueError(f"Spin^c index {i} outside [0, {p + q})")
    return Fraction(-1, 4) + Fraction((2 * i + 1 - p - q) ** 2, 4 * p * q) - lens_space_d(q, p % q, i % q)


def lens_conj(p: int, q: int, i: int) -> int:
    """Conjugate of label i of L(p, q): i -> q - 1 - i mod p."""
    return (q - 1 - i) % p


def unknot_in_qhs(dvalues: Iterable[tuple[str, object, str]], boxes_per_label: int = 0,
                  name: str = "U_Y") -> KnotComplexFamily:
    """Unknot in a rational homology sphere: shifted unknot plus boxes at each label."""
    dvalues = [(str(lab), frac(d), str(cj)) for lab, d, cj in dvalues]
    dmap = {lab: d for lab, d, _ in dvalues}
    spinc = []
    complexes = {}
    for lab, d, cj in dvalues:
        if cj not in dmap or dmap[cj] != d:
            raise ConjDMismatch(f"d({lab}) = {d} but d({cj}) = {dmap.get(cj)}")
        c = unknot_complex(d, 0)
        for k in range(boxes_per_label):
            c = direct_sum(c, acyclic_primitive("box", d, 0, prefix=f"B{k}"))
        spinc.append(SpinCStructure(lab, cj, lab))
        complexes[lab] = c
    return KnotComplexFamily(name, tuple(spinc), complexes, Fraction(0))


def lens_unknot(p: int, q: int, boxes_per_label: int = 0) -> KnotComplexFamily:
    rows = [(str(i), lens_space_d(p, q, i), str(lens_conj(p, q, i))) for i in range(p)]
    return unknot_in_qhs(rows, boxes_per_label, name=f"U_L({p},{q})")


def floer_simple(entries: Iterable[tuple[str, object, object, str, str]], name: str = "floer_simple",
                 claimed_genus=None) -> KnotComplexFamily:
    """One generator per label; entries are (label, M, A, conj, pdk)."""
    entries = [(str(lab), frac(m), frac(a), str(cj), str(pd)) for lab, m, a, cj, pd in entries]
    spinc = tuple(SpinCStructure(lab, cj, pd) for lab, _, _, cj, pd in entries)
    complexes = {lab: unknot_complex(m, a, gid="x") for lab, m, a, _, _ in entries}
    fam = KnotComplexFamily(name, spinc, complexes, claimed_genus)
    fam.check()
    A = {lab: a for lab, _, a, _, _ in entries}
    inv = {v: k for k, v in fam.pdk.items()}
    for lab in A:
        partner = inv[fam.conj[lab]]
        if A[partner] != -A[lab]:
            raise SymmetryViolation(f"A({partner}) = {A[partner]} but -A({lab}) = {-A[lab]}")
    return fam


def lens_floer_simple(p: int, q: int) -> KnotComplexFamily:
    """Floer simple data over L(p, q) with PD[K] acting as i -> i + 1.

    Each label carries one generator at M = d(L(p,q), i) and
    A = (d(i) - d(i+1)) / 2, the middle grading forced by the d-invariants.
    """
    d = [lens_space_d(p, q, i) for i in range(p)]
    entries = [(str(i), d[i], (d[i] - d[(i + 1) % p]) / 2, str(lens_conj(p, q, i)), str((i + 1) % p))
               for i in range(p)]
    genus = max(e[2] for e in entries)
    return floer_simple(entries, name=f"simple_L({p},{q})", claimed_genus=genus)


# -- fuzz corpus --------------------------------------------------------------------

_CORES = ((0,), (1, 0, -1), (2, 1, 0, -1, -2), (3, 2, 0, -2, -3))


def _random_core(rng: random.Random, budget: int) -> KnotComplex:
    choices = [ad for ad in _CORES if len(ad) <= budget]
    c = staircase_complex(rng.choice(choices))
    if rng.random() < 0.4:
        from .algebra import dual

        c = dual(c)
    return c


def _pad_with_acyclics(rng: random.Random, c: KnotComplex, budget: int) -> KnotComplex:
    k = 0
    while budget >= 2 and rng.random() < 0.75:
        options = [p for p in PRIMITIVES if (4 if p == "box" else 2) <= budget]
        prim = rng.choice(options)
        piece = acyclic_primitive(prim, rng.randint(-3, 3), rng.randint(-2, 2), prefix=f"z{k}")
        if rng.random() < 0.5:
            piece = flip(piece)
            piece = shift(piece, 0, c.coset - piece.coset)
        else:
            piece = shift(piece, 0, c.coset)
        c = direct_sum(c, piece)
        budget -= len(piece)
        k += 1
    return c


def scramble(c: KnotComplex, rng: random.Random, moves: int) -> KnotComplex:
    for _ in range(moves):
        legal = legal_basis_changes(c)
        if not legal:
            break
        c = basis_change(c, *rng.choice(legal))
    return c


_OFFSETS = (Fraction(0), Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1), Fraction(3, 2))


def random_complex(seed: int, max_rank: int = 8, moves: int = 6) -> KnotComplexFamily:
    """Deterministic fuzz family: knot-like core plus shifted acyclic pieces, scrambled.

    One label (S^3-like, core centred at A = 0) or a conjugate pair of labels
    whose cores sit at A = +r and -r with equal d, so the Spin^c data stays
    self-consistent.
    """
    rng = random.Random(seed)
    dM = rng.randint(-2, 2)
    if rng.random() < 0.7:
        core = _random_core(rng, max_rank)
        c = _pad_with_acyclics(rng, shift(core, dM, 0), max_rank - len(core))
        return single_label(f"fuzz{seed}", scramble(c, rng, moves))
    r = rng.choice(_OFFSETS)
    complexes = {}
    for label, sign in (("0", 1), ("1", -1)):
        core = _random_core(rng, max_rank)
        c = _pad_with_acyclics(rng, shift(core, dM, sign * r), max_rank - len(core))
        complexes[label] = scramble(c, rng, moves)
    spinc = (SpinCStructure("0", "1", "0"), SpinCStructure("1", "0", "1"))
    return KnotComplexFamily(f"fuzz{seed}", spinc, complexes)


def fuzz_corpus(count: int, seed: int = 0, max_rank: int = 8) -> list[KnotComplexFamily]:
    return [random_complex(seed + i, max_rank) for i in range(count)]


def standard_families() -> list[KnotComplexFamily]:
    """Named families used throughout the tests and the acceptance suite."""
    from .algebra import dual_family

    trefoil = torus_knot(2, 3, claimed_genus=1)
    return [
        unknot(),
        trefoil,
        dual_family(trefoil),
        torus_knot(2, 5, claimed_genus=2),
        torus_knot(3, 4, claimed_genus=3),
        torus_knot(3, 5, claimed_genus=4),
        figure_eight(claimed_genus=1),
        cable_staircase((1, 0, -1), 2, 5, claimed_genus=4),
        lens_unknot(2, 1, boxes_per_label=2),
        lens_unknot(3, 1, boxes_per_label=1),
        lens_floer_simple(2, 1),
        lens_floer_simple(3, 1),
        lens_floer_simple(5, 2),
    ]


def corpus(fuzz: int = 20, seed: int = 1000) -> list[KnotComplexFamily]:
    return standard_families() + fuzz_corpus(fuzz, seed)
