"""Concordance invariants: V, H, nu+, the middle Alexander grading, tau.

Relative Spin^c structures over a label are represented by their Alexander
values ``s`` in ``coset + Z``.  For such an ``s`` the sub-complex ``A^-_s`` is
spanned by ``U^m(g) g`` with ``m(g) = max(0, ceil(A(g) - s))``, and

    V(s) = (d(B^-) - d(A^-_s)) / 2.

H is V of the i<->j flipped complex at ``-s``.  With this choice
``H(s) - V(s) = s - r`` where ``r = (d(c) - d(flip c)) / 2``, so the balance
point V = H is unique and equals r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from . import gf2
from .algebra import dual
from .complex import KnotComplex, KnotComplexFamily, frac, flip
from .homology import GradedUComplex, d_invariant, forget_alexander, hat_rank, localized_rank


class InvariantError(Exception):
    pass


class NotKnotLike(InvariantError):
    pass


class NonIntegerV(InvariantError):
    pass


class NoBalancePoint(InvariantError):
    pass


class MultipleBalancePoints(InvariantError):
    pass


class HatRankNotOne(InvariantError):
    pass


def a_subcomplex(c: KnotComplex, s) -> GradedUComplex:
    """``A^-_s = C{max(i, j - s) <= 0}`` as a graded F[U]-complex."""
    s = frac(s)
    gens = []
    for g in c.generators:
        m = max(0, math.ceil(g.alexander - s))
        gens.append((g.id, g.maslov - 2 * m))
    return GradedUComplex(tuple(gens), c.arrows)


@lru_cache(maxsize=4096)
def _require_knot(c: KnotComplex) -> None:
    rank = localized_rank(forget_alexander(c))
    if rank != 1:
        raise NotKnotLike(f"localized homology rank is {rank}, expected 1")


def d_of(c: KnotComplex) -> Fraction:
    """d-invariant of ``B^- = C{i <= 0}``."""
    return d_invariant(forget_alexander(c))


@lru_cache(maxsize=65536)
def v_invariant(c: KnotComplex, s) -> int:
    _require_knot(c)
    s = frac(s)
    diff = (d_of(c) - d_invariant(a_subcomplex(c, s))) / 2
    if diff.denominator != 1 or diff < 0:
        raise NonIntegerV(f"V at s={s} would be {diff}")
    return int(diff)


def h_invariant(c: KnotComplex, s) -> int:
    return v_invariant(flip(c), -frac(s))


def window(c: KnotComplex, pad: int = 1) -> list[Fraction]:
    """Alexander values ``min A - pad, ..., max A + pad`` (all in the coset)."""
    lo, hi = c.min_alexander - pad, c.max_alexander + pad
    return [lo + k for k in range(int(hi - lo) + 1)]


def v_table(c: KnotComplex, pad: int = 1) -> dict[Fraction, int]:
    return {s: v_invariant(c, s) for s in window(c, pad)}


@lru_cache(maxsize=4096)
def nu_plus_s(c: KnotComplex) -> Fraction:
    """Smallest s in the coset with V(s) = 0.

    The scan starts at max A, where V vanishes, and walks down until V
    becomes positive; V is nonincreasing so nothing below can vanish again.
    """
    s = c.max_alexander
    while v_invariant(c, s - 1) == 0:
        s -= 1
    return s


@dataclass(frozen=True)
class NuPlus:
    per_label: dict[str, Fraction]
    value: Fraction


def nu_plus(family: KnotComplexFamily) -> NuPlus:
    per = {label: nu_plus_s(family[label]) for label in family.labels}
    return NuPlus(per, max(per.values()))


def nu_plus_dual(family: KnotComplexFamily) -> Fraction:
    """nu+ of the dual family; the max over labels does not need relabeling."""
    return max(nu_plus_s(dual(family[label])) for label in family.labels)


@dataclass(frozen=True)
class MiddleGrading:
    r_balance: Fraction
    r_formula: Fraction
    consistent: bool

    def __neg__(self):
        return MiddleGrading(-self.r_balance, -self.r_formula, self.consistent)


@lru_cache(maxsize=4096)
def middle_grading(c: KnotComplex) -> MiddleGrading:
    _require_knot(c)
    hits = [s for s in window(c) if v_invariant(c, s) == h_invariant(c, s)]
    if not hits:
        raise NoBalancePoint("no s with V(s) = H(s)")
    if len(hits) > 1:
        raise MultipleBalancePoints(f"V = H at {', '.join(map(str, hits))}")
    r_formula = (d_of(c) - d_of(flip(c))) / 2
    return MiddleGrading(hits[0], r_formula, hits[0] == r_formula)


@dataclass(frozen=True)
class MiddleSpectrum:
    values: dict[str, Fraction]
    a_max: Fraction
    a_min: Fraction
    symmetric: bool
    label_symmetric: bool  # r at pdk^-1(conj s) equals -r at s


def middle_spectrum(family: KnotComplexFamily) -> MiddleSpectrum:
    values = {label: middle_grading(family[label]).r_balance for label in family.labels}
    multiset = sorted(values.values())
    inv = {v: k for k, v in family.pdk.items()}
    label_symmetric = all(values[inv[family.conj[s]]] == -values[s] for s in values)
    return MiddleSpectrum(
        values=values,
        a_max=multiset[-1],
        a_min=multiset[0],
        symmetric=multiset == sorted(-r for r in multiset),
        label_symmetric=label_symmetric,
    )


@lru_cache(maxsize=4096)
def tau(c: KnotComplex) -> Fraction:
    """Minimal Alexander level of a cycle carrying the U = 0 homology class."""
    _require_knot(c)
    g = forget_alexander(c)
    if hat_rank(g) != 1:
        raise HatRankNotOne(f"U=0 homology has dimension {hat_rank(g)}")
    idx = c.index
    images = [0] * len(c)
    for a, b in c.arrows:
        if c.power(a, b) == 0:
            images[idx[a]] |= 1 << idx[b]
    boundaries = gf2.echelon(images)
    for level in sorted({gen.alexander for gen in c.generators}):
        sub = [idx[gen.id] for gen in c.generators if gen.alexander <= level]
        for combo in gf2.kernel([images[i] for i in sub]):
            z = 0
            for j, i in enumerate(sub):
                if (combo >> j) & 1:
                    z |= 1 << i
            if not gf2.in_span(z, boundaries):
                return level
    raise HatRankNotOne("homology class not carried by any filtration level")  # pragma: no cover


def locally_trivial_complex(c: KnotComplex) -> bool:
    """V(c, r) = 0 and V(dual c, -r) = 0 at the middle grading r."""
    r = middle_grading(c).r_balance
    return v_invariant(c, r) == 0 and v_invariant(dual(c), -r) == 0


def is_locally_trivial(family: KnotComplexFamily, label: str) -> bool:
    return locally_trivial_complex(family[label])


def is_totally_locally_trivial(family: KnotComplexFamily) -> bool:
    return all(is_locally_trivial(family, label) for label in family.labels)


@dataclass
class LabelReport:
    label: str
    v_table: dict[Fraction, int]
    h_table: dict[Fraction, int]
    nu_plus_s: Fraction
    r_s: Fraction
    d_s: Fraction
    tau: Optional[Fraction]
    locally_trivial: bool


@dataclass
class InvariantReport:
    name: str
    labels: list[LabelReport]
    nu_plus: Fraction
    nu_plus_dual: Fraction
    genus_lower_bound: Fraction
    claimed_genus: Optional[Fraction] = None
    sharp: Optional[bool] = None
    totally_locally_trivial: bool = field(default=False)


def genus_report(family: KnotComplexFamily, pad: int = 1) -> InvariantReport:
    rows = []
    for label in family.labels:
        c = family[label]
        try:
            t = tau(c)
        except HatRankNotOne:
            t = None
        table = v_table(c, pad)
        rows.append(LabelReport(
            label=label,
            v_table=table,
            h_table={s: h_invariant(c, s) for s in table},
            nu_plus_s=nu_plus_s(c),
            r_s=middle_grading(c).r_balance,
            d_s=d_of(c),
            tau=t,
            locally_trivial=locally_trivial_complex(c),
        ))
    nu = max(r.nu_plus_s for r in rows)
    nu_dual = nu_plus_dual(family)
    bound = max(nu, nu_dual)
    sharp = None if family.claimed_genus is None else bound == family.claimed_genus
    return InvariantReport(
        name=family.name,
        labels=rows,
        nu_plus=nu,
        nu_plus_dual=nu_dual,
        genus_lower_bound=bound,
        claimed_genus=family.claimed_genus,
        sharp=sharp,
        totally_locally_trivial=all(r.locally_trivial for r in rows),
    )
