"""Homology of singly graded complexes over F_2[U].

Every computation here works on a :class:`GradedUComplex`, the image of a knot
complex (or one of its sub-complexes) once the Alexander filtration has been
used up.  Three independent routes are available:

* cancellation of U-power-0 arrows (:func:`reduce`), which is a chain homotopy
  equivalence and leaves homology untouched;
* minimal-power cancellation (:func:`smith_form`), a graded Smith normal form
  that splits the complex into free summands and ``F[U]/U^k`` pieces;
* truncation at ``U^N = 0`` followed by plain Gaussian elimination
  (:func:`truncated_f2_homology`), the brute-force oracle.

Acyclicity is tested at ``U = 0``.  By graded Nakayama a finitely generated
graded free complex over ``F[U]`` is acyclic exactly when its reduction mod
``U`` is.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Optional

from . import gf2
from .complex import KnotComplex, upower


class NoTower(Exception):
    """The complex has no free ``F[U]`` summand, so no d-invariant."""


@dataclass(frozen=True)
class GradedUComplex:
    generators: tuple[tuple[str, Fraction], ...]
    arrows: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        gens = tuple(sorted(((str(i), Fraction(m)) for i, m in self.generators), key=lambda g: (g[1], g[0])))
        object.__setattr__(self, "generators", gens)
        order = {g: i for i, (g, _) in enumerate(gens)}
        arrows = sorted(set(self.arrows), key=lambda ab: (order[ab[0]], order[ab[1]]))
        object.__setattr__(self, "arrows", tuple(arrows))

    @cached_property
    def maslov(self) -> dict[str, Fraction]:
        return dict(self.generators)

    @cached_property
    def order(self) -> dict[str, int]:
        return {g: i for i, (g, _) in enumerate(self.generators)}

    @cached_property
    def out_arrows(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = defaultdict(list)
        for a, b in self.arrows:
            out[a].append(b)
        return out

    def power(self, a: str, b: str) -> Fraction:
        return upower(self.maslov[a], self.maslov[b])

    def total_power(self) -> int:
        return int(sum(self.power(a, b) for a, b in self.arrows))

    def __len__(self):
        return len(self.generators)

    def is_valid(self) -> bool:
        for a, b in self.arrows:
            n = self.power(a, b)
            if n.denominator != 1 or n < 0:
                return False
        paths: dict[tuple[str, str], int] = defaultdict(int)
        for x, y in self.arrows:
            for z in self.out_arrows.get(y, ()):
                paths[(x, z)] += 1
        return all(v % 2 == 0 for v in paths.values())


@dataclass(frozen=True)
class HomologyProfile:
    localized_rank: int
    d: Optional[Fraction]
    torsion_orders: tuple[tuple[int, Fraction], ...]  # (order, grading of the generator)
    f2_dims: dict[Fraction, int] = field(default_factory=dict, compare=True)


def forget_alexander(c: KnotComplex) -> GradedUComplex:
    return GradedUComplex(tuple((g.id, g.maslov) for g in c.generators), c.arrows)


# -- cancellation ---------------------------------------------------------------


def _cancel(g: GradedUComplex, pick: Callable[[list[tuple[str, str]], dict[str, Fraction]], Optional[tuple[str, str]]],
            on_cancel: Optional[Callable[[str, str], None]] = None) -> GradedUComplex:
    M = g.maslov
    order = g.order
    out: dict[str, set[str]] = {x: set() for x in M}
    inn: dict[str, set[str]] = {x: set() for x in M}
    for a, b in g.arrows:
        out[a].add(b)
        inn[b].add(a)

    while True:
        arrows = sorted(((a, b) for a in out for b in out[a]), key=lambda ab: (order[ab[0]], order[ab[1]]))
        pivot = pick(arrows, M)
        if pivot is None:
            break
        x, y = pivot
        if on_cancel is not None:
            on_cancel(x, y)
        sources = [a for a in inn[y] if a != x]
        targets = [b for b in out[x] if b != y]
        for a in sources:
            for b in targets:
                if b in out[a]:
                    out[a].discard(b)
                    inn[b].discard(a)
                else:
                    out[a].add(b)
                    inn[b].add(a)
        for v in (x, y):
            for b in out.pop(v):
                inn[b].discard(v)
            for a in inn.pop(v):
                out[a].discard(v)
    survivors = tuple((x, M[x]) for x in out)
    return GradedUComplex(survivors, tuple((a, b) for a in out for b in out[a]))


def _first_power_zero(arrows, M):
    for a, b in arrows:
        if M[b] - M[a] + 1 == 0:
            return a, b
    return None


def _first_any(arrows, M):
    return arrows[0] if arrows else None


def _min_power(arrows, M):
    if not arrows:
        return None
    return min(arrows, key=lambda ab: M[ab[1]] - M[ab[0]])


def reduce(g: GradedUComplex) -> GradedUComplex:
    """Cancel U-power-0 arrows (first in canonical order) until none remain."""
    return _cancel(g, _first_power_zero)


def localized_rank(g: GradedUComplex) -> int:
    """Rank of homology after inverting U.

    Over ``F[U, U^-1]`` every arrow is a unit, so arrows of any power can be
    cancelled; the generators left standing are the free summands.
    """
    return len(_cancel(g, _first_any))


def smith_form(g: GradedUComplex) -> tuple[list[Fraction], list[tuple[int, Fraction]]]:
    """Graded Smith normal form by repeatedly cancelling a minimal-power arrow.

    With a globally minimal pivot ``x -> U^p y`` the substitutions
    ``a -> a + U^(r-p) x`` and ``y -> y + sum U^(q-p) b`` are legal over
    ``F[U]``, and ``x -> U^p y`` splits off as a summand.  Returns the gradings
    of the free generators and ``(order, grading)`` for each torsion summand.
    """
    torsion: list[tuple[int, Fraction]] = []
    M = g.maslov

    def record(x, y):
        p = upower(M[x], M[y])
        if p > 0:
            torsion.append((int(p), M[y]))

    rest = _cancel(g, _min_power, record)
    return sorted((m for _, m in rest.generators), reverse=True), sorted(torsion)


# -- truncation oracle ----------------------------------------------------------


def safe_truncation_level(g: GradedUComplex) -> int:
    """2 + #generators + sum of U-powers; exceeds every torsion order of g."""
    return 2 + len(g) + g.total_power()


class TruncatedHomology:
    """Homology of ``g / U^n g`` over F_2, basis ``{U^a x : 0 <= a < n}``."""

    def __init__(self, g: GradedUComplex, n: int):
        if n < 1:
            raise ValueError("truncation level must be positive")
        self.g = g
        self.n = n
        self._bases: dict[Fraction, list[tuple[str, int]]] = {}

    def basis(self, m: Fraction) -> list[tuple[str, int]]:
        if m not in self._bases:
            elems = []
            for x, mx in self.g.generators:
                a = (mx - m) / 2
                if a.denominator == 1 and 0 <= a < self.n:
                    elems.append((x, int(a)))
            self._bases[m] = elems
        return self._bases[m]

    def boundary_images(self, m: Fraction) -> list[int]:
        """Images of the degree-m basis, as bit vectors over the degree m-1 basis."""
        target = {e: i for i, e in enumerate(self.basis(m - 1))}
        images = []
        for x, a in self.basis(m):
            v = 0
            for y in self.g.out_arrows.get(x, ()):
                b = a + int(self.g.power(x, y))
                if b < self.n:
                    v ^= 1 << target[(y, b)]
            images.append(v)
        return images

    def gradings(self) -> list[Fraction]:
        return sorted({mx - 2 * a for _, mx in self.g.generators for a in range(self.n)}, reverse=True)

    @cached_property
    def dims(self) -> dict[Fraction, int]:
        ranks: dict[Fraction, int] = {}
        for m in self.gradings():
            ranks[m] = gf2.rank(self.boundary_images(m))
        out = {}
        for m in self.gradings():
            dim = len(self.basis(m)) - ranks[m] - ranks.get(m + 1, 0)
            if dim:
                out[m] = dim
        return out

    def u_power_nonzero(self, m: Fraction) -> bool:
        """Is multiplication by U^(n-1) nonzero on homology in grading m?"""
        basis = self.basis(m)
        cycles = gf2.kernel(self.boundary_images(m))
        if not cycles:
            return False
        t = m - 2 * (self.n - 1)
        target = {e: i for i, e in enumerate(self.basis(t))}
        boundaries = gf2.echelon(self.boundary_images(t + 1))
        for z in cycles:
            v = 0
            for i, (x, a) in enumerate(basis):
                if a == 0 and (z >> i) & 1:
                    v ^= 1 << target[(x, self.n - 1)]
            if v and not gf2.in_span(v, boundaries):
                return True
        return False

    def tower_top(self) -> Optional[Fraction]:
        for m in sorted({mx for _, mx in self.g.generators}, reverse=True):
            if self.u_power_nonzero(m):
                return m
        return None


def truncated_f2_homology(g: GradedUComplex, n: int) -> TruncatedHomology:
    return TruncatedHomology(g, n)


# -- derived quantities ---------------------------------------------------------


@lru_cache(maxsize=65536)
def d_invariant(g: GradedUComplex) -> Fraction:
    """Maximal Maslov grading of a non-torsion homology class.

    The complex is first reduced (a homotopy equivalence), then truncated at
    the safe level, where the tower top is the highest grading on which
    ``U^(N-1)`` acts nontrivially.
    """
    h = reduce(g)
    if localized_rank(h) == 0:
        raise NoTower("complex has no free F[U] summand")
    top = truncated_f2_homology(h, safe_truncation_level(h)).tower_top()
    if top is None:  # pragma: no cover - excluded by the truncation bound
        raise NoTower("truncation found no tower")
    return top


def hat_rank(g: GradedUComplex) -> int:
    """Dimension of the homology of the U = 0 complex."""
    idx = g.order
    images = [0] * len(g)
    for a, b in g.arrows:
        if g.power(a, b) == 0:
            images[idx[a]] |= 1 << idx[b]
    return len(g) - 2 * gf2.rank(images)


def is_acyclic(g: GradedUComplex) -> bool:
    return hat_rank(g) == 0


def homology_profile(g: GradedUComplex, n: Optional[int] = None) -> HomologyProfile:
    free, torsion = smith_form(g)
    level = n if n is not None else safe_truncation_level(g)
    return HomologyProfile(
        localized_rank=len(free),
        d=free[0] if free else None,
        torsion_orders=tuple(torsion),
        f2_dims=truncated_f2_homology(g, level).dims,
    )
