"""Combinatorial knot Floer complexes.

A :class:`KnotComplex` models ``CFK^inf(Y, K, s)`` for a single Spin^c
structure.  Each generator ``x`` sits at the filtration origin ``[x, 0, A(x)]``
and carries a Maslov grading ``M`` and an Alexander grading ``A``.  An arrow
``x -> y`` stands for the term ``U^n y`` of ``d x``; the power ``n`` is never
stored, it is forced by homogeneity::

    n = (M(y) - M(x) + 1) / 2          (i-drop)
    A(x) - A(y) + n                     (j-drop, must be >= 0)

Coefficients are in F_2, so an arrow is either present or not.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Optional

KINDS = ("knot", "acyclic", "raw")


class ComplexError(Exception):
    """Base class for structural errors raised by complex operations."""


class CosetMismatch(ComplexError):
    pass


class IllegalBasisChange(ComplexError):
    pass


class ValidationError(ComplexError):
    """Raised when an operation needs a valid object and did not get one."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("; ".join(str(v) for v in report.violations) or "invalid")


def frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact rational {value!r}")
    return Fraction(value)


@dataclass(frozen=True, order=True)
class Generator:
    id: str
    maslov: Fraction
    alexander: Fraction

    def __post_init__(self):
        object.__setattr__(self, "maslov", frac(self.maslov))
        object.__setattr__(self, "alexander", frac(self.alexander))

    def sort_key(self):
        return (self.alexander, self.maslov, self.id)


def upower(m_from: Fraction, m_to: Fraction) -> Fraction:
    """Power of U forced on an arrow between generators of the given Maslov gradings."""
    return (m_to - m_from + 1) / 2


@dataclass(frozen=True)
class KnotComplex:
    """Finite bigraded complex over F_2[U], stored in canonical order.

    ``arrows`` is a tuple of ``(from_id, to_id)`` pairs.  Construction only
    normalizes ordering; use :func:`validate_complex` (or :meth:`check`) to
    verify the structural invariants.
    """

    generators: tuple[Generator, ...]
    arrows: tuple[tuple[str, str], ...] = ()
    kind: str = "knot"

    def __post_init__(self):
        gens = tuple(sorted(self.generators, key=Generator.sort_key))
        object.__setattr__(self, "generators", gens)
        order = {g.id: i for i, g in enumerate(gens)}
        big = len(gens)
        # coefficients are in F_2: a repeated arrow cancels against itself
        parity: set[tuple[str, str]] = set()
        for a, b in self.arrows:
            parity ^= {(str(a), str(b))}
        arrows = sorted(
            parity,
            key=lambda ab: (order.get(ab[0], big), order.get(ab[1], big), ab),
        )
        object.__setattr__(self, "arrows", tuple(arrows))

    # -- lookups --------------------------------------------------------------

    @cached_property
    def by_id(self) -> dict[str, Generator]:
        return {g.id: g for g in self.generators}

    @cached_property
    def index(self) -> dict[str, int]:
        return {g.id: i for i, g in enumerate(self.generators)}

    @cached_property
    def out_arrows(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = defaultdict(list)
        for a, b in self.arrows:
            out[a].append(b)
        return out

    def power(self, a: str, b: str) -> Fraction:
        return upower(self.by_id[a].maslov, self.by_id[b].maslov)

    def jdrop(self, a: str, b: str) -> Fraction:
        ga, gb = self.by_id[a], self.by_id[b]
        return ga.alexander - gb.alexander + upower(ga.maslov, gb.maslov)

    @property
    def coset(self) -> Fraction:
        """Common fractional part of the Alexander gradings (0 if empty)."""
        if not self.generators:
            return Fraction(0)
        return self.generators[0].alexander % 1

    @property
    def max_alexander(self) -> Fraction:
        return max(g.alexander for g in self.generators)

    @property
    def min_alexander(self) -> Fraction:
        return min(g.alexander for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def check(self) -> "KnotComplex":
        report = validate_complex(self)
        if not report.ok:
            raise ValidationError(report)
        return self

    def with_kind(self, kind: str) -> "KnotComplex":
        return KnotComplex(self.generators, self.arrows, kind)


@dataclass(frozen=True)
class SpinCStructure:
    label: str
    conj: str
    pdk: str


@dataclass(frozen=True)
class KnotComplexFamily:
    name: str
    spinc: tuple[SpinCStructure, ...]
    complexes: Mapping[str, KnotComplex]
    claimed_genus: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "spinc", tuple(sorted(self.spinc, key=lambda s: s.label)))
        object.__setattr__(self, "complexes", dict(sorted(self.complexes.items())))
        if self.claimed_genus is not None:
            object.__setattr__(self, "claimed_genus", frac(self.claimed_genus))

    def __hash__(self):
        return hash((self.name, self.spinc, tuple(self.complexes.items()), self.claimed_genus))

    @property
    def labels(self) -> list[str]:
        return [s.label for s in self.spinc]

    @cached_property
    def conj(self) -> dict[str, str]:
        return {s.label: s.conj for s in self.spinc}

    @cached_property
    def pdk(self) -> dict[str, str]:
        return {s.label: s.pdk for s in self.spinc}

    def __getitem__(self, label: str) -> KnotComplex:
        return self.complexes[label]

    def renamed(self, name: str, claimed_genus=...) -> "KnotComplexFamily":
        genus = self.claimed_genus if claimed_genus is ... else claimed_genus
        return KnotComplexFamily(name, self.spinc, self.complexes, genus)

    def check(self) -> "KnotComplexFamily":
        report = validate(self)
        if not report.ok:
            raise ValidationError(report)
        return self


def single_label(name: str, c: KnotComplex, claimed_genus=None, label: str = "0") -> KnotComplexFamily:
    """Family with one self-conjugate label, as for knots in S^3."""
    return KnotComplexFamily(name, (SpinCStructure(label, label, label),), {label: c}, claimed_genus)


# -- validation ---------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    label: Optional[str] = None

    def __str__(self):
        where = f"[{self.label}] " if self.label is not None else ""
        return f"{where}{self.code}: {self.message}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code: str, message: str, label: Optional[str] = None) -> None:
        self.violations.append(Violation(code, message, label))

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}


def validate_complex(c: KnotComplex, label: Optional[str] = None,
                     report: Optional[ValidationReport] = None) -> ValidationReport:
    """Report every violated invariant of a single complex."""
    report = report if report is not None else ValidationReport()
    add = lambda code, msg: report.add(code, msg, label)  # noqa: E731

    if c.kind not in KINDS:
        add("bad_kind", f"kind {c.kind!r} not in {KINDS}")
    if not c.generators and c.kind != "acyclic":
        add("empty", "no generators")

    seen: set[str] = set()
    for g in c.generators:
        if g.id in seen:
            add("duplicate_id", f"generator id {g.id!r} repeated")
        seen.add(g.id)
    if len(seen) != len(c.generators):
        return report

    if c.generators:
        a0, m0 = c.generators[0].alexander, c.generators[0].maslov
        for g in c.generators:
            if (g.alexander - a0).denominator != 1:
                add("alexander_coset", f"A({g.id})={g.alexander} not in coset of A={a0}")
            if (g.maslov - m0).denominator != 1:
                add("maslov_coset", f"M({g.id})={g.maslov} differs from M={m0} by a non-integer")

    structural_ok = True
    for a, b in c.arrows:
        if a not in c.by_id or b not in c.by_id:
            add("unknown_generator", f"arrow {a}->{b} references an unknown generator")
            structural_ok = False
            continue
        if a == b:
            add("self_arrow", f"arrow {a}->{b} is a loop")
            structural_ok = False
            continue
        n = c.power(a, b)
        if n.denominator != 1:
            add("upower_not_integer",
                f"arrow {a}->{b}: upower ≠ (M(to)−M(from)+1)/2 integer (got {n})")
            structural_ok = False
        elif n < 0:
            add("upower_negative", f"arrow {a}->{b}: upower {n} < 0")
            structural_ok = False
        else:
            jd = c.jdrop(a, b)
            if jd < 0:
                add("jdrop_negative", f"arrow {a}->{b}: Alexander filtration raised (j-drop {jd})")
                structural_ok = False

    if c.arrows and all(a in c.by_id and b in c.by_id for a, b in c.arrows):
        paths: dict[tuple[str, str], int] = defaultdict(int)
        out = c.out_arrows
        for x, y in c.arrows:
            for z in out.get(y, ()):
                paths[(x, z)] += 1
        for (x, z), count in sorted(paths.items()):
            if count % 2:
                add("d_squared", f"d^2 != 0: {count} paths {x}->...->{z}")
                structural_ok = False

    if structural_ok and c.kind in ("knot", "acyclic") and not report.violations:
        from .homology import forget_alexander, localized_rank

        rank = localized_rank(forget_alexander(c))
        if c.kind == "knot" and rank != 1:
            add("kind_knot_rank", f"kind=knot but localized homology rank is {rank}")
        if c.kind == "acyclic" and rank != 0:
            add("kind_acyclic_rank", f"kind=acyclic but localized homology rank is {rank}")
    return report


def validate(family: KnotComplexFamily) -> ValidationReport:
    """Report every violated invariant of a family (empty iff valid)."""
    report = ValidationReport()
    labels = [s.label for s in family.spinc]
    label_set = set(labels)
    if len(label_set) != len(labels):
        report.add("duplicate_label", "Spin^c labels repeated")
    if not labels:
        report.add("no_labels", "family has no Spin^c structures")

    conj, pdk = family.conj, family.pdk
    targets_ok = True
    for s in family.spinc:
        for what, target in (("conj", s.conj), ("pdk", s.pdk)):
            if target not in label_set:
                report.add("unknown_label", f"{what}({s.label}) = {target!r} is not a listed label", s.label)
                targets_ok = False
    for label in labels:
        if label not in family.complexes:
            report.add("missing_complex", "no complex for label", label)
    for label in family.complexes:
        if label not in label_set:
            report.add("unknown_label", "complex stored for an unlisted label", label)

    if targets_ok and labels:
        if any(conj[conj[s]] != s for s in labels):
            report.add("conj_not_involutive", "conj not involutive")
        if len(set(pdk.values())) != len(labels):
            report.add("pdk_not_permutation", "pdk is not a permutation")
        else:
            inv = {v: k for k, v in pdk.items()}
            if any(conj[pdk[s]] != inv[conj[s]] for s in labels):
                report.add("conj_pdk_relation", "conj∘pdk ≠ pdk⁻¹∘conj")

    for label, c in family.complexes.items():
        validate_complex(c, label, report)
    if family.claimed_genus is not None and family.claimed_genus < 0:
        report.add("negative_genus", f"claimed genus {family.claimed_genus} < 0")
    return report


# -- operations -----------------------------------------------------------------


def shift(c: KnotComplex, dM=0, dA=0) -> KnotComplex:
    """Shift every Maslov grading by ``dM`` and every Alexander grading by ``dA``."""
    dM, dA = frac(dM), frac(dA)
    gens = [Generator(g.id, g.maslov + dM, g.alexander + dA) for g in c.generators]
    return KnotComplex(tuple(gens), c.arrows, c.kind)


def _disjoint_ids(taken: set[str], ids: Iterable[str]) -> dict[str, str]:
    rename = {}
    for i in ids:
        new = i
        while new in taken:
            new += "'"
        taken.add(new)
        rename[i] = new
    return rename


def direct_sum(c1: KnotComplex, c2: KnotComplex, kind: Optional[str] = None) -> KnotComplex:
    """Disjoint union of two complexes.

    Colliding ids in ``c2`` get primes appended.  Unless ``kind`` is given the
    result is ``knot`` for knot ⊕ acyclic, ``acyclic`` for acyclic ⊕ acyclic
    and ``raw`` otherwise; an explicit ``kind`` is validated.
    """
    if c1.generators and c2.generators:
        if c1.coset != c2.coset:
            raise CosetMismatch(f"Alexander cosets differ: {c1.coset} vs {c2.coset}")
        if (c1.generators[0].maslov - c2.generators[0].maslov).denominator != 1:
            raise CosetMismatch("Maslov gradings differ by a non-integer")
    taken = {g.id for g in c1.generators}
    rename = _disjoint_ids(taken, [g.id for g in c2.generators])
    gens = list(c1.generators) + [Generator(rename[g.id], g.maslov, g.alexander) for g in c2.generators]
    arrows = list(c1.arrows) + [(rename[a], rename[b]) for a, b in c2.arrows]
    if kind is None:
        kinds = sorted((c1.kind, c2.kind))
        kind = {("acyclic", "knot"): "knot", ("acyclic", "acyclic"): "acyclic"}.get(tuple(kinds), "raw")
        return KnotComplex(tuple(gens), tuple(arrows), kind)
    return KnotComplex(tuple(gens), tuple(arrows), kind).check()


def flip(c: KnotComplex) -> KnotComplex:
    """Exchange the roles of i and j: (M, A) -> (M - 2A, -A).

    Each arrow's U-power becomes its former j-drop; arrows themselves are
    unchanged.  ``flip(flip(c)) == c``.
    """
    gens = [Generator(g.id, g.maslov - 2 * g.alexander, -g.alexander) for g in c.generators]
    return KnotComplex(tuple(gens), c.arrows, c.kind)


def basis_change(c: KnotComplex, x: str, y: str, k: int) -> KnotComplex:
    """Filtered change of basis ``x -> x + U^k y``.

    Requires ``M(x) = M(y) - 2k`` and ``A(y) - k <= A(x)``.  In the new basis
    ``d x' = d x + U^k d y`` and every arrow ``z -> x`` picks up a companion
    ``z -> y`` (toggled, since coefficients are in F_2).
    """
    if x == y or x not in c.by_id or y not in c.by_id:
        raise IllegalBasisChange(f"need two distinct generators, got {x!r}, {y!r}")
    if int(k) != k or k < 0:
        raise IllegalBasisChange(f"k must be a nonnegative integer, got {k!r}")
    gx, gy = c.by_id[x], c.by_id[y]
    if gx.maslov != gy.maslov - 2 * k:
        raise IllegalBasisChange(f"M({x})={gx.maslov} ≠ M({y})−2k = {gy.maslov - 2 * k}")
    if gy.alexander - k > gx.alexander:
        raise IllegalBasisChange(f"A({y})−k = {gy.alexander - k} > A({x}) = {gx.alexander}")

    arrows = set(c.arrows)
    for b in c.out_arrows.get(y, ()):
        arrows ^= {(x, b)}
    for z, w in c.arrows:
        if w == x:
            arrows ^= {(z, y)}
    return KnotComplex(c.generators, tuple(arrows), c.kind)


def legal_basis_changes(c: KnotComplex) -> list[tuple[str, str, int]]:
    """All (x, y, k) accepted by :func:`basis_change`, in canonical order."""
    moves = []
    for gx in c.generators:
        for gy in c.generators:
            if gx.id == gy.id:
                continue
            k = (gy.maslov - gx.maslov) / 2
            if k.denominator == 1 and k >= 0 and gy.alexander - k <= gx.alexander:
                moves.append((gx.id, gy.id, int(k)))
    return moves
