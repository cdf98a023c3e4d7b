"""Connected sums (tensor products) and mirrors (duals) of knot complexes."""

from __future__ import annotations

from .complex import ComplexError, Generator, KnotComplex, KnotComplexFamily, SpinCStructure


def _pair_id(a: str, b: str) -> str:
    return f"{a}|{b}"


def tensor(c1: KnotComplex, c2: KnotComplex) -> KnotComplex:
    """Künneth tensor product over F_2[U].

    Generators are pairs with gradings added.  ``d(g ⊗ h) = dg ⊗ h + g ⊗ dh``;
    there are no signs over F_2.  The output is not reduced.
    """
    gens = []
    seen = set()
    for g in c1.generators:
        for h in c2.generators:
            gid = _pair_id(g.id, h.id)
            if gid in seen:
                raise ComplexError(f"tensor id collision on {gid!r}")
            seen.add(gid)
            gens.append(Generator(gid, g.maslov + h.maslov, g.alexander + h.alexander))
    arrows = []
    for x, y in c1.arrows:
        for h in c2.generators:
            arrows.append((_pair_id(x, h.id), _pair_id(y, h.id)))
    for x, y in c2.arrows:
        for g in c1.generators:
            arrows.append((_pair_id(g.id, x), _pair_id(g.id, y)))

    if "acyclic" in (c1.kind, c2.kind):
        kind = "acyclic"
    elif c1.kind == c2.kind == "knot":
        kind = "knot"
    else:
        kind = "raw"
    return KnotComplex(tuple(gens), tuple(arrows), kind)


def tensor_family(f1: KnotComplexFamily, f2: KnotComplexFamily, name: str | None = None) -> KnotComplexFamily:
    """Family of the connected sum, labels indexed by pairs ``s|t``.

    Conjugation and the PD[K]-shift act componentwise.  The claimed genus is
    not propagated; the sum genus is something to be certified, not assumed.
    """
    spinc = []
    complexes = {}
    for s in f1.spinc:
        for t in f2.spinc:
            label = _pair_id(s.label, t.label)
            spinc.append(SpinCStructure(label, _pair_id(s.conj, t.conj), _pair_id(s.pdk, t.pdk)))
            complexes[label] = tensor(f1[s.label], f2[t.label])
    return KnotComplexFamily(name or f"{f1.name}#{f2.name}", tuple(spinc), complexes)


def dual(c: KnotComplex) -> KnotComplex:
    """Dual complex: (M, A) -> (-M, -A) and every arrow reversed."""
    gens = [Generator(g.id, -g.maslov, -g.alexander) for g in c.generators]
    return KnotComplex(tuple(gens), tuple((b, a) for a, b in c.arrows), c.kind)


def dual_family(f: KnotComplexFamily, name: str | None = None) -> KnotComplexFamily:
    """Family of ``(-Y, -K)``: label u carries ``dual(c[conj u])``, pdk is inverted."""
    inv = {v: k for k, v in f.pdk.items()}
    spinc = tuple(SpinCStructure(s.label, s.conj, inv[s.label]) for s in f.spinc)
    complexes = {s.label: dual(f[s.conj]) for s in f.spinc}
    if name is None:
        name = f.name[1:] if f.name.startswith("-") else f"-{f.name}"
    return KnotComplexFamily(name, spinc, complexes, f.claimed_genus)
