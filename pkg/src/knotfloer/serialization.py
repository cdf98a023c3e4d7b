"""JSON file format for knot complex families.

    {"name": str,
     "claimed_genus": "p/q" | null,
     "spinc": [{"label": str, "conj": str, "pdk": str}, ...],
     "complexes": {label: {"kind": "knot" | "acyclic" | "raw",
                           "generators": [{"id": str, "m": "p/q", "a": "p/q"}, ...],
                           "arrows": [{"from": str, "to": str}, ...]}}}

Rationals are strings ``"n"`` or ``"n/d"``.  Arrow powers are not part of the
format; they are recomputed from the gradings and validated on load.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from .complex import Generator, KnotComplex, KnotComplexFamily, SpinCStructure, ValidationError, validate

_RATIONAL = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class ParseError(ValueError):
    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(field)
        super().__init__(f"{' '.join(where)}: {message}" if where else message)


def parse_rational(value: Any, field: str = "rational") -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"expected a rational, got {value!r}", field)
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ParseError(f"expected a rational string like '3' or '-1/2', got {value!r}", field)
    m = _RATIONAL.match(value)
    if not m:
        raise ParseError(f"malformed rational {value!r}", field)
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator in {value!r}", field)
    return Fraction(int(m.group(1)), den)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def complex_to_dict(c: KnotComplex) -> dict:
    return {
        "kind": c.kind,
        "generators": [
            {"id": g.id, "m": format_rational(g.maslov), "a": format_rational(g.alexander)} for g in c.generators
        ],
        "arrows": [{"from": a, "to": b} for a, b in c.arrows],
    }


def family_to_dict(f: KnotComplexFamily) -> dict:
    return {
        "name": f.name,
        "claimed_genus": None if f.claimed_genus is None else format_rational(f.claimed_genus),
        "spinc": [{"label": s.label, "conj": s.conj, "pdk": s.pdk} for s in f.spinc],
        "complexes": {label: complex_to_dict(c) for label, c in f.complexes.items()},
    }


def serialize_family(f: KnotComplexFamily) -> str:
    return json.dumps(family_to_dict(f), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _require(obj: dict, key: str, kind, field: str):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing key {key!r}", field)
    value = obj[key]
    if not isinstance(value, kind):
        raise ParseError(f"expected {getattr(kind, '__name__', kind)}, got {type(value).__name__}", f"{field}.{key}")
    return value


def complex_from_dict(data: dict, field: str) -> KnotComplex:
    kind = _require(data, "kind", str, field)
    gens = []
    for i, g in enumerate(_require(data, "generators", list, field)):
        where = f"{field}.generators[{i}]"
        gid = _require(g, "id", str, where)
        gens.append(Generator(gid, parse_rational(_require(g, "m", (str, int), where), f"{where}.m"),
                              parse_rational(_require(g, "a", (str, int), where), f"{where}.a")))
    arrows = []
    for i, a in enumerate(data.get("arrows", [])):
        where = f"{field}.arrows[{i}]"
        arrows.append((_require(a, "from", str, where), _require(a, "to", str, where)))
    return KnotComplex(tuple(gens), tuple(arrows), kind)


def family_from_dict(data: dict, check: bool = True) -> KnotComplexFamily:
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    name = _require(data, "name", str, "$")
    genus = data.get("claimed_genus")
    genus = None if genus is None else parse_rational(genus, "$.claimed_genus")
    spinc = []
    for i, s in enumerate(_require(data, "spinc", list, "$")):
        where = f"$.spinc[{i}]"
        spinc.append(SpinCStructure(_require(s, "label", str, where), _require(s, "conj", str, where),
                                    _require(s, "pdk", str, where)))
    complexes = {
        str(label): complex_from_dict(c, f"$.complexes[{label!r}]")
        for label, c in _require(data, "complexes", dict, "$").items()
    }
    family = KnotComplexFamily(name, tuple(spinc), complexes, genus)
    if check:
        report = validate(family)
        if not report.ok:
            raise ValidationError(report)
    return family


def parse_family(text: str, check: bool = True) -> KnotComplexFamily:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from exc
    return family_from_dict(data, check)


def load_family(path: str | Path, check: bool = True) -> KnotComplexFamily:
    return parse_family(Path(path).read_text(encoding="utf-8"), check)


def save_family(f: KnotComplexFamily, path: str | Path) -> None:
    Path(path).write_text(serialize_family(f), encoding="utf-8")
