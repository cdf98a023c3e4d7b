"""Command-line interface: ``knotfloer <command> ...`` or ``python3 -m knotfloer``.

Exit codes: 0 success or a check that holds (or is inapplicable), 1 a
violated check, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import checks, families
from .algebra import dual_family, tensor_family
from .complex import ComplexError, ValidationError, validate
from .invariants import InvariantError, InvariantReport, genus_report
from .serialization import ParseError, format_rational, load_family, parse_rational, serialize_family

EXIT_OK, EXIT_VIOLATED, EXIT_INVALID = 0, 1, 2

CSV_COLUMNS = ("label", "s", "V", "H", "nu_plus_s", "r_s", "d_s", "tau",
               "nu_plus", "nu_plus_dual", "genus_bound", "sharp")


class InvalidInput(Exception):
    pass


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, Fraction):
        return format_rational(x)
    return str(x)


def report_to_dict(rep: InvariantReport) -> dict:
    return {
        "name": rep.name,
        "nu_plus": _fmt(rep.nu_plus),
        "nu_plus_dual": _fmt(rep.nu_plus_dual),
        "genus_bound": _fmt(rep.genus_lower_bound),
        "claimed_genus": None if rep.claimed_genus is None else _fmt(rep.claimed_genus),
        "sharp": rep.sharp,
        "totally_locally_trivial": rep.totally_locally_trivial,
        "labels": [
            {
                "label": row.label,
                "nu_plus_s": _fmt(row.nu_plus_s),
                "r_s": _fmt(row.r_s),
                "d_s": _fmt(row.d_s),
                "tau": None if row.tau is None else _fmt(row.tau),
                "locally_trivial": row.locally_trivial,
                "V": {_fmt(s): v for s, v in row.v_table.items()},
                "H": {_fmt(s): h for s, h in row.h_table.items()},
            }
            for row in rep.labels
        ],
    }


def render_csv(rep: InvariantReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rep.labels:
        for s, v in row.v_table.items():
            w.writerow([row.label, _fmt(s), v, row.h_table[s], _fmt(row.nu_plus_s), _fmt(row.r_s),
                        _fmt(row.d_s), _fmt(row.tau), _fmt(rep.nu_plus), _fmt(rep.nu_plus_dual),
                        _fmt(rep.genus_lower_bound), _fmt(rep.sharp)])
    return buf.getvalue()


def render_text(rep: InvariantReport) -> str:
    out = [f"{rep.name}"]
    for row in rep.labels:
        tau = "n/a" if row.tau is None else _fmt(row.tau)
        out.append(f"  label {row.label}: nu+={_fmt(row.nu_plus_s)} r={_fmt(row.r_s)} d={_fmt(row.d_s)} "
                   f"tau={tau} locally_trivial={_fmt(row.locally_trivial)}")
        s_col = [_fmt(s) for s in row.v_table]
        width = max(len(x) for x in s_col + ["s"])
        out.append("    " + "s".rjust(width) + "  V  H")
        for s, label in zip(row.v_table, s_col):
            out.append(f"    {label.rjust(width)} {row.v_table[s]:>2} {row.h_table[s]:>2}")
    claimed = "unknown" if rep.claimed_genus is None else _fmt(rep.claimed_genus)
    sharp = "unknown" if rep.sharp is None else _fmt(rep.sharp)
    out.append(f"  nu+={_fmt(rep.nu_plus)} nu+(dual)={_fmt(rep.nu_plus_dual)} "
               f"genus_bound={_fmt(rep.genus_lower_bound)} claimed_genus={claimed} sharp={sharp}")
    out.append(f"  totally_locally_trivial={_fmt(rep.totally_locally_trivial)}")
    return "\n".join(out) + "\n"


def render_check(result: checks.TheoremCheckResult, fmt: str) -> str:
    data = result.to_dict()
    if fmt == "json":
        return json.dumps(data, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("theorem", "inputs", "verdict", "instances", "reason", "witness"))
        w.writerow((data["theorem"], ";".join(data["inputs"]), data["verdict"], data["instances"],
                    data["reason"], json.dumps(data["witness"], sort_keys=True)))
        return buf.getvalue()
    shown = result.inputs if len(result.inputs) <= 6 else result.inputs[:6] + [f"... ({len(result.inputs)} total)"]
    lines = [f"{result.theorem}: {result.verdict}", f"  inputs: {', '.join(shown)}",
             f"  instances checked: {result.instances}"]
    if result.reason:
        lines.append(f"  reason: {result.reason}")
    if data["witness"] is not None:
        lines.append(f"  witness: {json.dumps(data['witness'], sort_keys=True)}")
    for key, value in sorted(data["notes"].items()):
        lines.append(f"  {key}: {json.dumps(value, sort_keys=True)}")
    return "\n".join(lines) + "\n"


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str):
    try:
        return load_family(path)
    except OSError as exc:
        raise InvalidInput(f"{path}: {exc.strerror or exc}") from exc


# -- commands -----------------------------------------------------------------


def cmd_validate(args) -> int:
    try:
        fam = load_family(args.file, check=False)
    except OSError as exc:
        raise InvalidInput(f"{args.file}: {exc.strerror or exc}") from exc
    report = validate(fam)
    if args.format == "json":
        payload = {"name": fam.name, "ok": report.ok,
                   "violations": [{"code": v.code, "label": v.label, "message": v.message}
                                  for v in report.violations]}
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.output)
    else:
        lines = [f"{fam.name}: {'valid' if report.ok else 'INVALID'}"]
        lines += [f"  {v}" for v in report.violations]
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_invariants(args) -> int:
    fam = _load(args.file)
    rep = genus_report(fam, pad=args.window)
    if args.format == "json":
        text = json.dumps(report_to_dict(rep), sort_keys=True, indent=2) + "\n"
    elif args.format == "csv":
        text = render_csv(rep)
    else:
        text = render_text(rep)
    _emit(text, args.output)
    return EXIT_OK


def cmd_tensor(args) -> int:
    f1, f2 = _load(args.first), _load(args.second)
    _emit(serialize_family(tensor_family(f1, f2, args.name)), args.output)
    return EXIT_OK


def cmd_dual(args) -> int:
    _emit(serialize_family(dual_family(_load(args.file), args.name)), args.output)
    return EXIT_OK


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InvalidInput(f"expected comma-separated integers, got {text!r}") from exc


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise InvalidInput(f"family {args.constructor} needs " + ", ".join("--" + n for n in missing))


def cmd_family(args) -> int:
    genus = None if args.genus is None else parse_rational(args.genus, "--genus")
    kind = args.constructor
    if kind == "unknot":
        fam = families.unknot()
    elif kind == "staircase":
        _need(args, "exponents")
        fam = families.staircase(_ints(args.exponents), claimed_genus=genus)
    elif kind == "torus":
        _need(args, "p", "q")
        fam = families.torus_knot(args.p, args.q, claimed_genus=genus)
    elif kind == "cable":
        _need(args, "exponents", "p", "q")
        fam = families.cable_staircase(_ints(args.exponents), args.p, args.q, claimed_genus=genus)
    elif kind == "figure-eight":
        fam = families.figure_eight(claimed_genus=genus)
    elif kind == "unknot-in-qhs":
        _need(args, "p", "q")
        fam = families.lens_unknot(args.p, args.q, boxes_per_label=args.boxes)
    elif kind == "floer-simple":
        _need(args, "p", "q")
        fam = families.lens_floer_simple(args.p, args.q)
    else:  # random
        fam = families.random_complex(args.seed, max_rank=args.max_rank)
    if args.name:
        fam = fam.renamed(args.name)
    if genus is not None and kind in ("unknot-in-qhs", "floer-simple", "random", "unknot"):
        fam = fam.renamed(fam.name, genus)
    _emit(serialize_family(fam), args.output)
    return EXIT_OK


_BINARY = {
    "v-subadd": checks.check_v_subadditivity,
    "nu-subadd": checks.check_nu_subadditivity,
    "d-additivity": checks.check_d_additivity,
    "genus-additivity": checks.check_genus_additivity,
}
_UNARY = {
    "tlt-symmetry": checks.check_tlt_symmetry,
    "middle-dual": checks.check_middle_dual,
}


def run_check(theorem: str, fams: Sequence, p: Optional[int] = None, q: Optional[int] = None) -> checks.TheoremCheckResult:
    if theorem in _BINARY:
        if len(fams) != 2:
            raise InvalidInput(f"{theorem} takes exactly two family files")
        return _BINARY[theorem](*fams)
    if theorem in _UNARY:
        if len(fams) != 1:
            raise InvalidInput(f"{theorem} takes exactly one family file")
        return _UNARY[theorem](fams[0])
    if theorem == "additivity":
        if not fams:
            raise InvalidInput("additivity takes a family file, optionally followed by partner files")
        others = list(fams[1:]) or families.standard_families()
        return checks.check_additivity(fams[0], others)
    if theorem == "cabling":
        if len(fams) != 1 or p is None or q is None:
            raise InvalidInput("cabling takes one family file and --p, --q")
        try:
            return checks.check_cabling(fams[0], p, q)
        except families.FamilyError as exc:
            raise InvalidInput(str(exc)) from exc
    raise InvalidInput(f"unknown theorem {theorem!r}")


def fuzz_check(theorem: str, count: int, seed: int, max_rank: int = 8) -> checks.TheoremCheckResult:
    """Run a check over ``count`` seeded inputs (pairs for two-input theorems)."""
    if theorem in _BINARY:
        pool = families.fuzz_corpus(2 * count, seed, max_rank)
        runs = (run_check(theorem, [pool[2 * i], pool[2 * i + 1]]) for i in range(count))
    elif theorem in _UNARY:
        runs = (run_check(theorem, [f]) for f in families.fuzz_corpus(count, seed, max_rank))
    elif theorem == "additivity":
        partners = families.standard_families()
        runs = (checks.check_additivity(f, partners) for f in families.fuzz_corpus(count, seed, max_rank))
    else:
        raise InvalidInput(f"{theorem} has no fuzz mode")
    return checks.combine(theorem, runs)


def cmd_check(args) -> int:
    if args.fuzz:
        if args.files:
            raise InvalidInput("--fuzz generates its own inputs; do not pass files")
        result = fuzz_check(args.theorem, args.fuzz, args.seed, args.max_rank)
    else:
        result = run_check(args.theorem, [_load(p) for p in args.files], args.p, args.q)
    _emit(render_check(result, args.format), args.output)
    return result.exit_code


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="knotfloer", description="Concordance invariants of knot Floer complexes.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a family file against every invariant")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariants", parents=[common], help="V/H tables, nu+, r, d, tau and the genus bound")
    p.add_argument("file")
    p.add_argument("--window", type=int, default=1, help="pad the s-window by this many steps beyond [min A, max A]")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("tensor", parents=[common], help="connected sum of two families")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--name")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("dual", parents=[common], help="mirror family")
    p.add_argument("file")
    p.add_argument("--name")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("family", parents=[common], help="write a built-in family as JSON")
    p.add_argument("constructor", choices=("unknot", "staircase", "torus", "cable", "figure-eight",
                                           "unknot-in-qhs", "floer-simple", "random"))
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--exponents", help="comma-separated Alexander exponents, e.g. 1,0,-1")
    p.add_argument("--genus", help="claimed 4-genus, e.g. 1 or 3/2")
    p.add_argument("--boxes", type=int, default=0, help="acyclic boxes per label (unknot-in-qhs)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-rank", type=int, default=8)
    p.add_argument("--name")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("check", parents=[common], help="run a theorem check")
    p.add_argument("theorem", choices=checks.THEOREMS)
    p.add_argument("files", nargs="*")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--fuzz", type=int, default=0, help="check this many seeded random inputs instead of files")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-rank", type=int, default=8)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InvalidInput, ParseError, ValidationError, ComplexError, InvariantError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
