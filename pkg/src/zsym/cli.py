"""Command-line interface: ``zsym census | verify | equiv | connection | export``.

Every subcommand exits with status 0 iff all of its checks pass, 1 if a
check fails, and 2 on invalid input.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .census import CaseSpec, build_grading, emit, run_census
from .equivalence import EquivalenceError, check_canonical, inequivalence_certificate
from .gradings import GradingError, check_grading, dual_eigenspaces, dumps, loads
from .symspace import SymSpaceError, build_space

log = logging.getLogger("zsym")


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")


def _load(path: str):
    try:
        return loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        raise SystemExit(_fail(f"cannot read grading from {path}: {exc}"))


def _fail(msg: str) -> int:
    print(f"zsym: error: {msg}", file=sys.stderr)
    return 2


def cmd_census(args) -> int:
    t0 = time.perf_counter()
    reports = run_census(args.family, args.max_n, tensors=args.tensors)
    elapsed = time.perf_counter() - t0
    _write(emit(reports, args.format), args.out)
    ok = all(r.passed for r in reports)
    log.info("%d cases, %d passed, %.1f s", len(reports), sum(r.passed for r in reports), elapsed)
    return 0 if ok else 1


def cmd_verify(args) -> int:
    g = _load(args.grading)
    rep = check_grading(g)
    out = rep.to_json()
    if rep.ok:
        dual = dual_eigenspaces(g)
        out["dual_round_trip"] = all(dual[x] == g.components[x] for x in g.group.elements)
    else:
        out["dual_round_trip"] = False
    _write(json.dumps(out, indent=1), args.out)
    return 0 if rep.ok and out["dual_round_trip"] else 1


def cmd_equiv(args) -> int:
    try:
        results = check_canonical(args.family, args.m)
    except EquivalenceError as exc:
        return _fail(str(exc))
    cert = inequivalence_certificate(args.family, args.m)
    out = {"family": args.family, "m": args.m, "witnesses": results, "inequivalence": cert}
    _write(json.dumps(out, indent=1), args.out)
    ok = all(results.values()) and (cert is None or cert["distinct"])
    return 0 if ok else 1


def cmd_connection(args) -> int:
    g = _load(args.grading)
    if not getattr(g.carrier, "is_lie", False):
        return _fail("connection needs a Lie-algebra carrier")
    try:
        s = build_space(g)
    except SymSpaceError as exc:
        return _fail(str(exc))
    out = {
        "dim_h": s.h.dim,
        "dim_m": s.m.dim,
        "reductive": s.reductive,
        "effective": s.effective,
        "symmetric": s.is_symmetric(),
        "torsion": s.torsion_json(),
        "curvature": s.curvature_json(),
        "second_torsion": s.torsion_json((1, 2)),
    }
    _write(json.dumps(out, indent=1), args.out)
    return 0 if s.reductive and not out["second_torsion"] else 1


def cmd_export(args) -> int:
    try:
        family, phi, params = args.case.split(":")
        spec = CaseSpec(family, tuple(int(k) for k in params.split(",")), phi)
        g = build_grading(spec)
    except (ValueError, GradingError) as exc:
        return _fail(f"bad case {args.case!r}: {exc}")
    _write(dumps(g), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zsym", description="Exact Z2xZ2-gradings of classical Lie algebras.")
    p.add_argument("--version", action="version", version=f"zsym {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("census", help="build and verify every classified case up to a size bound")
    c.add_argument("--family", choices=["A", "B", "C", "D", "all"], default="all")
    c.add_argument("--max-n", type=int, default=8, dest="max_n")
    c.add_argument("--format", choices=["json", "markdown"], default="json")
    c.add_argument("--out", default="-")
    c.add_argument("--tensors", action="store_true", help="include full torsion/curvature entries")
    c.set_defaults(func=cmd_census)

    v = sub.add_parser("verify", help="check the grading axioms of a grading JSON file")
    v.add_argument("grading")
    v.add_argument("--out", default="-")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("equiv", help="verify the canonical equivalence witnesses")
    e.add_argument("--family", choices=["so", "sp"], required=True)
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--out", default="-")
    e.set_defaults(func=cmd_equiv)

    k = sub.add_parser("connection", help="torsion and curvature of the canonical connections")
    k.add_argument("grading")
    k.add_argument("--out", default="-")
    k.set_defaults(func=cmd_connection)

    x = sub.add_parser("export", help="write the grading JSON of a census case, e.g. BCD_fine:Psi1:2")
    x.add_argument("case")
    x.add_argument("--out", default="-")
    x.set_defaults(func=cmd_export)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    if getattr(args, "max_n", 2) < 2:
        return _fail("--max-n must be at least 2")
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
