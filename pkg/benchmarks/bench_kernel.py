"""Compare the compiled and pure-Python echelon kernels.

Usage: python benchmarks/bench_kernel.py [--repeat N] [--seed S] [--json out.json]

Three workloads: random sparse Gaussian-integer matrices of growing size,
Zassenhaus intersection stacks inside M_n, and a replay of every echelon call
made while running a few census cases (bucketed by matrix size, which is how
the dispatcher threshold was chosen). Both kernels must agree on every
input; the script exits non-zero otherwise. Dense random inputs beyond about
16x16 overflow int64 in fraction-free elimination and are reported as such.
"""
from __future__ import annotations

import argparse
import json
import random
import statistics
import sys
import time

from zsym import kernel
from zsym.gradings import elementary
from zsym.lie import build_sl


def random_rows(rng: random.Random, nrows: int, ncols: int, density: float, bound: int = 3):
    rows = []
    for _ in range(nrows):
        row = {}
        for k in range(ncols):
            if rng.random() < density:
                a, b = rng.randint(-bound, bound), rng.randint(-bound, bound)
                if a or b:
                    row[k] = (a, b)
        rows.append(row)
    return rows


def zassenhaus_rows(n: int):
    """Intersection stack of the identity component of an elementary grading with sl(n)."""
    t = "e" * (n // 2) + "a" * (n - n // 2)
    a = elementary(n, t).components[elementary(n, t).group.identity]
    b = build_sl(n).space
    N = n * n
    rows = []
    for _, r in a._rows:
        row = dict(r)
        row.update({N + k: v for k, v in r.items()})
        rows.append(row)
    rows.extend(r for _, r in b._rows)
    return rows, 2 * N


def census_trace(keys=("A_classI_elem:nu1:4,4", "A_classII:Phi1:5,3", "BCD_fine:Psi1:4")):
    """Every (rows, ncols) passed to the echelon dispatcher while running the given cases."""
    from zsym import linalg
    from zsym.census import CaseSpec, run_case

    calls = []
    orig = linalg.echelon

    def spy(rows, ncols):
        rows = list(rows)
        calls.append((rows, ncols))
        return orig(rows, ncols)

    linalg.echelon = spy
    try:
        for key in keys:
            fam, phi, params = key.split(":")
            run_case(CaseSpec(fam, tuple(int(k) for k in params.split(",")), phi))
    finally:
        linalg.echelon = orig
    return calls


def timed(fn, rows, ncols, repeat: int) -> float:
    samples = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn(rows, ncols)
        samples.append(time.perf_counter() - t)
    return statistics.median(samples)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", default=None)
    args = ap.parse_args(argv)
    if not kernel.compiled_available():
        print("compiled kernel not built; only the Python kernel is available", file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    cases = []
    for size in (8, 16, 24, 32, 48, 64, 96):
        for density in (3 / size, 0.5):
            label = f"random {size}x{size} d={density:.2f}"
            cases.append((label, random_rows(rng, size, size, density), size))
    for n in (4, 6, 8):
        rows, ncols = zassenhaus_rows(n)
        cases.append((f"intersection in M_{n}", rows, ncols))

    results = []
    print(f"{'workload':32s} {'cells':>7s} {'python ms':>10s} {'compiled ms':>12s} {'speedup':>8s}")
    for name, rows, ncols in cases:
        py = kernel.echelon_python(rows, ncols)
        try:
            cc = kernel.echelon_compiled(rows, ncols)
        except OverflowError:
            cc = None
        if cc is not None and cc != py:
            print(f"MISMATCH on {name}", file=sys.stderr)
            return 2
        tp = timed(kernel.echelon_python, rows, ncols, args.repeat)
        tc = timed(kernel.echelon_compiled, rows, ncols, args.repeat) if cc is not None else float("nan")
        cells = len(rows) * ncols
        results.append({"workload": name, "cells": cells, "python_s": tp, "compiled_s": tc})
        if cc is None:
            print(f"{name:32s} {cells:7d} {tp * 1e3:10.2f} {'overflow':>12s} {'-':>8s}")
        else:
            print(f"{name:32s} {cells:7d} {tp * 1e3:10.2f} {tc * 1e3:12.2f} {tp / tc:8.1f}x")

    print()
    print("replay of census echelon calls, bucketed by rows*cols")
    print(f"{'cells':>16s} {'calls':>6s} {'python ms':>10s} {'compiled ms':>12s} {'speedup':>8s}")
    calls = census_trace()
    buckets = [(0, 64), (64, 256), (256, 1024), (1024, 4096), (4096, 16384), (16384, None)]
    for lo, hi in buckets:
        group = [(r, c) for r, c in calls if lo <= len(r) * c and (hi is None or len(r) * c < hi)]
        if not group:
            continue
        tp = tc = 0.0
        for r, c in group:
            if kernel.echelon_python(r, c) != kernel.echelon_compiled(r, c):
                print("MISMATCH in census replay", file=sys.stderr)
                return 2
            tp += timed(kernel.echelon_python, r, c, args.repeat)
            tc += timed(kernel.echelon_compiled, r, c, args.repeat)
        label = f"[{lo}, {hi})" if hi else f">= {lo}"
        results.append({"workload": f"census {label}", "calls": len(group), "python_s": tp, "compiled_s": tc})
        print(f"{label:>16s} {len(group):6d} {tp * 1e3:10.2f} {tc * 1e3:12.2f} {tp / tc:8.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"backend": kernel.BACKEND, "results": results}, fh, indent=1)
    return 0


if __name__ == "__main__":
    sys.exit(main())
