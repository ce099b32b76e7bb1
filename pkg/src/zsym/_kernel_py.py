"""Pure-Python echelon kernel over the Gaussian integers.

Rows are sparse dicts ``{column: (re, im)}`` with integer parts. Elimination is
fraction-free: a target row ``t`` is replaced by ``P*t - t[c]*p`` where ``p``
is a pivot row whose pivot entry ``P`` is a positive integer, followed by
division by the integer content of the row. Row spans are unchanged by these
scalings, so the returned canonical rows describe the exact RREF over Q(i).

Canonical row: pivot entry is a positive integer, every other pivot column
is zero, and the gcd of all real/imaginary parts is 1. The rational RREF row
is ``row / row[pivot]``.
"""
from __future__ import annotations

from math import gcd

__all__ = ["echelon", "reduce_row"]


def _content_divide(row: dict) -> dict:
    g = 0
    for a, b in row.values():
        g = gcd(g, a, b)
        if g == 1:
            return row
    if g > 1:
        return {k: (a // g, b // g) for k, (a, b) in row.items()}
    return row


def _eliminate(target: dict, prow: dict, col: int) -> dict:
    """Zero ``target[col]`` using ``prow`` whose pivot at ``col`` is real positive."""
    P = prow[col][0]
    ta, tb = target[col]
    out = {}
    if P == 1:
        for k, v in target.items():
            out[k] = v
    else:
        for k, (a, b) in target.items():
            out[k] = (P * a, P * b)
    for k, (ra, rb) in prow.items():
        # t[c] * r  with t[c] = ta + tb i
        sa = ta * ra - tb * rb
        sb = ta * rb + tb * ra
        cur = out.get(k)
        if cur is None:
            out[k] = (-sa, -sb)
        else:
            na, nb = cur[0] - sa, cur[1] - sb
            if na or nb:
                out[k] = (na, nb)
            else:
                del out[k]
    out.pop(col, None)
    return _content_divide(out)


def _strip(row: dict) -> dict:
    for a, b in row.values():
        if not (a or b):
            return {k: v for k, v in row.items() if v[0] or v[1]}
    return row


def _make_pivot(row: dict, col: int) -> dict:
    """Scale ``row`` so its entry at ``col`` is a positive integer, then make it primitive."""
    x, y = row[col]
    if y != 0:
        # multiply by conj(x + yi)
        row = {k: (a * x + b * y, b * x - a * y) for k, (a, b) in row.items()}
    elif x < 0:
        row = {k: (-a, -b) for k, (a, b) in row.items()}
    return _content_divide(row)


def reduce_row(row: dict, pivots: dict) -> dict:
    """Residual of ``row`` modulo the span of canonical ``pivots`` (col -> row).

    The residual is determined only up to a nonzero scalar; it is zero iff the
    row lies in the span.
    """
    row = _strip(row)
    hits = [c for c in row if c in pivots]
    for c in hits:
        if c in row:
            row = _eliminate(row, pivots[c], c)
    return row


def echelon(rows, ncols: int) -> list[tuple[int, dict]]:
    """Canonical reduced echelon basis of the span of ``rows``.

    Returns ``[(pivot_col, row), ...]`` sorted by pivot column.
    """
    pivots: dict[int, dict] = {}
    for src in rows:
        if not src:
            continue
        row = reduce_row(src, pivots)
        if not row:
            continue
        col = min(row)
        if col >= ncols or col < 0:
            raise IndexError(f"column {col} outside 0..{ncols - 1}")
        row = _make_pivot(row, col)
        for c in list(pivots):
            prow = pivots[c]
            if col in prow:
                pivots[c] = _eliminate(prow, row, col)
        pivots[col] = row
    return sorted(pivots.items())
