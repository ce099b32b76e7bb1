"""Backend selection for the echelon kernel.

The compiled extension ``zsym._kernel`` is used when it imports; otherwise,
or when ``ZSYM_PURE_PYTHON=1`` is set, the pure-Python kernel runs. Both
return identical canonical rows (reduced echelon form is unique), so the
choice only affects speed. Inputs with entries beyond int64 range, and any
overflow inside the compiled loop, fall back to the bigint Python path.
"""
from __future__ import annotations

import logging
import os

from . import _kernel_py

log = logging.getLogger(__name__)

__all__ = ["echelon", "echelon_python", "echelon_compiled", "BACKEND", "compiled_available"]

try:
    if os.environ.get("ZSYM_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-python backend forced by ZSYM_PURE_PYTHON")
    from ._kernel import echelon_rows as _echelon_rows
except ImportError as exc:  # pragma: no cover - depends on build
    log.debug("compiled kernel unavailable: %s", exc)
    _echelon_rows = None

BACKEND = "compiled" if _echelon_rows is not None else "python"

# crossover measured by benchmarks/bench_kernel.py (census replay): below ~256
# cells the dict kernel wins over array set-up
_DENSE_MIN_CELLS = 256


def compiled_available() -> bool:
    return _echelon_rows is not None


def echelon_python(rows, ncols: int):
    return _kernel_py.echelon(rows, ncols)


def echelon_compiled(rows, ncols: int):
    """Compiled kernel on dict rows; raises OverflowError if int64 is not enough."""
    if _echelon_rows is None:
        raise RuntimeError("compiled kernel is not built")
    return _echelon_rows(list(rows), ncols)


def echelon(rows, ncols: int):
    """Canonical echelon rows ``[(pivot, {col: (re, im)})]`` of the span of ``rows``."""
    if _echelon_rows is not None:
        rows = list(rows)
        cells = len(rows) * ncols
        if cells >= _DENSE_MIN_CELLS:
            try:
                return echelon_compiled(rows, ncols)
            except OverflowError:
                log.debug("int64 overflow; rerunning echelon with Python integers")
    return _kernel_py.echelon(rows, ncols)
