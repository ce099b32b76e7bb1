import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zsym import kernel

small = st.integers(-4, 4)
entry = st.tuples(small, small)


@st.composite
def sparse_rows(draw, max_rows=8, max_cols=10):
    ncols = draw(st.integers(1, max_cols))
    nrows = draw(st.integers(0, max_rows))
    rows = []
    for _ in range(nrows):
        cols = draw(st.lists(st.integers(0, ncols - 1), max_size=ncols, unique=True))
        rows.append({c: draw(entry) for c in cols})
    return rows, ncols


def _is_canonical(ech):
    pivots = [p for p, _ in ech]
    assert pivots == sorted(pivots) and len(set(pivots)) == len(pivots)
    for p, r in ech:
        assert min(r) == p
        assert r[p][0] > 0 and r[p][1] == 0
        for q in pivots:
            if q != p:
                assert q not in r
    return True


@given(sparse_rows())
def test_python_kernel_canonical(case):
    rows, ncols = case
    assert _is_canonical(kernel.echelon_python(rows, ncols))


@pytest.mark.skipif(not kernel.compiled_available(), reason="compiled kernel not built")
@given(sparse_rows(max_rows=12, max_cols=24))
def test_backends_agree(case):
    rows, ncols = case
    assert kernel.echelon_compiled(rows, ncols) == kernel.echelon_python(rows, ncols)


@given(sparse_rows())
def test_dispatch_agrees_with_python(case):
    rows, ncols = case
    assert kernel.echelon(rows, ncols) == kernel.echelon_python(rows, ncols)


def test_explicit_zero_entries_ignored():
    rows = [{0: (0, 0), 1: (2, 0)}, {1: (0, 0)}]
    assert kernel.echelon_python(rows, 2) == [(1, {1: (1, 0)})]


def test_big_integers_fall_back():
    big = 10**30
    rows = [{c: (big + c * r, r) for c in range(20)} for r in range(20)]
    assert kernel.echelon(rows, 20) == kernel.echelon_python(rows, 20)


@pytest.mark.skipif(not kernel.compiled_available(), reason="compiled kernel not built")
def test_compiled_raises_on_overflow():
    rows = [{0: (10**30, 0)}]
    with pytest.raises(OverflowError):
        kernel.echelon_compiled(rows, 1)


def test_pure_python_switch():
    env = dict(os.environ, ZSYM_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import zsym; print(zsym.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"
