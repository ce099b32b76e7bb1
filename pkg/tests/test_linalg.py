import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from zsym.exact import gr
from zsym.linalg import (
    DimensionError,
    Mat,
    Relation,
    Subspace,
    block_diag,
    compare,
    intersect,
    is_direct_sum,
    kernel,
    kron,
    matrix_unit,
    rref,
    skew_form,
    span,
    sum_spaces,
)
from zsym.lie import PAULI

small = st.integers(-3, 3)
gauss = st.tuples(small, small)


@st.composite
def matrices(draw, max_rows=5, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    # bias toward rank deficiency with zero entries
    cells = draw(st.lists(st.one_of(st.just((0, 0)), gauss), min_size=r * c, max_size=r * c))
    return Mat.from_entries(r, c, [gr(a, b) for a, b in cells])


def to_sympy(m: Mat) -> sympy.Matrix:
    return sympy.Matrix(m.rows, m.cols,
                        [sympy.Rational(x.re.numerator, x.re.denominator)
                         + sympy.I * sympy.Rational(x.im.numerator, x.im.denominator) for x in m.entries])


def from_sympy(m: sympy.Matrix) -> Mat:
    vals = []
    for x in m:
        re, im = sympy.nsimplify(sympy.re(x)), sympy.nsimplify(sympy.im(x))
        vals.append(gr(f"{re.p}/{re.q}", f"{im.p}/{im.q}"))
    return Mat.from_entries(m.rows, m.cols, vals)


def subspace_of_rows(m: Mat) -> Subspace:
    return span([list(r) for r in m.tolist()], m.cols)


@given(matrices())
def test_rref_matches_sympy(m):
    want, _ = to_sympy(m).rref(simplify=True)
    assert rref(m) == from_sympy(sympy.simplify(want))


@given(matrices())
def test_rank_matches_sympy(m):
    assert m.rank() == to_sympy(m).rank(simplify=True)


@given(matrices())
def test_kernel_matches_sympy(m):
    ns = to_sympy(m).nullspace(simplify=True)
    oracle = span([from_sympy(sympy.simplify(v.T)).entries for v in ns], m.cols)
    assert kernel(m) == oracle
    for v in kernel(m).vecs():
        assert (m @ Mat.from_vec(m.cols, 1, v)).is_zero()


def test_rref_example():
    assert rref(Mat.from_rows([[0, "i"], [0, 0]])) == Mat.from_rows([[0, 1], [0, 0]])


@given(matrices())
def test_rref_idempotent(m):
    assert rref(rref(m)) == rref(m)


@given(matrices())
def test_span_of_basis_is_identity(m):
    s = subspace_of_rows(m)
    assert span(s.vecs(), m.cols) == s
    assert s.dim == m.rank()


@st.composite
def subspace_pairs(draw):
    n = draw(st.integers(1, 6))
    def one():
        k = draw(st.integers(0, n))
        rows = [[gr(*draw(gauss)) for _ in range(n)] for _ in range(k)]
        return span(rows, n)
    return one(), one(), one()


@given(subspace_pairs())
def test_dimension_formula(abc):
    a, b, _ = abc
    assert a.dim + b.dim == sum_spaces(a, b).dim + intersect(a, b).dim
    i = intersect(a, b)
    assert a.contains_space(i) and b.contains_space(i)


@given(subspace_pairs())
def test_modular_law(abc):
    a, b, c = abc
    # a <= c  implies  a + (b cap c) = (a + b) cap c
    a = intersect(a, c)
    assert sum_spaces(a, intersect(b, c)) == intersect(sum_spaces(a, b), c)


def _e(n, *idx):
    return span([[1 if j == i else 0 for j in range(n)] for i in idx], n)


def test_sum_and_intersection_examples():
    assert sum_spaces(_e(3, 0), _e(3, 1)) == _e(3, 0, 1)
    v = _e(3, 0, 2)
    assert sum_spaces(v, v) == v
    assert sum_spaces(v, Subspace.zero(3)) == v
    assert intersect(_e(3, 0, 1), _e(3, 1, 2)) == _e(3, 1)
    assert intersect(v, Subspace.zero(3)).is_zero()


def test_diagonal_cap_traceless():
    diag = span([matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)])
    traceless = span([matrix_unit(2, 0, 1), matrix_unit(2, 1, 0), matrix_unit(2, 0, 0) - matrix_unit(2, 1, 1)])
    assert intersect(diag, traceless) == span([matrix_unit(2, 0, 0) - matrix_unit(2, 1, 1)])


def test_compare():
    v = _e(3, 0, 1)
    assert compare(v, v) is Relation.EQUAL
    assert compare(Subspace.zero(3), v) is Relation.A_IN_B
    assert compare(v, _e(3, 0)) is Relation.B_IN_A
    assert compare(_e(3, 0), _e(3, 1)) is Relation.INCOMPARABLE
    with pytest.raises(DimensionError):
        compare(_e(3, 0), _e(2, 0))


def test_direct_sum():
    assert is_direct_sum([_e(2, 0), _e(2, 1)], Subspace.full(2))
    assert not is_direct_sum([_e(2, 0), _e(2, 0)], _e(2, 0))
    pauli = [span([PAULI[p]]) for p in "eabc"]
    assert is_direct_sum(pauli, Subspace.full(4))


def test_ragged_and_mismatch_errors():
    with pytest.raises(DimensionError):
        Mat.from_rows([[1, 2], [3]])
    with pytest.raises(DimensionError):
        span([[1, 2], [1, 2, 3]])
    with pytest.raises(DimensionError):
        intersect(_e(2, 0), _e(3, 0))
    with pytest.raises(DimensionError):
        skew_form(3)


@given(matrices(4, 4), matrices(4, 4))
def test_matmul_matches_sympy(a, b):
    if a.cols != b.rows:
        return
    assert to_sympy(a @ b) == (to_sympy(a) * to_sympy(b)).expand()


def test_inverse_and_kron():
    m = Mat.from_rows([[1, "-i"], [1, "i"]])
    assert m @ m.inverse() == Mat.identity(2)
    k = kron(PAULI["b"], Mat.identity(2))
    assert k == block_diag(Mat.zeros(2), Mat.zeros(2)) + Mat.from_rows(
        [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    assert to_sympy(kron(PAULI["c"], PAULI["a"])) == sympy.kronecker_product(to_sympy(PAULI["c"]), to_sympy(PAULI["a"]))


def test_subspace_is_canonical():
    # different spanning sets give structurally equal subspaces
    a = span([[1, "i", 0], [0, 1, 1]])
    b = span([[1, "1+i", 1], [2, "2i", 0], [0, 3, 3]])
    assert a == b and hash(a) == hash(b)
