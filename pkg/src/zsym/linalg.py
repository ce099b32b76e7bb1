"""Exact dense/sparse linear algebra and the subspace lattice over Q(i).

Internally a matrix or vector is a sparse dict of Gaussian-integer entries
``{index: (re, im)}`` over one positive integer denominator, kept canonical
(gcd of the denominator and all parts is 1). Matrices are indexed by the
row-major flat index ``r * cols + c``; an ``n x n`` matrix therefore *is* its
flattened vector in ``C^(n*n)``, which is the ambient coordinate system of
every subspace of ``M_n``.

Subspaces store their canonical reduced row echelon basis, so equality of
subspaces is structural equality of bases.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .exact import GaussianRational, ScalarLike
from .kernel import echelon

__all__ = [
    "DimensionError",
    "Vec",
    "Mat",
    "Subspace",
    "Relation",
    "rref",
    "kernel",
    "span",
    "sum_spaces",
    "intersect",
    "compare",
    "is_direct_sum",
    "kron",
    "block_diag",
    "skew_form",
    "matrix_unit",
]


class DimensionError(ValueError):
    """Shapes or ambient dimensions do not match."""


# --------------------------------------------------------------------------
# scalars as (re, im, den) integer triples


def _scalar(x: ScalarLike) -> tuple[int, int, int]:
    g = GaussianRational.coerce(x)
    d = lcm(g.re.denominator, g.im.denominator)
    return (g.re.numerator * (d // g.re.denominator), g.im.numerator * (d // g.im.denominator), d)


def _to_gr(a: int, b: int, d: int) -> GaussianRational:
    return GaussianRational(Fraction(a, d), Fraction(b, d))


def _normalize(den: int, data: dict) -> tuple[int, dict]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        den = -den
        data = {k: (-a, -b) for k, (a, b) in data.items()}
    g = den
    for a, b in data.values():
        if g == 1:
            break
        g = gcd(g, a, b)
    if g > 1:
        den //= g
        data = {k: (a // g, b // g) for k, (a, b) in data.items()}
    return den, data


# --------------------------------------------------------------------------
# vectors


class Vec:
    """Immutable sparse vector over Q(i): ``data / den``."""

    __slots__ = ("dim", "den", "data")

    def __init__(self, dim: int, den: int = 1, data: dict | None = None, *, _canonical=False):
        data = {} if data is None else data
        if not _canonical:
            data = {k: (a, b) for k, (a, b) in data.items() if a or b}
            for k in data:
                if not 0 <= k < dim:
                    raise IndexError(f"index {k} outside vector of length {dim}")
            den, data = _normalize(den, data)
        self.dim = dim
        self.den = den
        self.data = data

    @classmethod
    def from_seq(cls, values: Sequence[ScalarLike]) -> Vec:
        trip = [_scalar(v) for v in values]
        d = 1
        for _, _, dd in trip:
            d = lcm(d, dd)
        data = {k: (a * (d // dd), b * (d // dd)) for k, (a, b, dd) in enumerate(trip) if a or b}
        return cls(len(trip), d, data)

    @classmethod
    def zero(cls, dim: int) -> Vec:
        return cls(dim, 1, {}, _canonical=True)

    @classmethod
    def unit(cls, dim: int, k: int) -> Vec:
        return cls(dim, 1, {k: (1, 0)})

    def __getitem__(self, k: int) -> GaussianRational:
        a, b = self.data.get(k, (0, 0))
        return _to_gr(a, b, self.den)

    def entry(self, k: int) -> tuple[int, int, int]:
        a, b = self.data.get(k, (0, 0))
        return (a, b, self.den)

    def tolist(self) -> list[GaussianRational]:
        return [self[k] for k in range(self.dim)]

    def __bool__(self):
        return bool(self.data)

    def __eq__(self, other):
        if not isinstance(other, Vec):
            return NotImplemented
        return self.dim == other.dim and self.den == other.den and self.data == other.data

    def __hash__(self):
        return hash((self.dim, self.den, frozenset(self.data.items())))

    def __add__(self, other: Vec) -> Vec:
        return lincomb([(1, 0, 1), (1, 0, 1)], [self, other])

    def __sub__(self, other: Vec) -> Vec:
        return lincomb([(1, 0, 1), (-1, 0, 1)], [self, other])

    def __neg__(self) -> Vec:
        return Vec(self.dim, self.den, {k: (-a, -b) for k, (a, b) in self.data.items()}, _canonical=True)

    def scale(self, s: ScalarLike | tuple) -> Vec:
        a, b, d = s if isinstance(s, tuple) else _scalar(s)
        if not (a or b):
            return Vec.zero(self.dim)
        data = {k: (x * a - y * b, x * b + y * a) for k, (x, y) in self.data.items()}
        return Vec(self.dim, self.den * d, data)

    def __repr__(self):
        return f"Vec({[str(x) for x in self.tolist()]})"


def lincomb(coeffs: Sequence[tuple[int, int, int]], vecs: Sequence[Vec]) -> Vec:
    """``sum(c_k * v_k)`` with coefficients given as ``(re, im, den)`` triples."""
    if not vecs:
        raise ValueError("lincomb of an empty list needs an explicit dimension")
    dim = vecs[0].dim
    L = 1
    for (a, b, d), v in zip(coeffs, vecs):
        if a or b:
            L = lcm(L, d * v.den)
    acc: dict = {}
    for (a, b, d), v in zip(coeffs, vecs):
        if not (a or b):
            continue
        if v.dim != dim:
            raise DimensionError("vectors of different lengths")
        m = L // (d * v.den)
        ca, cb = a * m, b * m
        for k, (x, y) in v.data.items():
            ra = x * ca - y * cb
            rb = x * cb + y * ca
            cur = acc.get(k)
            if cur is not None:
                ra += cur[0]
                rb += cur[1]
            acc[k] = (ra, rb)
    return Vec(dim, L, acc)


def _as_vec(v, dim: int | None = None) -> Vec:
    if isinstance(v, Vec):
        out = v
    elif isinstance(v, Mat):
        out = v.flat()
    else:
        out = Vec.from_seq(list(v))
    if dim is not None and out.dim != dim:
        raise DimensionError(f"vector of length {out.dim}, expected {dim}")
    return out


# --------------------------------------------------------------------------
# matrices


class Mat:
    """Immutable exact matrix over Q(i)."""

    __slots__ = ("rows", "cols", "den", "data")

    def __init__(self, rows: int, cols: int, den: int = 1, data: dict | None = None, *, _canonical=False):
        if rows < 0 or cols < 0:
            raise DimensionError("negative shape")
        data = {} if data is None else data
        if not _canonical:
            data = {k: (a, b) for k, (a, b) in data.items() if a or b}
            n = rows * cols
            for k in data:
                if not 0 <= k < n:
                    raise IndexError(f"flat index {k} outside {rows}x{cols} matrix")
            den, data = _normalize(den, data)
        self.rows = rows
        self.cols = cols
        self.den = den
        self.data = data

    # -- constructors
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]]) -> Mat:
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        if any(len(r) != nc for r in rows):
            raise DimensionError("ragged rows")
        flat = Vec.from_seq([x for r in rows for x in r]) if nr * nc else Vec.zero(0)
        return cls(nr, nc, flat.den, flat.data, _canonical=True)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Sequence[ScalarLike]) -> Mat:
        if len(entries) != rows * cols:
            raise DimensionError(f"{len(entries)} entries for a {rows}x{cols} matrix")
        flat = Vec.from_seq(entries) if entries else Vec.zero(0)
        return cls(rows, cols, flat.den, flat.data, _canonical=True)

    @classmethod
    def from_vec(cls, rows: int, cols: int, v: Vec) -> Mat:
        if v.dim != rows * cols:
            raise DimensionError(f"vector of length {v.dim} is not a {rows}x{cols} matrix")
        return cls(rows, cols, v.den, v.data, _canonical=True)

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> Mat:
        return cls(rows, rows if cols is None else cols, 1, {}, _canonical=True)

    @classmethod
    def identity(cls, n: int) -> Mat:
        return cls(n, n, 1, {i * n + i: (1, 0) for i in range(n)}, _canonical=True)

    # -- access
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple[GaussianRational, ...]:
        return tuple(self[i, j] for i in range(self.rows) for j in range(self.cols))

    def __getitem__(self, ij) -> GaussianRational:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        a, b = self.data.get(i * self.cols + j, (0, 0))
        return _to_gr(a, b, self.den)

    def tolist(self) -> list[list[GaussianRational]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def flat(self) -> Vec:
        return Vec(self.rows * self.cols, self.den, self.data, _canonical=True)

    def is_zero(self) -> bool:
        return not self.data

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.rows, self.cols, self.den, self.data) == (other.rows, other.cols, other.den, other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.den, frozenset(self.data.items())))

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.tolist())
        return f"Mat[{body}]"

    # -- arithmetic
    def _check_same(self, other: Mat):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: Mat) -> Mat:
        if not isinstance(other, Mat):
            return NotImplemented
        self._check_same(other)
        return Mat.from_vec(self.rows, self.cols, self.flat() + other.flat())

    def __sub__(self, other: Mat) -> Mat:
        if not isinstance(other, Mat):
            return NotImplemented
        self._check_same(other)
        return Mat.from_vec(self.rows, self.cols, self.flat() - other.flat())

    def __neg__(self) -> Mat:
        return Mat.from_vec(self.rows, self.cols, -self.flat())

    def __mul__(self, s) -> Mat:
        if isinstance(s, Mat):
            return NotImplemented
        return Mat.from_vec(self.rows, self.cols, self.flat().scale(s))

    __rmul__ = __mul__

    def __matmul__(self, other: Mat) -> Mat:
        if not isinstance(other, Mat):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        data = _matmul_data(self.data, self.cols, other.data, other.cols)
        return Mat(self.rows, other.cols, self.den * other.den, data)

    def transpose(self) -> Mat:
        r, c = self.rows, self.cols
        data = {}
        for k, v in self.data.items():
            i, j = divmod(k, c)
            data[j * r + i] = v
        return Mat(c, r, self.den, data, _canonical=True)

    @property
    def T(self) -> Mat:
        return self.transpose()

    def trace(self) -> GaussianRational:
        if not self.is_square():
            raise DimensionError("trace of a non-square matrix")
        n = self.cols
        a = sum(self.data.get(i * n + i, (0, 0))[0] for i in range(n))
        b = sum(self.data.get(i * n + i, (0, 0))[1] for i in range(n))
        return _to_gr(a, b, self.den)

    def row_dicts(self) -> list[dict]:
        """Rows as sparse Gaussian-integer dicts (common denominator dropped)."""
        out = [dict() for _ in range(self.rows)]
        c = self.cols
        for k, v in self.data.items():
            i, j = divmod(k, c)
            out[i][j] = v
        return out

    def rank(self) -> int:
        return len(echelon(self.row_dicts(), self.cols))

    def is_nonsingular(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def inverse(self) -> Mat:
        if not self.is_square():
            raise DimensionError("inverse of a non-square matrix")
        n = self.rows
        rows = self.row_dicts()
        # [den*M | I] has the same row space scaling as [M | I/den]
        aug = []
        for i, r in enumerate(rows):
            row = dict(r)
            row[n + i] = (self.den, 0)
            aug.append(row)
        ech = echelon(aug, 2 * n)
        if len(ech) < n or any(p != i for i, (p, _) in enumerate(ech[:n])):
            raise ZeroDivisionError("matrix is singular")
        data = {}
        dens = []
        for i, (p, row) in enumerate(ech):
            dens.append(row[p][0])
        L = 1
        for d in dens:
            L = lcm(L, d)
        for i, (p, row) in enumerate(ech):
            m = L // row[p][0]
            for k, (a, b) in row.items():
                if k >= n:
                    data[i * n + (k - n)] = (a * m, b * m)
        return Mat(n, n, L, data)

    def conj(self) -> Mat:
        return Mat(self.rows, self.cols, self.den,
                   {k: (a, -b) for k, (a, b) in self.data.items()}, _canonical=True)


def _matmul_data(A: dict, acols: int, B: dict, bcols: int) -> dict:
    by_row: dict[int, list] = {}
    for k, v in B.items():
        i, j = divmod(k, bcols)
        by_row.setdefault(i, []).append((j, v))
    acc: dict = {}
    for k, (a, b) in A.items():
        i, kk = divmod(k, acols)
        brow = by_row.get(kk)
        if not brow:
            continue
        base = i * bcols
        for j, (c, d) in brow:
            idx = base + j
            re = a * c - b * d
            im = a * d + b * c
            cur = acc.get(idx)
            if cur is not None:
                re += cur[0]
                im += cur[1]
            acc[idx] = (re, im)
    return acc


def matrix_unit(n: int, i: int, j: int) -> Mat:
    """``E_ij`` in ``M_n`` (0-based indices)."""
    return Mat(n, n, 1, {i * n + j: (1, 0)}, _canonical=True)


def skew_form(n: int) -> Mat:
    """``S_n = [[0, I], [-I, 0]]``; ``n`` must be even."""
    if n % 2:
        raise DimensionError(f"S-block needs even size, got {n}")
    h = n // 2
    data = {}
    for i in range(h):
        data[i * n + h + i] = (1, 0)
        data[(h + i) * n + i] = (-1, 0)
    return Mat(n, n, 1, data, _canonical=True)


def kron(A: Mat, B: Mat) -> Mat:
    """Kronecker product, ``(A kron B)[i*p+k, j*q+l] = A[i,j] B[k,l]``."""
    p, q = B.rows, B.cols
    cols = A.cols * q
    data = {}
    for ka, (a, b) in A.data.items():
        i, j = divmod(ka, A.cols)
        for kb, (c, d) in B.data.items():
            k, l = divmod(kb, q)
            data[(i * p + k) * cols + j * q + l] = (a * c - b * d, a * d + b * c)
    return Mat(A.rows * p, cols, A.den * B.den, data)


def block_diag(*blocks: Mat) -> Mat:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    L = 1
    for b in blocks:
        L = lcm(L, b.den)
    data = {}
    r0 = c0 = 0
    for b in blocks:
        m = L // b.den
        for k, (x, y) in b.data.items():
            i, j = divmod(k, b.cols)
            data[(r0 + i) * cols + c0 + j] = (x * m, y * m)
        r0 += b.rows
        c0 += b.cols
    return Mat(rows, cols, L, data)


# --------------------------------------------------------------------------
# subspaces


class Relation(str, enum.Enum):
    EQUAL = "equal"
    A_IN_B = "a_in_b"
    B_IN_A = "b_in_a"
    INCOMPARABLE = "incomparable"


class Subspace:
    """A subspace of ``Q(i)^ambient_dim`` held by its canonical RREF basis."""

    __slots__ = ("ambient_dim", "_rows", "_pivmap", "_hash")

    def __init__(self, ambient_dim: int, rows: Sequence[tuple[int, dict]] = ()):
        # rows must already be canonical echelon rows sorted by pivot
        self.ambient_dim = ambient_dim
        self._rows = tuple(rows)
        self._pivmap = {p: r for p, r in self._rows}
        self._hash = None

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, [(k, {k: (1, 0)}) for k in range(n)])

    @classmethod
    def from_dicts(cls, ambient_dim: int, rows: Iterable[dict]) -> Subspace:
        return cls(ambient_dim, echelon(list(rows), ambient_dim))

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self._rows)

    def vecs(self) -> list[Vec]:
        """Canonical basis as vectors (pivot entry 1)."""
        n = self.ambient_dim
        return [Vec(n, r[p][0], r, _canonical=True) for p, r in self._rows]

    @property
    def basis(self) -> tuple[tuple[GaussianRational, ...], ...]:
        return tuple(tuple(v.tolist()) for v in self.vecs())

    def matrices(self, n: int | None = None) -> list[Mat]:
        """Basis vectors reshaped to ``n x n`` matrices (row-major)."""
        if n is None:
            n = _isqrt_exact(self.ambient_dim)
        return [Mat.from_vec(n, n, v) for v in self.vecs()]

    def is_zero(self) -> bool:
        return not self._rows

    def residual(self, v) -> dict:
        v = _as_vec(v, self.ambient_dim)
        from ._kernel_py import reduce_row

        return reduce_row(v.data, self._pivmap)

    def contains(self, v) -> bool:
        return not self.residual(v)

    __contains__ = contains

    def contains_space(self, other: Subspace) -> bool:
        _check_ambient(self, other)
        from ._kernel_py import reduce_row

        return all(not reduce_row(r, self._pivmap) for _, r in other._rows)

    def coordinates(self, v, *, check: bool = True) -> list[tuple[int, int, int]]:
        """Coefficients of ``v`` in the canonical basis, as ``(re, im, den)`` triples.

        For a canonical RREF basis these are just the entries of ``v`` at the
        pivot columns.
        """
        v = _as_vec(v, self.ambient_dim)
        if check and not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return [v.entry(p) for p, _ in self._rows]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient_dim, tuple((p, frozenset(r.items())) for p, r in self._rows)))
        return self._hash

    def __le__(self, other: Subspace) -> bool:
        return other.contains_space(self)

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


def _isqrt_exact(N: int) -> int:
    n = int(round(N ** 0.5))
    if n * n != N:
        raise DimensionError(f"ambient dimension {N} is not a square")
    return n


def _check_ambient(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


# --------------------------------------------------------------------------
# operations


def rref(m: Mat) -> Mat:
    """Reduced row echelon form of ``m`` (zero rows at the bottom)."""
    ech = echelon(m.row_dicts(), m.cols)
    L = 1
    for p, r in ech:
        L = lcm(L, r[p][0])
    data = {}
    for i, (p, r) in enumerate(ech):
        f = L // r[p][0]
        for j, (a, b) in r.items():
            data[i * m.cols + j] = (a * f, b * f)
    return Mat(m.rows, m.cols, L, data)


def _null_space_rows(ech: list[tuple[int, dict]], ncols: int) -> list[dict]:
    pivset = {p for p, _ in ech}
    L = 1
    for p, r in ech:
        L = lcm(L, r[p][0])
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        vec = {f: (L, 0)}
        for p, r in ech:
            x = r.get(f)
            if x is not None:
                m = L // r[p][0]
                vec[p] = (-x[0] * m, -x[1] * m)
        out.append(vec)
    return out


def kernel(m: Mat) -> Subspace:
    """Solution space of ``m x = 0`` as a subspace of ``Q(i)^cols``."""
    ech = echelon(m.row_dicts(), m.cols)
    return Subspace.from_dicts(m.cols, _null_space_rows(ech, m.cols))


def kernel_of_images(images: Sequence[Vec], out_dim: int | None = None) -> Subspace:
    """Kernel of the linear map sending the k-th coordinate vector to ``images[k]``.

    Returns the subspace of coefficient vectors ``c`` with ``sum c_k images[k] = 0``.
    """
    d = len(images)
    if d == 0:
        return Subspace.zero(0)
    L = 1
    for v in images:
        L = lcm(L, v.den)
    rows: dict[int, dict] = {}
    for j, v in enumerate(images):
        m = L // v.den
        for i, (a, b) in v.data.items():
            rows.setdefault(i, {})[j] = (a * m, b * m)
    ech = echelon(list(rows.values()), d)
    return Subspace.from_dicts(d, _null_space_rows(ech, d))


def solve_in(basis: Sequence[Vec], images: Sequence[Vec], ambient_dim: int) -> Subspace:
    """``{sum c_k basis[k] : sum c_k images[k] = 0}`` as a subspace of the ambient space."""
    if not basis:
        return Subspace.zero(ambient_dim)
    coeffs = kernel_of_images(images)
    out = []
    for c in coeffs.vecs():
        trip = [c.entry(k) for k in range(len(basis))]
        out.append(lincomb(trip, list(basis)).data)
    return Subspace.from_dicts(ambient_dim, out)


def span(vectors: Iterable, ambient_dim: int | None = None) -> Subspace:
    """Canonical subspace spanned by ``vectors`` (Vecs, Mats, or scalar sequences)."""
    vecs = [_as_vec(v) for v in vectors]
    if not vecs:
        if ambient_dim is None:
            raise DimensionError("span of no vectors needs ambient_dim")
        return Subspace.zero(ambient_dim)
    n = vecs[0].dim if ambient_dim is None else ambient_dim
    for v in vecs:
        if v.dim != n:
            raise DimensionError(f"ragged input: lengths {v.dim} and {n}")
    return Subspace.from_dicts(n, [v.data for v in vecs])


def sum_spaces(a: Subspace, b: Subspace, *more: Subspace) -> Subspace:
    spaces = (a, b) + more
    for s in spaces[1:]:
        _check_ambient(a, s)
    rows = [r for s in spaces for _, r in s._rows]
    return Subspace.from_dicts(a.ambient_dim, rows)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: echelon of ``[[A, A], [B, 0]]``; rows with empty left half span the intersection."""
    _check_ambient(a, b)
    n = a.ambient_dim
    if a.is_zero() or b.is_zero():
        return Subspace.zero(n)
    rows = []
    for _, r in a._rows:
        row = dict(r)
        for k, v in r.items():
            row[n + k] = v
        rows.append(row)
    for _, r in b._rows:
        rows.append(r)
    ech = echelon(rows, 2 * n)
    out = [{k - n: v for k, v in r.items()} for p, r in ech if p >= n]
    return Subspace.from_dicts(n, out)


def compare(a: Subspace, b: Subspace) -> Relation:
    _check_ambient(a, b)
    if a == b:
        return Relation.EQUAL
    if b.contains_space(a):
        return Relation.A_IN_B
    if a.contains_space(b):
        return Relation.B_IN_A
    return Relation.INCOMPARABLE


def is_direct_sum(parts: Sequence[Subspace], whole: Subspace) -> bool:
    for p in parts:
        _check_ambient(p, whole)
    if sum(p.dim for p in parts) != whole.dim:
        return False
    rows = [r for p in parts for _, r in p._rows]
    return Subspace.from_dicts(whole.ambient_dim, rows) == whole
