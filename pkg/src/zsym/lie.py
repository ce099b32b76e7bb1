"""Matrix and structure-constant Lie algebras, involutions, structural invariants.

Carriers share a small protocol used by the grading and symmetric-space
layers: ``ambient_dim``, ``space`` (a :class:`Subspace` of the ambient
coordinates), ``product_vec(u, v)`` (bracket, or matrix product for the
associative carrier) and ``is_lie``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from math import lcm
from typing import Sequence, Union

from .exact import GaussianRational, parse_scalar
from .linalg import (
    DimensionError,
    Mat,
    Subspace,
    Vec,
    _matmul_data,
    kernel_of_images,
    kron,
    block_diag,
    lincomb,
    skew_form,
    solve_in,
    span,
    sum_spaces,
)

__all__ = [
    "LieError",
    "MatAlgebra",
    "MatLie",
    "ScLie",
    "InvolutionSpec",
    "StructureSignature",
    "PAULI",
    "bracket",
    "build_sl",
    "build_gl",
    "build_K",
    "build_H",
    "jacobi_check",
    "derived",
    "center",
    "largest_ideal_in",
    "killing_rank",
    "invariant_forms",
    "column_support",
    "signature",
    "n7_3",
    "phi_catalogue",
    "psi_catalogue",
]


class LieError(ValueError):
    """Invalid Lie-theoretic input (singular involution matrix, non-invariant support...)."""


# --------------------------------------------------------------------------
# matrix products on flattened vectors


def mat_product_vec(n: int, u: Vec, v: Vec) -> Vec:
    return Vec(n * n, u.den * v.den, _matmul_data(u.data, n, v.data, n))


def mat_bracket_vec(n: int, u: Vec, v: Vec) -> Vec:
    uv = _matmul_data(u.data, n, v.data, n)
    vu = _matmul_data(v.data, n, u.data, n)
    for k, (a, b) in vu.items():
        cur = uv.get(k)
        if cur is None:
            uv[k] = (-a, -b)
        else:
            uv[k] = (cur[0] - a, cur[1] - b)
    return Vec(n * n, u.den * v.den, uv)


def bracket(x: Mat, y: Mat) -> Mat:
    """Commutator ``XY - YX``."""
    if not (x.is_square() and y.is_square()) or x.shape != y.shape:
        raise DimensionError(f"bracket needs equal square shapes, got {x.shape} and {y.shape}")
    n = x.rows
    return Mat.from_vec(n, n, mat_bracket_vec(n, x.flat(), y.flat()))


# --------------------------------------------------------------------------
# carriers


@dataclass(frozen=True, eq=False)
class MatAlgebra:
    """The associative algebra ``M_n`` (product ``XY``)."""

    n: int
    is_lie = False

    @property
    def ambient_dim(self) -> int:
        return self.n * self.n

    @cached_property
    def space(self) -> Subspace:
        return Subspace.full(self.n * self.n)

    def product_vec(self, u: Vec, v: Vec) -> Vec:
        return mat_product_vec(self.n, u, v)

    def describe(self) -> dict:
        return {"kind": "matrix_algebra", "n": self.n}


@dataclass(frozen=True, eq=False)
class MatLie:
    """A Lie subalgebra of ``gl(n)`` given by a subspace of flattened matrices."""

    n: int
    space: Subspace
    name: str = ""
    check: bool = field(default=True, repr=False)
    is_lie = True

    def __post_init__(self):
        if self.space.ambient_dim != self.n * self.n:
            raise DimensionError(f"space has ambient dim {self.space.ambient_dim}, expected {self.n ** 2}")
        if self.check and not _bracket_closed(self, self.space):
            raise LieError(f"{self.name or 'subspace'} is not closed under the bracket")

    @property
    def ambient_dim(self) -> int:
        return self.n * self.n

    @property
    def dim(self) -> int:
        return self.space.dim

    def product_vec(self, u: Vec, v: Vec) -> Vec:
        return mat_bracket_vec(self.n, u, v)

    def basis(self) -> list[Mat]:
        return self.space.matrices(self.n)

    def subalgebra(self, space: Subspace, name: str = "") -> MatLie:
        return MatLie(self.n, space, name)

    def describe(self) -> dict:
        return {"kind": "matrix_lie", "n": self.n, "name": self.name}


@dataclass(frozen=True, eq=False)
class ScLie:
    """Lie algebra given by structure constants on a basis ``x_0..x_{dim-1}``.

    ``table[(i, j)]`` is the coordinate vector of ``[x_i, x_j]`` for ``i < j``;
    missing pairs bracket to zero.
    """

    dim: int
    table: dict
    name: str = ""
    is_lie = True

    @property
    def ambient_dim(self) -> int:
        return self.dim

    @cached_property
    def space(self) -> Subspace:
        return Subspace.full(self.dim)

    def structure_constant(self, i: int, j: int, k: int) -> GaussianRational:
        if i == j:
            return GaussianRational()
        if i < j:
            v = self.table.get((i, j))
            return v[k] if v is not None else GaussianRational()
        return -self.structure_constant(j, i, k)

    def product_vec(self, u: Vec, v: Vec) -> Vec:
        terms = []
        coeffs = []
        for i, (a, b) in u.data.items():
            for j, (c, d) in v.data.items():
                if i == j:
                    continue
                key, sign = ((i, j), 1) if i < j else ((j, i), -1)
                w = self.table.get(key)
                if w is None:
                    continue
                coeffs.append((sign * (a * c - b * d), sign * (a * d + b * c), u.den * v.den))
                terms.append(w)
        if not terms:
            return Vec.zero(self.dim)
        return lincomb(coeffs, terms)

    @classmethod
    def from_triples(cls, dim: int, triples, name: str = "", one_based: bool = True) -> ScLie:
        """Build from ``(i, j, k, value)`` meaning ``[x_i, x_j]`` has coefficient ``value`` on ``x_k``."""
        acc: dict = {}
        off = 1 if one_based else 0
        for i, j, k, val in triples:
            i, j, k = i - off, j - off, k - off
            s = parse_scalar(val) if isinstance(val, str) else GaussianRational.coerce(val)
            if i == j:
                raise LieError(f"[x_{i + off}, x_{i + off}] must vanish")
            if i > j:
                i, j, s = j, i, -s
            acc.setdefault((i, j), {})
            acc[(i, j)][k] = acc[(i, j)].get(k, GaussianRational()) + s
        table = {}
        for key, coeffs in acc.items():
            vals = [coeffs.get(k, GaussianRational()) for k in range(dim)]
            v = Vec.from_seq(vals)
            if v:
                table[key] = v
        return cls(dim, table, name)

    def to_triples(self, one_based: bool = True) -> list:
        from .exact import format_scalar

        off = 1 if one_based else 0
        out = []
        for (i, j), v in sorted(self.table.items()):
            for k in sorted(v.data):
                out.append([i + off, j + off, k + off, format_scalar(v[k])])
        return out

    def describe(self) -> dict:
        return {"kind": "structure_constants", "dim": self.dim, "name": self.name,
                "triples": self.to_triples()}


Carrier = Union[MatAlgebra, MatLie, ScLie]


def _bracket_closed(g, space: Subspace) -> bool:
    vecs = space.vecs()
    for i, u in enumerate(vecs):
        for v in vecs[i + 1:]:
            if not space.contains(g.product_vec(u, v)):
                return False
    return True


def n7_3() -> ScLie:
    """The characteristically nilpotent 7-dimensional algebra shipped as a data file."""
    raw = json.loads(resources.files("zsym").joinpath("data/n7_3.json").read_text())
    return ScLie.from_triples(raw["dim"], raw["brackets"], name=raw["name"])


# --------------------------------------------------------------------------
# involutions


PAULI = {
    "e": Mat.identity(2),
    "a": Mat.from_rows([[-1, 0], [0, 1]]),
    "b": Mat.from_rows([[0, 1], [1, 0]]),
    "c": Mat.from_rows([[0, -1], [1, 0]]),
}


@dataclass(frozen=True, eq=False)
class InvolutionSpec:
    """``X* = phi^-1 X^t phi`` for a symmetric or skew nonsingular ``phi``."""

    phi: Mat
    symmetry: str
    name: str = ""

    def __post_init__(self):
        if self.symmetry not in ("symmetric", "skew"):
            raise LieError(f"symmetry must be 'symmetric' or 'skew', got {self.symmetry!r}")
        if not self.phi.is_square():
            raise LieError("involution matrix must be square")
        expected = self.phi if self.symmetry == "symmetric" else -self.phi
        if self.phi.T != expected:
            raise LieError(f"{self.name or 'phi'} is not {self.symmetry}")
        if not self.phi.is_nonsingular():
            raise LieError(f"{self.name or 'phi'} is singular")

    @classmethod
    def of(cls, phi: Mat, name: str = "") -> InvolutionSpec:
        if phi.T == phi:
            return cls(phi, "symmetric", name)
        if phi.T == -phi:
            return cls(phi, "skew", name)
        raise LieError(f"{name or 'phi'} is neither symmetric nor skew")

    @property
    def n(self) -> int:
        return self.phi.rows

    @cached_property
    def phi_inv(self) -> Mat:
        return self.phi.inverse()

    def star(self, x: Mat) -> Mat:
        return self.phi_inv @ x.T @ self.phi

    def star_vec(self, v: Vec) -> Vec:
        n = self.n
        return self.star(Mat.from_vec(n, n, v)).flat()


def _eq_images(n: int, inv: InvolutionSpec, sign: int, basis: Sequence[Vec]) -> list[Vec]:
    # images of X -> X^t phi + sign * phi X ; kernel = K (sign=+1) or H (sign=-1)
    out = []
    phi = inv.phi
    for v in basis:
        x = Mat.from_vec(n, n, v)
        img = x.T @ phi + (phi @ x if sign > 0 else -(phi @ x))
        out.append(img.flat())
    return out


def _full_basis(n: int) -> list[Vec]:
    return [Vec(n * n, 1, {k: (1, 0)}, _canonical=True) for k in range(n * n)]


def skew_part(n: int, inv: InvolutionSpec, within: Subspace | None = None) -> Subspace:
    """``{X in within : X* = -X}`` (all of ``M_n`` when ``within`` is None)."""
    basis = _full_basis(n) if within is None else within.vecs()
    return solve_in(basis, _eq_images(n, inv, +1, basis), n * n)


def symmetric_part(n: int, inv: InvolutionSpec, within: Subspace | None = None) -> Subspace:
    basis = _full_basis(n) if within is None else within.vecs()
    return solve_in(basis, _eq_images(n, inv, -1, basis), n * n)


def build_K(n: int, inv: InvolutionSpec, name: str = "") -> MatLie:
    if inv.n != n:
        raise DimensionError(f"involution is {inv.n}x{inv.n}, expected {n}")
    return MatLie(n, skew_part(n, inv), name or f"K(M_{n},{inv.name or 'phi'})", check=False)


def build_H(n: int, inv: InvolutionSpec) -> Subspace:
    if inv.n != n:
        raise DimensionError(f"involution is {inv.n}x{inv.n}, expected {n}")
    return symmetric_part(n, inv)


def build_sl(n: int) -> MatLie:
    if n < 2:
        raise LieError(f"sl(n) needs n >= 2, got {n}")
    rows = []
    for i in range(n):
        for j in range(n):
            if i != j:
                rows.append({i * n + j: (1, 0)})
    for i in range(n - 1):
        rows.append({i * n + i: (1, 0), (n - 1) * n + n - 1: (-1, 0)})
    return MatLie(n, Subspace.from_dicts(n * n, rows), f"sl({n})", check=False)


def build_gl(n: int) -> MatLie:
    return MatLie(n, Subspace.full(n * n), f"gl({n})", check=False)


# --------------------------------------------------------------------------
# catalogue of involution matrices


def _swap_block(k: int, sign: int = 1) -> Mat:
    """``[[0, I_k], [sign*I_k, 0]]``."""
    n = 2 * k
    data = {}
    for i in range(k):
        data[i * n + k + i] = (1, 0)
        data[(k + i) * n + i] = (sign, 0)
    return Mat(n, n, 1, data)


def phi_catalogue(name: str, params: Sequence[int]) -> InvolutionSpec:
    """Involution matrices for elementary gradings.

    ``Phi1, Phi2, Phi3`` are identities on blocks ``k_i``; ``PhiBar*`` use
    ``S_{k_i}`` blocks (even sizes); ``Phi1'``/``PhiBar1'`` take ``(k,)`` and
    pair the ``e``- and ``a``-blocks; ``Phi3'``/``PhiBar3'`` take ``(k1, k3)``
    and pair ``e``/``a`` and ``b``/``c`` blocks.
    """
    ks = tuple(int(k) for k in params)
    if name in ("Phi1", "Phi2", "Phi3"):
        m = Mat.identity(sum(ks))
    elif name in ("PhiBar1", "PhiBar2", "PhiBar3"):
        m = block_diag(*(skew_form(k) for k in ks if k))
    elif name == "Phi1'":
        (k,) = ks
        m = _swap_block(k, 1)
    elif name == "PhiBar1'":
        (k,) = ks
        m = _swap_block(k, -1)
    elif name == "Phi3'":
        m = block_diag(*(_swap_block(k, 1) for k in ks if k))
    elif name == "PhiBar3'":
        m = block_diag(*(_swap_block(k, -1) for k in ks if k))
    else:
        raise LieError(f"unknown involution {name!r}")
    return InvolutionSpec.of(m, f"{name}{ks}")


_PSI = {
    # name: (A-factor, Pauli factor); layout kron(pauli, A)
    "Psi1": ("I", "e"),
    "Psi2": ("I", "a"),
    "Psi3": ("I", "b"),
    "Psi4": ("S", "c"),
    "PsiBar1": ("S", "e"),
    "PsiBar2": ("S", "a"),
    "PsiBar3": ("S", "b"),
    "PsiBar4": ("I", "c"),
}


def psi_catalogue(name: str, m: int) -> InvolutionSpec:
    """Involution ``Phi1 (x) Phi2`` on ``A (x) B = M_m (x) M_2``.

    Matrices are laid out with the Pauli factor outermost, ``kron(X_p, Phi1)``,
    so block ``(k, l)`` of an element ``a (x) b`` is ``b[k, l] * a``.
    """
    try:
        afac, p = _PSI[name]
    except KeyError:
        raise LieError(f"unknown involution {name!r}") from None
    a = Mat.identity(m) if afac == "I" else skew_form(m)
    return InvolutionSpec.of(kron(PAULI[p], a), f"{name}(m={m})")


# --------------------------------------------------------------------------
# structural invariants


def _algebra_basis(g) -> list[Vec]:
    return g.space.vecs()


def derived(g) -> Subspace:
    vecs = _algebra_basis(g)
    prods = []
    for i, u in enumerate(vecs):
        for v in vecs[i + 1:]:
            w = g.product_vec(u, v)
            if w:
                prods.append(w.data)
    return Subspace.from_dicts(g.ambient_dim, prods)


def _stack(vecs: Sequence[Vec], block: int) -> Vec:
    L = 1
    for v in vecs:
        L = lcm(L, v.den)
    data = {}
    for t, v in enumerate(vecs):
        m = L // v.den
        off = t * block
        for k, (a, b) in v.data.items():
            data[off + k] = (a * m, b * m)
    return Vec(block * len(vecs), L, data, _canonical=False)


def center(g) -> Subspace:
    vecs = _algebra_basis(g)
    N = g.ambient_dim
    images = [_stack([g.product_vec(u, w) for w in vecs], N) for u in vecs]
    return solve_in(vecs, images, N)


def linear_residual(space: Subspace, v: Vec) -> Vec:
    """``v`` minus its pivot-coordinate combination of the canonical basis (a linear map)."""
    if space.is_zero() or not v:
        return v
    basis = space.vecs()
    coeffs = [(1, 0, 1)] + [((-c[0]), (-c[1]), c[2]) for c in (v.entry(p) for p in space.pivots)]
    return lincomb(coeffs, [v] + basis)


def largest_ideal_in(g, h: Subspace) -> Subspace:
    """Largest ideal of ``g`` contained in ``h``, by the fixpoint ``I <- {x in I : [g, x] in I}``."""
    if not g.space.contains_space(h):
        raise LieError("h is not contained in g")
    gvecs = _algebra_basis(g)
    N = g.ambient_dim
    cur = h
    while not cur.is_zero():
        basis = cur.vecs()
        images = [_stack([linear_residual(cur, g.product_vec(w, x)) for w in gvecs], N) for x in basis]
        nxt = solve_in(basis, images, N)
        if nxt == cur:
            break
        cur = nxt
    return cur


def ad_matrices(g, space: Subspace | None = None) -> list[Mat]:
    """Matrices of ``ad x_i`` on ``space`` (default: the whole algebra) in its canonical basis."""
    sp = g.space if space is None else space
    vecs = sp.vecs()
    d = len(vecs)
    out = []
    for u in vecs:
        cols = [g.product_vec(u, w) for w in vecs]
        L = 1
        for c in cols:
            L = lcm(L, c.den)
        data = {}
        for j, c in enumerate(cols):
            m = L // c.den
            for k, p in enumerate(sp.pivots):
                x = c.data.get(p)
                if x is not None:
                    data[k * d + j] = (x[0] * m, x[1] * m)
        out.append(Mat(d, d, L, data))
    return out


def killing_form(g, space: Subspace | None = None) -> Mat:
    """Gram matrix ``tr(ad x_i ad x_j)`` of the algebra spanned by ``space`` (default ``g``)."""
    sp = g.space if space is None else space
    ads = ad_matrices(g, sp)
    d = len(ads)
    flats = [a.data for a in ads]
    trans = [a.transpose().data for a in ads]
    dens = [a.den for a in ads]
    L = 1
    for x in dens:
        L = lcm(L, x * x)
    data = {}
    for i in range(d):
        fi = flats[i]
        for j in range(i, d):
            tj = trans[j]
            re = im = 0
            if len(fi) > len(tj):
                small, big = tj, fi
            else:
                small, big = fi, tj
            for k, (a, b) in small.items():
                y = big.get(k)
                if y is not None:
                    re += a * y[0] - b * y[1]
                    im += a * y[1] + b * y[0]
            if re or im:
                m = L // (dens[i] * dens[j])
                data[i * d + j] = (re * m, im * m)
                data[j * d + i] = (re * m, im * m)
    return Mat(d, d, L, data)


def killing_rank(g, space: Subspace | None = None) -> int:
    return killing_form(g, space).rank()


def column_support(n: int, space: Subspace) -> Subspace:
    """Sum of the column spaces of the matrices in ``space`` (a subspace of ``Q(i)^n``)."""
    cols = []
    for v in space.vecs():
        per_col: dict[int, dict] = {}
        for k, x in v.data.items():
            i, j = divmod(k, n)
            per_col.setdefault(j, {})[i] = x
        cols.extend(per_col.values())
    return Subspace.from_dicts(n, cols)


def invariant_forms(g: MatLie, support: Subspace | None = None, space: Subspace | None = None) -> tuple[int, int]:
    """Dimensions of symmetric and skew ``B`` with ``Y^t B + B Y = 0`` for every ``Y`` in ``g``.

    ``Y`` is the action of an element of ``g`` restricted to ``support``
    (default: the column support), written in the support's canonical basis.
    """
    n = g.n
    sp = g.space if space is None else space
    sup = column_support(n, sp) if support is None else support
    if sup.ambient_dim != n:
        raise DimensionError("support must live in Q(i)^n")
    s = sup.dim
    if s == 0:
        return (0, 0)
    svecs = sup.vecs()
    ys = []
    for x in sp.matrices(n):
        cols = []
        for u in svecs:
            xu = Mat.from_vec(n, 1, u)
            w = (x @ xu).flat()
            if not sup.contains(w):
                raise LieError("support is not invariant under the algebra")
            cols.append(sup.coordinates(w, check=False))
        # Y[k, j] = coordinate k of x u_j
        L = 1
        for col in cols:
            for c in col:
                L = lcm(L, c[2])
        data = {}
        for j, col in enumerate(cols):
            for k, (a, b, d) in enumerate(col):
                if a or b:
                    data[k * s + j] = (a * (L // d), b * (L // d))
        ys.append(Mat(s, s, L, data))

    L = 1
    for y in ys:
        L = lcm(L, y.den)
    ydata = [({k: (a * (L // y.den), b * (L // y.den)) for k, (a, b) in y.data.items()}) for y in ys]
    rows_of = [[{} for _ in range(s)] for _ in ys]
    for t, yd in enumerate(ydata):
        for k, v in yd.items():
            i, j = divmod(k, s)
            rows_of[t][i][j] = v
    ss = s * s
    nblocks = len(ys)

    def solve(sym_sign: int) -> int:
        # unknown B = sum b_kl E_kl; equations Y^t B + B Y = 0 per Y, and B^t = sym_sign * B
        images = []
        for k in range(s):
            for l in range(s):
                data: dict = {}
                for t in range(nblocks):
                    off = t * ss
                    # (Y^t E_kl)_{il} = Y_ki ; (E_kl Y)_{kj} = Y_lj
                    for i, (a, b) in rows_of[t][k].items():
                        key = off + i * s + l
                        x = data.get(key, (0, 0))
                        data[key] = (x[0] + a, x[1] + b)
                    for j, (a, b) in rows_of[t][l].items():
                        key = off + k * s + j
                        x = data.get(key, (0, 0))
                        data[key] = (x[0] + a, x[1] + b)
                off = nblocks * ss
                key = off + l * s + k
                x = data.get(key, (0, 0))
                data[key] = (x[0] + L, x[1])
                key = off + k * s + l
                x = data.get(key, (0, 0))
                data[key] = (x[0] - sym_sign * L, x[1])
                images.append(Vec((nblocks + 1) * ss, L, data))
        return kernel_of_images(images).dim

    return (solve(1), solve(-1))


@dataclass(frozen=True)
class StructureSignature:
    dim: int
    center_dim: int
    derived_dim: int
    killing_rank: int
    forms: tuple[int, int] | None

    def as_tuple(self):
        return (self.dim, self.center_dim, self.derived_dim, self.killing_rank, self.forms)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "center_dim": self.center_dim,
            "derived_dim": self.derived_dim,
            "killing_rank": self.killing_rank,
            "forms": list(self.forms) if self.forms is not None else None,
        }


def signature(g, space: Subspace | None = None) -> StructureSignature:
    """Invariants of the subalgebra ``space`` of ``g`` (default: ``g`` itself)."""
    sub = g if space is None else _subalgebra(g, space)
    forms = invariant_forms(sub) if isinstance(sub, MatLie) else None
    return StructureSignature(
        dim=sub.space.dim,
        center_dim=center(sub).dim,
        derived_dim=derived(sub).dim,
        killing_rank=killing_rank(sub),
        forms=forms,
    )


def _subalgebra(g, space: Subspace):
    if isinstance(g, (MatLie, MatAlgebra)):
        return MatLie(g.n, space, check=False)
    if isinstance(g, ScLie):
        return _ScSub(g, space)
    raise TypeError(f"unsupported carrier {type(g).__name__}")


@dataclass(frozen=True, eq=False)
class _ScSub:
    parent: ScLie
    space: Subspace
    is_lie = True

    @property
    def ambient_dim(self) -> int:
        return self.parent.dim

    def product_vec(self, u: Vec, v: Vec) -> Vec:
        return self.parent.product_vec(u, v)


def jacobi_check(a) -> bool:
    """Jacobi identity on all basis triples (and antisymmetry for structure constants)."""
    vecs = _algebra_basis(a)
    d = len(vecs)
    br = a.product_vec
    for i in range(d):
        if br(vecs[i], vecs[i]):
            return False
        for j in range(i + 1, d):
            s = br(vecs[i], vecs[j]) + br(vecs[j], vecs[i])
            if s:
                return False
    for i in range(d):
        for j in range(i + 1, d):
            for k in range(j + 1, d):
                x, y, z = vecs[i], vecs[j], vecs[k]
                tot = br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))
                if tot:
                    return False
    return True


def sum_of(*spaces: Subspace) -> Subspace:
    if len(spaces) == 1:
        return spaces[0]
    return sum_spaces(*spaces)
