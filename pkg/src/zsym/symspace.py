"""Locally Z2xZ2-symmetric spaces ``(g, h)`` from a grading, with two invariant connections.

For ``h = g_e`` and ``m`` the sum of the other components, an invariant
connection on the reductive pair is determined by a bilinear map
``Lambda: m x m -> m``. Its torsion and curvature at the origin are

    T(x, y) = Lambda(x) y - Lambda(y) x - [x, y]_m
    R(x, y) = [Lambda(x), Lambda(y)] - Lambda([x, y]_m) - ad([x, y]_h)

restricted to ``m``. The canonical connection has ``Lambda = 0``; the
second connection uses ``Lambda(x) y = 1/2 [x, y]_m`` and is torsion free.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .exact import GaussianRational, format_scalar
from .gradings import Grading, GradingError, dual_eigenspaces
from .lie import largest_ideal_in
from .linalg import Mat, Subspace, Vec, is_direct_sum, lincomb, sum_spaces

__all__ = [
    "SymSpaceError",
    "LocalSymSpace",
    "fixed_subalgebra",
    "build_space",
    "torsion",
    "curvature",
    "second_connection_torsion",
    "is_symmetric",
]


class SymSpaceError(ValueError):
    pass


def fixed_subalgebra(g: Grading, realized: bool = False) -> Subspace:
    """Joint fixed points of the dual action (the identity eigenspace)."""
    return dual_eigenspaces(g, realized=realized)[g.group.identity]


class _Splitter:
    """Coordinates of vectors of ``g`` in the concatenated basis ``(h-basis, m-basis)``."""

    def __init__(self, whole: Subspace, hb: list[Vec], mb: list[Vec]):
        self.piv = whole.pivots
        self.hb = hb
        self.mb = mb
        parts = hb + mb
        d = len(parts)
        if d != len(self.piv):
            raise SymSpaceError("h and m do not decompose g")
        mu = Mat.from_entries(d, d, [parts[j][self.piv[k]] for k in range(d) for j in range(d)])
        if not mu.is_nonsingular():
            raise SymSpaceError("h and m do not decompose g")
        inv = mu.inverse()
        self.den = inv.den
        self.rows = [{k: inv.data[j * d + k] for k in range(d) if j * d + k in inv.data} for j in range(d)]
        self.nh = len(hb)

    def coords(self, v: Vec) -> list[tuple[int, int, int]]:
        ent = {k: v.data[p] for k, p in enumerate(self.piv) if p in v.data}
        out = []
        den = self.den * v.den
        for row in self.rows:
            re = im = 0
            for k, (a, b) in ent.items():
                x = row.get(k)
                if x is not None:
                    re += x[0] * a - x[1] * b
                    im += x[0] * b + x[1] * a
            out.append((re, im, den))
        return out


def _nonzero(t: tuple[int, int, int]) -> bool:
    return bool(t[0] or t[1])


def _gr(t: tuple[int, int, int]) -> GaussianRational:
    from fractions import Fraction

    return GaussianRational(Fraction(t[0], t[2]), Fraction(t[1], t[2]))


@dataclass(eq=False)
class LocalSymSpace:
    grading: Grading
    h: Subspace
    m: Subspace
    reductive: bool
    effective: bool
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def carrier(self):
        return self.grading.carrier

    @cached_property
    def m_basis(self) -> list[Vec]:
        return self.m.vecs()

    @cached_property
    def h_basis(self) -> list[Vec]:
        return self.h.vecs()

    @cached_property
    def _split(self) -> _Splitter:
        return _Splitter(self.carrier.space, self.h_basis, self.m_basis)

    @cached_property
    def _pairs(self) -> dict[tuple[int, int], tuple[list, list]]:
        """``(h-coords, m-coords)`` of ``[x_i, x_j]`` for ``i < j`` on the ``m`` basis."""
        mb = self.m_basis
        nh = len(self.h_basis)
        out = {}
        for i in range(len(mb)):
            for j in range(i + 1, len(mb)):
                w = self.carrier.product_vec(mb[i], mb[j])
                c = self._split.coords(w) if w else []
                out[(i, j)] = (c[:nh], c[nh:]) if c else ([], [])
        return out

    # ---- torsion

    def torsion(self, scale: tuple[int, int] = (0, 1)) -> dict[tuple[int, int], list]:
        """Nonzero torsion values ``T(x_i, x_j)``, ``i < j``, as m-coordinates.

        ``scale = (p, q)`` selects ``Lambda(x) y = (p/q) [x, y]_m``.
        """
        p, q = scale
        out = {}
        for (i, j), (_, mc) in self._pairs.items():
            # Lambda(x)y - Lambda(y)x - [x,y]_m = (2p/q - 1) [x,y]_m
            num, den = 2 * p - q, q
            vals = [(a * num, b * num, d * den) for a, b, d in mc]
            if any(_nonzero(v) for v in vals):
                out[(i, j)] = vals
        return out

    def torsion_is_zero(self, scale: tuple[int, int] = (0, 1)) -> bool:
        return not self.torsion(scale)

    # ---- curvature

    def _ad_h_on_m(self, hc: list) -> Mat:
        """Matrix on the m-basis of ``ad(sum hc_k h_k)`` restricted to ``m``."""
        hb, mb = self.h_basis, self.m_basis
        dm = len(mb)
        nh = len(hb)
        if not any(_nonzero(t) for t in hc):
            return Mat.zeros(dm, dm)
        hv = lincomb(hc, hb) if hb else None
        cols = []
        for z in mb:
            w = self.carrier.product_vec(hv, z)
            c = self._split.coords(w) if w else [(0, 0, 1)] * (nh + dm)
            if any(_nonzero(t) for t in c[:nh]):
                raise SymSpaceError("[h, m] is not contained in m")
            cols.append(c[nh:])
        return Mat.from_entries(dm, dm, [_gr(cols[j][k]) for k in range(dm) for j in range(dm)])

    def curvature_matrix(self, i: int, j: int, scale: tuple[int, int] = (0, 1)) -> Mat:
        """``R(x_i, x_j)`` on the m-basis for ``Lambda = (p/q) [., .]_m``."""
        dm = len(self.m_basis)
        if i == j:
            return Mat.zeros(dm, dm)
        if i > j:
            return -self.curvature_matrix(j, i, scale)
        hc, mc = self._pairs[(i, j)]
        r = -self._ad_h_on_m(hc) if hc else Mat.zeros(dm, dm)
        p, q = scale
        if p:
            lam = [self._lambda(k, scale) for k in range(dm)]
            r = r + (lam[i] @ lam[j] - lam[j] @ lam[i])
            if mc:
                lm = Mat.zeros(dm, dm)
                for k, t in enumerate(mc):
                    if _nonzero(t):
                        lm = lm + lam[k] * _gr(t)
                r = r - lm
        return r

    def _lambda(self, k: int, scale: tuple[int, int]) -> Mat:
        key = ("lam", k, scale)
        if key not in self._cache:
            p, q = scale
            dm = len(self.m_basis)
            cols = []
            for j in range(dm):
                if j == k:
                    cols.append([GaussianRational()] * dm)
                    continue
                _, mc = self._pairs[(min(k, j), max(k, j))]
                sign = 1 if k < j else -1
                if not mc:
                    cols.append([GaussianRational()] * dm)
                else:
                    cols.append([_gr((a * p * sign, b * p * sign, d * q)) for a, b, d in mc])
            self._cache[key] = Mat.from_entries(dm, dm, [cols[j][r] for r in range(dm) for j in range(dm)])
        return self._cache[key]

    def curvature(self, scale: tuple[int, int] = (0, 1)) -> dict[tuple[int, int], Mat]:
        """Nonzero ``R(x_i, x_j)``, ``i < j``."""
        out = {}
        dm = len(self.m_basis)
        for i in range(dm):
            for j in range(i + 1, dm):
                r = self.curvature_matrix(i, j, scale)
                if not r.is_zero():
                    out[(i, j)] = r
        return out

    def curvature_is_zero(self, scale: tuple[int, int] = (0, 1)) -> bool:
        dm = len(self.m_basis)
        for i in range(dm):
            for j in range(i + 1, dm):
                if not self.curvature_matrix(i, j, scale).is_zero():
                    return False
        return True

    def is_symmetric(self) -> bool:
        """Whether ``[m, m]`` lies in ``h`` (the pair is then a symmetric pair)."""
        return all(not any(_nonzero(t) for t in mc) for _, mc in self._pairs.values())

    # ---- serialization

    def torsion_json(self, scale: tuple[int, int] = (0, 1)) -> list:
        out = []
        for (i, j), vals in sorted(self.torsion(scale).items()):
            for k, t in enumerate(vals):
                if _nonzero(t):
                    out.append([i, j, k, format_scalar(_gr(t))])
        return out

    def curvature_json(self, scale: tuple[int, int] = (0, 1)) -> list:
        out = []
        for (i, j), r in sorted(self.curvature(scale).items()):
            for (k, l), x in zip(((k, l) for k in range(r.rows) for l in range(r.cols)), r.entries):
                if x:
                    out.append([i, j, k, l, format_scalar(x)])
        return out


def build_space(g: Grading) -> LocalSymSpace:
    """``h = g_e``, ``m`` = the other components; records reductivity and effectivity."""
    G = g.group
    e = G.identity
    h = g.components[e]
    others = [g.components[x] for x in G.elements if x != e]
    n = g.carrier.ambient_dim
    m = sum_spaces(*others) if len(others) > 1 else (others[0] if others else Subspace.zero(n))
    if not is_direct_sum([h, m], g.carrier.space):
        raise SymSpaceError("h + m is not a direct-sum decomposition of g")
    reductive = all(
        m.contains(g.carrier.product_vec(x, y)) or not g.carrier.product_vec(x, y)
        for x in h.vecs()
        for y in m.vecs()
    )
    effective = largest_ideal_in(g.carrier, h).is_zero()
    return LocalSymSpace(g, h, m, reductive, effective)


def torsion(space: LocalSymSpace) -> dict:
    """Torsion of the canonical connection, ``T(x, y) = -[x, y]_m``."""
    return space.torsion((0, 1))


def curvature(space: LocalSymSpace) -> dict:
    """Curvature of the canonical connection, ``R(x, y) = -ad([x, y]_h)`` on ``m``."""
    return space.curvature((0, 1))


def second_connection_torsion(space: LocalSymSpace) -> dict:
    """Torsion of the connection with ``Lambda(x) y = 1/2 [x, y]_m`` (empty when torsion free)."""
    return space.torsion((1, 2))


def is_symmetric(space: LocalSymSpace) -> bool:
    return space.is_symmetric()
