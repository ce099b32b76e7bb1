"""Group gradings of matrix algebras and Lie algebras.

A :class:`Grading` assigns a subspace of the carrier to every element of a
finite abelian group. Constructors build the elementary, Pauli, tensor,
involution-restricted and special-linear gradings; :func:`check_grading`
verifies the defining properties and :func:`dual_eigenspaces` recovers the
components from the dual action of the character group.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .exact import GaussianRational, format_scalar, parse_scalar
from .groups import (
    AbGroup,
    Character,
    GroupElt,
    Z2xZ2,
    characters,
    multiply,
    subgroup_generated,
)
from .lie import (
    PAULI,
    InvolutionSpec,
    MatAlgebra,
    MatLie,
    ScLie,
    build_K,
    build_sl,
    psi_catalogue,
    skew_part,
    symmetric_part,
    _stack,
)
from .linalg import (
    DimensionError,
    Mat,
    Subspace,
    Vec,
    intersect,
    is_direct_sum,
    kron,
    lincomb,
    solve_in,
)

__all__ = [
    "GradingError",
    "Grading",
    "Automorphism",
    "VerificationReport",
    "check_grading",
    "elementary",
    "pauli",
    "trivial",
    "tensor",
    "restrict_K",
    "class1_sl",
    "class2_sl",
    "fine_bcd",
    "fine_sl",
    "dual_eigenspaces",
    "grading_to_json",
    "grading_from_json",
    "dumps",
    "loads",
]

JSON_VERSION = 1


class GradingError(ValueError):
    """A construction violates a precondition (non-graded involution, overlapping supports...)."""


# --------------------------------------------------------------------------
# automorphisms realizing the dual action


@dataclass(frozen=True, eq=False)
class Automorphism:
    """``X -> M s(X) M^-1`` where ``s`` is the identity or ``X -> -X*``."""

    conj: Mat | None = None
    anti: InvolutionSpec | None = None

    @cached_property
    def conj_inv(self) -> Mat | None:
        return None if self.conj is None else self.conj.inverse()

    def apply_mat(self, x: Mat) -> Mat:
        if self.anti is not None:
            x = -self.anti.star(x)
        if self.conj is not None:
            x = self.conj @ x @ self.conj_inv
        return x

    def __call__(self, v: Vec, n: int) -> Vec:
        if self.conj is None and self.anti is None:
            return v
        return self.apply_mat(Mat.from_vec(n, n, v)).flat()


def _char_key(chi: Character) -> tuple:
    return tuple(chi.values_on_generators)


# --------------------------------------------------------------------------
# the grading object


@dataclass(frozen=True, eq=False)
class Grading:
    group: AbGroup
    carrier: object
    components: Mapping[GroupElt, Subspace]
    action: Mapping[tuple, Automorphism] | None = field(default=None, repr=False)
    name: str = ""

    def __post_init__(self):
        comps = dict(self.components)
        for x in self.group.elements:
            if x not in comps:
                comps[x] = Subspace.zero(self.carrier.ambient_dim)
        for x, s in comps.items():
            self.group.check(x)
            if s.ambient_dim != self.carrier.ambient_dim:
                raise DimensionError(
                    f"component {self.group.name(x)} has ambient dim {s.ambient_dim}, "
                    f"carrier has {self.carrier.ambient_dim}"
                )
        object.__setattr__(self, "components", comps)

    def __getitem__(self, x) -> Subspace:
        if isinstance(x, str):
            x = self.group.parse(x)
        return self.components[x]

    @property
    def n(self) -> int:
        return self.carrier.n

    def support(self) -> tuple[GroupElt, ...]:
        return tuple(x for x in self.group.elements if not self.components[x].is_zero())

    def dims(self) -> dict[str, int]:
        return {self.group.name(x): self.components[x].dim for x in self.group.elements}

    def realized(self, chi: Character) -> Automorphism | None:
        if self.action is None:
            return None
        return self.action.get(_char_key(chi))

    def verify(self) -> VerificationReport:
        return check_grading(self)

    def __eq__(self, other):
        if not isinstance(other, Grading):
            return NotImplemented
        return (
            self.group == other.group
            and self.carrier.ambient_dim == other.carrier.ambient_dim
            and self.carrier.space == other.carrier.space
            and all(self.components[x] == other.components[x] for x in self.group.elements)
        )

    __hash__ = None


@dataclass
class VerificationReport:
    direct_sum: bool
    compatibility: dict[tuple[str, str], bool]
    support: tuple[str, ...]
    generates_group: bool
    dims: dict[str, int]
    failures: list[str] = field(default_factory=list)

    @property
    def compatible(self) -> bool:
        return all(self.compatibility.values())

    @property
    def ok(self) -> bool:
        return self.direct_sum and self.compatible

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "direct_sum": self.direct_sum,
            "compatible": self.compatible,
            "support": list(self.support),
            "generates_group": self.generates_group,
            "dims": self.dims,
            "failures": list(self.failures),
        }


def check_grading(g: Grading) -> VerificationReport:
    """Direct-sum decomposition, ``g_p g_q in g_pq`` on basis pairs, and the support."""
    G = g.group
    comps = g.components
    name = G.name
    failures = []
    direct = is_direct_sum([comps[x] for x in G.elements], g.carrier.space)
    if not direct:
        failures.append("components do not form a direct sum equal to the carrier")
    compat: dict[tuple[str, str], bool] = {}
    elts = G.elements
    bases = {x: comps[x].vecs() for x in elts}
    lie = getattr(g.carrier, "is_lie", True)
    for i, p in enumerate(elts):
        for j, q in enumerate(elts):
            if lie and j < i:
                compat[(name(p), name(q))] = compat[(name(q), name(p))]
                continue
            target = comps[multiply(G, p, q)]
            ok = True
            if bases[p] and bases[q]:
                for u in bases[p]:
                    for v in bases[q]:
                        w = g.carrier.product_vec(u, v)
                        if w and not target.contains(w):
                            ok = False
                            break
                    if not ok:
                        break
            compat[(name(p), name(q))] = ok
            if not ok:
                failures.append(f"product of components {name(p)} and {name(q)} leaves component {name(multiply(G, p, q))}")
    supp = g.support()
    generated = subgroup_generated(G, supp) == frozenset(G.elements)
    return VerificationReport(
        direct_sum=direct,
        compatibility=compat,
        support=tuple(name(x) for x in supp),
        generates_group=generated,
        dims=g.dims(),
        failures=failures,
    )


# --------------------------------------------------------------------------
# constructors


def _parse_elts(G: AbGroup, t: Sequence) -> list[GroupElt]:
    return [G.parse(x) if isinstance(x, str) else G.check(x) for x in t]


def _scalar_diag(values: Sequence[GaussianRational]) -> Mat:
    n = len(values)
    return Mat.from_entries(n, n, [values[i] if i == j else 0 for i in range(n) for j in range(n)])


def elementary(n: int, t: Sequence, group: AbGroup = Z2xZ2) -> Grading:
    """Grading of ``M_n`` with ``E_ij`` in degree ``t_i^-1 t_j``."""
    ts = _parse_elts(group, t)
    if len(ts) != n:
        raise DimensionError(f"tuple has length {len(ts)}, expected {n}")
    rows: dict[GroupElt, list] = {x: [] for x in group.elements}
    for i in range(n):
        inv_i = group.inverse(ts[i])
        for j in range(n):
            rows[multiply(group, inv_i, ts[j])].append({i * n + j: (1, 0)})
    comps = {x: Subspace.from_dicts(n * n, r) for x, r in rows.items()}
    action = {}
    for chi in characters(group):
        # D = diag(chi(t_i)^-1) so that D E_ij D^-1 = chi(t_i^-1 t_j) E_ij
        action[_char_key(chi)] = Automorphism(conj=_scalar_diag([chi(x).conjugate() for x in ts]))
    label = "".join(group.name(x) for x in ts)
    return Grading(group, MatAlgebra(n), comps, action, name=f"elementary({label})")


def pauli() -> Grading:
    """The Pauli grading of ``M_2`` by Z2xZ2."""
    comps = {Z2xZ2.parse(p): Subspace.from_dicts(4, [PAULI[p].flat().data]) for p in "eabc"}
    action = {}
    for chi in characters(Z2xZ2):
        for q in "eabc":
            xq = PAULI[q]
            inv = xq.inverse()
            if all(xq @ PAULI[p] @ inv == PAULI[p] * chi(Z2xZ2.parse(p)) for p in "eabc"):
                action[_char_key(chi)] = Automorphism(conj=xq)
                break
    return Grading(Z2xZ2, MatAlgebra(2), comps, action, name="pauli")


def trivial(m: int, group: AbGroup = Z2xZ2) -> Grading:
    comps = {group.identity: Subspace.full(m * m)}
    action = {_char_key(chi): Automorphism() for chi in characters(group)}
    return Grading(group, MatAlgebra(m), comps, action, name=f"trivial({m})")


def tensor(ga: Grading, gb: Grading) -> Grading:
    """Tensor product grading on ``M_m (x) M_k`` with ``a (x) b`` stored as ``kron(b, a)``."""
    if ga.group != gb.group:
        raise GradingError("tensor factors must be graded by the same group")
    if not (isinstance(ga.carrier, MatAlgebra) and isinstance(gb.carrier, MatAlgebra)):
        raise GradingError("tensor products are formed of matrix-algebra gradings")
    G = ga.group
    common = set(ga.support()) & set(gb.support())
    if common != {G.identity}:
        raise GradingError(
            "supports intersect in " + ", ".join(sorted(G.name(x) for x in common)) + "; expected only the identity"
        )
    m, k = ga.n, gb.n
    N = m * k
    rows: dict[GroupElt, list] = {x: [] for x in G.elements}
    for q in ga.support():
        amats = ga.components[q].matrices(m)
        for r in gb.support():
            bmats = gb.components[r].matrices(k)
            pq = multiply(G, q, r)
            for b in bmats:
                for a in amats:
                    rows[pq].append(kron(b, a).flat().data)
    comps = {x: Subspace.from_dicts(N * N, r) for x, r in rows.items()}
    action = None
    if ga.action is not None and gb.action is not None:
        action = {}
        for chi in characters(G):
            aa, ab = ga.realized(chi), gb.realized(chi)
            if aa is None or ab is None or aa.anti is not None or ab.anti is not None:
                action = None
                break
            ma = aa.conj if aa.conj is not None else Mat.identity(m)
            mb = ab.conj if ab.conj is not None else Mat.identity(k)
            action[_char_key(chi)] = Automorphism(conj=kron(mb, ma))
    return Grading(G, MatAlgebra(N), comps, action, name=f"{ga.name}*{gb.name}")


def _check_graded(gr: Grading, inv: InvolutionSpec) -> None:
    n = gr.n
    for x in gr.group.elements:
        comp = gr.components[x]
        for v in comp.vecs():
            if not comp.contains(inv.star_vec(v)):
                raise GradingError(
                    f"involution {inv.name or 'phi'} does not preserve component {gr.group.name(x)}"
                )
    if inv.n != n:
        raise DimensionError(f"involution is {inv.n}x{inv.n}, grading lives on M_{n}")


def restrict_K(gr: Grading, inv: InvolutionSpec, name: str = "") -> Grading:
    """Induced grading on ``K(M_n, *) = {X : X* = -X}`` for a graded involution."""
    if not isinstance(gr.carrier, MatAlgebra):
        raise GradingError("restriction starts from a grading of M_n")
    n = gr.n
    _check_graded(gr, inv)
    carrier = build_K(n, inv)
    comps = {x: skew_part(n, inv, within=s) for x, s in gr.components.items()}
    return Grading(gr.group, carrier, comps, gr.action, name=name or f"K({gr.name},{inv.name})")


def class1_sl(gr: Grading, name: str = "") -> Grading:
    """Class I grading of ``sl(n)``: ``g_p = R_p`` off the identity, ``g_e = R_e`` traceless."""
    if not isinstance(gr.carrier, MatAlgebra):
        raise GradingError("class I gradings start from a grading of M_n")
    n = gr.n
    sl = build_sl(n)
    comps = {}
    for x, s in gr.components.items():
        comps[x] = intersect(s, sl.space) if x == gr.group.identity else s
    return Grading(gr.group, sl, comps, gr.action, name=name or f"I({gr.name})")


def class2_sl(n: int, t: Sequence, inv: InvolutionSpec, name: str = "") -> Grading:
    """Class II grading of ``sl(n)`` from a Z2-graded ``M_n`` (``t`` over ``{e, a}``) and an involution.

    ``g_e = K(R_e)``, ``g_a = K(R_a)``, ``g_b = H(R_e)`` traceless, ``g_c = H(R_a)``.
    """
    G = Z2xZ2
    ts = _parse_elts(G, t)
    if any(x not in (G.parse("e"), G.parse("a")) for x in ts):
        raise GradingError("class II tuples take values in {e, a}")
    base = elementary(n, ts, G)
    _check_graded(base, inv)
    sl = build_sl(n)
    re_, ra = base["e"], base["a"]
    comps = {
        G.parse("e"): skew_part(n, inv, within=re_),
        G.parse("a"): skew_part(n, inv, within=ra),
        G.parse("b"): intersect(symmetric_part(n, inv, within=re_), sl.space),
        G.parse("c"): symmetric_part(n, inv, within=ra),
    }
    d = _scalar_diag([GaussianRational(1) if x == G.identity else GaussianRational(-1) for x in ts])
    action = {}
    for chi in characters(G):
        lam = chi(G.parse("a")) == GaussianRational(-1)
        phi = chi(G.parse("b")) == GaussianRational(-1)
        action[_char_key(chi)] = Automorphism(conj=d if lam else None, anti=inv if phi else None)
    label = "".join(G.name(x) for x in ts)
    return Grading(G, sl, comps, action, name=name or f"II({label},{inv.name})")


def fine_bcd(psi: str, m: int) -> Grading:
    """``K(M_m (x) M_2)`` with the Pauli grading on the second factor and involution ``psi``."""
    inv = psi_catalogue(psi, m)
    return restrict_K(tensor(trivial(m), pauli()), inv, name=f"{psi}(m={m})")


def fine_sl(m: int) -> Grading:
    return class1_sl(tensor(trivial(m), pauli()), name=f"I(M_{m}*pauli)")


# --------------------------------------------------------------------------
# dual action


def _decomposition(g: Grading):
    """Coordinates of carrier basis vectors in the concatenated component bases."""
    G = g.group
    parts = []
    owner = []
    for x in G.elements:
        for v in g.components[x].vecs():
            parts.append(v)
            owner.append(x)
    carrier = g.carrier.space
    piv = carrier.pivots
    d = len(piv)
    if len(parts) != d:
        raise GradingError("components do not decompose the carrier")
    # square matrix of component basis vectors restricted to carrier pivots
    mu = Mat.from_entries(d, d, [parts[j][piv[k]] for k in range(d) for j in range(d)])
    if not mu.is_nonsingular():
        raise GradingError("components do not decompose the carrier")
    return parts, owner, mu.inverse()


def projection_images(g: Grading) -> dict[tuple, list[Vec]]:
    """Images of the carrier basis under ``alpha(chi) X = sum_p chi(p) pi_p(X)``, per character."""
    parts, owner, mu_inv = _decomposition(g)
    d = len(parts)
    # carrier basis vector j has coordinates given by column j of mu_inv
    cols = [[mu_inv.data.get(u * d + j, (0, 0)) for u in range(d)] for j in range(d)]
    den = mu_inv.den
    out = {}
    for chi in characters(g.group):
        vals = [_triple(chi(x)) for x in owner]
        imgs = []
        for j in range(d):
            trip = []
            for (a, b), (c, e, f) in zip(cols[j], vals):
                trip.append((a * c - b * e, a * e + b * c, den * f))
            imgs.append(lincomb(trip, parts))
        out[_char_key(chi)] = imgs
    return out


def _triple(s: GaussianRational) -> tuple[int, int, int]:
    d = s.re.denominator * s.im.denominator
    return (s.re.numerator * (d // s.re.denominator), s.im.numerator * (d // s.im.denominator), d)


def _neg_triple(s: GaussianRational) -> tuple[int, int, int]:
    a, b, d = _triple(s)
    return (-a, -b, d)


def dual_eigenspaces(g: Grading, realized: bool = False) -> dict[GroupElt, Subspace]:
    """Joint eigenspaces ``{X : alpha(chi) X = chi(p) X for all chi}`` for every ``p``.

    With ``realized=True`` the grading's own automorphisms are used (they
    must be attached); otherwise the action is built from the projections.
    """
    G = g.group
    chars = characters(G)
    N = g.carrier.ambient_dim
    basis = g.carrier.space.vecs()
    if realized:
        if g.action is None:
            raise GradingError(f"grading {g.name!r} carries no realized action")
        n = g.carrier.n
        images_by_chi = {_char_key(c): [g.action[_char_key(c)](v, n) for v in basis] for c in chars}
    else:
        images_by_chi = projection_images(g)
    out = {}
    for p in G.elements:
        shifts = [(_char_key(chi), _neg_triple(chi(p))) for chi in chars]
        images = []
        for j, v in enumerate(basis):
            parts = [lincomb([(1, 0, 1), s], [images_by_chi[k][j], v]) for k, s in shifts]
            images.append(_stack(parts, N))
        out[p] = solve_in(basis, images, N)
    return out



# --------------------------------------------------------------------------
# serialization


def _mat_json(m: Mat) -> list[list[str]]:
    return [[format_scalar(x) for x in row] for row in m.tolist()]


def _vec_json(v: Vec) -> list[str]:
    return [format_scalar(x) for x in v.tolist()]


def _carrier_json(c) -> dict:
    if isinstance(c, MatAlgebra):
        return {"kind": "matrix_algebra", "n": c.n}
    if isinstance(c, MatLie):
        return {"kind": "matrix_lie", "n": c.n, "name": c.name, "basis": [_mat_json(m) for m in c.basis()]}
    if isinstance(c, ScLie):
        return {"kind": "structure_constants", "dim": c.dim, "name": c.name, "triples": c.to_triples()}
    raise TypeError(f"unsupported carrier {type(c).__name__}")


def grading_to_json(g: Grading) -> dict:
    c = g.carrier
    comps = {}
    for x in g.group.elements:
        s = g.components[x]
        if isinstance(c, ScLie):
            comps[g.group.name(x)] = [_vec_json(v) for v in s.vecs()]
        else:
            comps[g.group.name(x)] = [_mat_json(m) for m in s.matrices(c.n)]
    return {
        "version": JSON_VERSION,
        "name": g.name,
        "group": list(g.group.cyclic_orders),
        "carrier": _carrier_json(c),
        "components": comps,
    }


def _parse_mat(rows) -> Mat:
    return Mat.from_rows([[parse_scalar(str(x)) for x in row] for row in rows])


def grading_from_json(d: dict) -> Grading:
    if d.get("version") != JSON_VERSION:
        raise GradingError(f"unsupported grading JSON version {d.get('version')!r}")
    G = AbGroup(tuple(d["group"]))
    cd = d["carrier"]
    kind = cd["kind"]
    if kind == "matrix_algebra":
        carrier = MatAlgebra(int(cd["n"]))
    elif kind == "matrix_lie":
        n = int(cd["n"])
        mats = [_parse_mat(m) for m in cd["basis"]]
        carrier = MatLie(n, Subspace.from_dicts(n * n, [m.flat().data for m in mats]), cd.get("name", ""))
    elif kind == "structure_constants":
        carrier = ScLie.from_triples(int(cd["dim"]), cd["triples"], name=cd.get("name", ""))
    else:
        raise GradingError(f"unknown carrier kind {kind!r}")
    N = carrier.ambient_dim
    comps = {}
    for key, vecs in d["components"].items():
        x = G.parse(key)
        if kind == "structure_constants":
            rows = [Vec.from_seq([parse_scalar(str(s)) for s in v]).data for v in vecs]
        else:
            rows = [_parse_mat(m).flat().data for m in vecs]
        for r in rows:
            if any(k >= N for k in r):
                raise DimensionError(f"component {key} does not fit the carrier")
        comps[x] = Subspace.from_dicts(N, rows)
    return Grading(G, carrier, comps, None, name=d.get("name", ""))


def dumps(g: Grading) -> str:
    return json.dumps(grading_to_json(g), indent=1, sort_keys=True)


def loads(s: str) -> Grading:
    return grading_from_json(json.loads(s))
