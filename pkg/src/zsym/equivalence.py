"""Equivalences of gradings: a conjugating matrix paired with a group automorphism.

A :class:`Witness` ``(M, omega)`` sends a grading ``g`` to ``g'`` with
``g'_p = M g_{omega(p)} M^-1``; the carrier is transported along, so the
witness also relates gradings living on different (conjugate) subalgebras
of ``gl(n)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .gradings import Grading, GradingError, fine_bcd
from .groups import GroupAut, Z2xZ2
from .lie import MatAlgebra, MatLie
from .linalg import DimensionError, Mat, Subspace, kron

__all__ = [
    "Witness",
    "EquivalenceError",
    "apply",
    "verify_equiv",
    "canonical_witnesses",
    "check_canonical",
    "inequivalence_certificate",
    "conjugate_space",
]


class EquivalenceError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Witness:
    conjugator: Mat
    omega: GroupAut
    source: str = ""
    target: str = ""
    _inv: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        if not self.conjugator.is_square():
            raise DimensionError("conjugator must be square")
        if not self.conjugator.is_nonsingular():
            raise EquivalenceError("conjugator is singular")
        if not (self.omega.is_well_defined() and self.omega.is_bijective()):
            raise EquivalenceError("omega is not a group automorphism")

    @property
    def conjugator_inv(self) -> Mat:
        if not self._inv:
            self._inv.append(self.conjugator.inverse())
        return self._inv[0]

    def inverse(self) -> Witness:
        """Witness of the reverse equivalence: ``(M^-1, omega^-1)``."""
        return Witness(self.conjugator_inv, self.omega.inverse(), self.target, self.source)

    def compose(self, other: Witness) -> Witness:
        """Apply ``other`` first, then ``self``."""
        return Witness(self.conjugator @ other.conjugator, other.omega.compose(self.omega),
                       other.source, self.target)


def conjugate_space(m: Mat, m_inv: Mat, space: Subspace) -> Subspace:
    n = m.rows
    rows = [(m @ x @ m_inv).flat().data for x in space.matrices(n)]
    return Subspace.from_dicts(n * n, rows)


def apply(w: Witness, g: Grading, strict: bool = False) -> Grading:
    """``g'_p = M g_{omega(p)} M^-1`` with the carrier transported to ``M g M^-1``.

    With ``strict=True`` the conjugation must map the carrier onto itself.
    """
    if w.omega.group != g.group:
        raise EquivalenceError("omega acts on a different group")
    c = g.carrier
    if not isinstance(c, (MatAlgebra, MatLie)):
        raise EquivalenceError("witnesses act on matrix carriers")
    n = c.n
    if w.conjugator.rows != n:
        raise DimensionError(f"conjugator is {w.conjugator.rows}x{w.conjugator.rows}, carrier lives in M_{n}")
    m, mi = w.conjugator, w.conjugator_inv
    if isinstance(c, MatAlgebra):
        carrier = c
    else:
        space = conjugate_space(m, mi, c.space)
        if strict and space != c.space:
            raise EquivalenceError("conjugation does not preserve the carrier")
        carrier = MatLie(n, space, c.name, check=False)
    comps = {p: conjugate_space(m, mi, g.components[w.omega(p)]) for p in g.group.elements}
    return Grading(g.group, carrier, comps, None, name=f"{w.target or 'image'}")


def verify_equiv(g1: Grading, g2: Grading, w: Witness) -> bool:
    if g1.group != g2.group:
        return False
    try:
        img = apply(w, g1)
    except (EquivalenceError, DimensionError):
        return False
    return img == g2


_D = Mat.from_rows([["i", 0], [0, 1]])
# inverse of [[1, 1], [i, -i]] up to the scalar 2
_CINV = Mat.from_rows([[1, "-i"], [1, "i"]])

_OMEGA_BC = {"a": "a", "b": "c", "c": "b"}
_OMEGA_CYCLE = {"a": "c", "b": "a", "c": "b"}


def canonical_witnesses(family: str, m: int) -> list[Witness]:
    """Witnesses relating the fine gradings with index 1 to those with index 2 and 3.

    ``family`` is ``"so"`` (involutions ``Psi``) or ``"sp"`` (``PsiBar``,
    ``m`` even). Each witness carries ``source``/``target`` labels.
    """
    if family not in ("so", "sp"):
        raise EquivalenceError(f"family must be 'so' or 'sp', got {family!r}")
    if m < 1:
        raise EquivalenceError("m must be positive")
    if family == "sp" and m % 2:
        raise EquivalenceError("the sp family needs even m")
    stem = "Psi" if family == "so" else "PsiBar"
    ident = Mat.identity(m)
    return [
        Witness(kron(_D, ident), GroupAut.from_map(Z2xZ2, _OMEGA_BC), f"{stem}1", f"{stem}2"),
        Witness(kron(_CINV, ident), GroupAut.from_map(Z2xZ2, _OMEGA_CYCLE), f"{stem}1", f"{stem}3"),
    ]


def check_canonical(family: str, m: int) -> dict[str, bool]:
    """Verify each canonical witness and its inverse on the constructed gradings."""
    out = {}
    cache: dict[str, Grading] = {}

    def get(name: str) -> Grading:
        if name not in cache:
            cache[name] = fine_bcd(name, m)
        return cache[name]

    for w in canonical_witnesses(family, m):
        src, tgt = get(w.source), get(w.target)
        out[f"{w.source}->{w.target}"] = verify_equiv(src, tgt, w)
        out[f"{w.target}->{w.source}"] = verify_equiv(tgt, src, w.inverse())
    return out


def inequivalence_certificate(family: str, m: int) -> dict | None:
    """Isotropy signatures of index 1 and index 4 gradings; distinct signatures certify inequivalence.

    Returns None when the index-4 grading does not exist for ``m`` (odd ``m``
    in the so family, where ``S_m`` is unavailable).
    """
    from .lie import MatLie, invariant_forms, signature

    stem = {"so": "Psi", "sp": "PsiBar"}.get(family)
    if stem is None:
        raise EquivalenceError(f"family must be 'so' or 'sp', got {family!r}")
    if m % 2:
        return None
    sigs, factor = {}, {}
    # the identity component is diag(U, U); its first block C^m (+) 0 is invariant
    block = Subspace.from_dicts(2 * m, [{i: (1, 0)} for i in range(m)])
    for idx in (1, 4):
        name = f"{stem}{idx}"
        g = fine_bcd(name, m)
        ge = g.components[g.group.identity]
        sigs[name] = signature(g.carrier, ge)
        factor[name] = invariant_forms(MatLie(2 * m, ge, check=False), support=block)
    a, b = f"{stem}1", f"{stem}4"
    return {
        "pair": [a, b],
        "signatures": {k: v.to_json() for k, v in sigs.items()},
        "factor_forms": {k: list(v) for k, v in factor.items()},
        "distinct": sigs[a].as_tuple() != sigs[b].as_tuple() and factor[a] != factor[b],
    }
