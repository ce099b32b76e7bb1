"""Census of the classified Z2xZ2-gradings of classical Lie algebras.

Each :class:`CaseSpec` names a family, a parameter tuple and an involution
choice. :func:`run_case` builds the grading, verifies it, recomputes the
components from the dual action, builds the local symmetric space, and
compares the identity component with an independently constructed
block embedding of the expected isotropy subalgebra.
"""
from __future__ import annotations

import json
import time
import traceback
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from . import __version__
from .gradings import (
    Grading,
    check_grading,
    class1_sl,
    class2_sl,
    dual_eigenspaces,
    elementary,
    fine_bcd,
    fine_sl,
    restrict_K,
)
from .lie import phi_catalogue, signature
from .linalg import Subspace
from .symspace import build_space

__all__ = [
    "CaseSpec",
    "CaseReport",
    "FAMILIES",
    "enumerate_cases",
    "expected_isotropy",
    "run_case",
    "run_census",
    "emit",
    "type_letter",
]

FAMILIES = ("BCD_elem", "BCD_fine", "A_classI_elem", "A_classI_fine", "A_classII")
_FAMILY_ORDER = {f: i for i, f in enumerate(FAMILIES)}

CAVEAT = ("distinct rows are certified distinct only through isotropy signatures; "
          "no search over all equivalences is performed")


@dataclass(frozen=True, order=False)
class CaseSpec:
    family: str
    params: tuple[int, ...]
    phi_choice: str

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        object.__setattr__(self, "params", tuple(int(k) for k in self.params))

    @property
    def algebra_kind(self) -> str:
        if self.family.startswith("A_"):
            return "sl"
        if self.family == "BCD_fine":
            return "so" if self.phi_choice in ("Psi1", "Psi2", "Psi3", "Psi4") else "sp"
        return "sp" if self.phi_choice.startswith("PhiBar") else "so"

    @property
    def n(self) -> int:
        """Matrix size of the algebra."""
        f, p, c = self.family, self.params, self.phi_choice
        if f in ("BCD_fine", "A_classI_fine"):
            return 2 * p[0]
        if c.endswith("'"):
            return 2 * sum(p)
        return sum(p)

    @property
    def algebra(self) -> str:
        return f"{self.algebra_kind}({self.n})"

    @property
    def key(self) -> str:
        return f"{self.family}:{self.phi_choice}:{','.join(map(str, self.params))}"

    def sort_key(self):
        return (_FAMILY_ORDER[self.family], self.phi_choice, self.params)

    def to_json(self) -> dict:
        return {"family": self.family, "params": list(self.params), "phi_choice": self.phi_choice}


def type_letter(kind: str, n: int) -> str:
    if kind == "sl":
        return "A"
    if kind == "sp":
        return "C"
    return "B" if n % 2 else "D"


def is_simple(kind: str, n: int) -> bool:
    if kind == "so":
        return n == 3 or n >= 5
    return n >= 2


# --------------------------------------------------------------------------
# enumeration


def _partitions(n_max: int, parts: int, step: int = 1, lo: int = 1) -> list[tuple[int, ...]]:
    """Non-increasing tuples of ``parts`` multiples of ``step`` (each >= lo) with sum <= n_max."""
    out = []

    def rec(prefix, left, cap):
        if len(prefix) == parts:
            out.append(tuple(prefix))
            return
        k = min(cap, left)
        k -= k % step
        while k >= lo:
            rec(prefix + [k], left - k, k)
            k -= step

    rec([], n_max, n_max)
    return sorted(out, key=lambda t: (sum(t), t))


def enumerate_cases(family: str, n_max: int) -> list[CaseSpec]:
    """All canonical parameter tuples of ``family`` with matrix size ``2 <= n <= n_max``."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    out: list[CaseSpec] = []
    if family == "BCD_elem":
        for parts, name in ((2, "1"), (3, "2"), (4, "3")):
            for t in _partitions(n_max, parts):
                out.append(CaseSpec(family, t, f"Phi{name}"))
            for t in _partitions(n_max, parts, step=2, lo=2):
                out.append(CaseSpec(family, t, f"PhiBar{name}"))
        for k in range(1, n_max // 2 + 1):
            out.append(CaseSpec(family, (k,), "Phi1'"))
            out.append(CaseSpec(family, (k,), "PhiBar1'"))
        for t in _partitions(n_max // 2, 2):
            out.append(CaseSpec(family, t, "Phi3'"))
            out.append(CaseSpec(family, t, "PhiBar3'"))
    elif family == "BCD_fine":
        for m in range(1, n_max // 2 + 1):
            for i in (1, 2, 3):
                out.append(CaseSpec(family, (m,), f"Psi{i}"))
            out.append(CaseSpec(family, (m,), "PsiBar4"))
            if m % 2 == 0:
                out.append(CaseSpec(family, (m,), "Psi4"))
                for i in (1, 2, 3):
                    out.append(CaseSpec(family, (m,), f"PsiBar{i}"))
    elif family == "A_classI_elem":
        for parts, name in ((2, "nu1"), (3, "nu2"), (4, "nu3")):
            for t in _partitions(n_max, parts):
                out.append(CaseSpec(family, t, name))
    elif family == "A_classI_fine":
        for m in range(1, n_max // 2 + 1):
            out.append(CaseSpec(family, (m,), "pauli"))
    elif family == "A_classII":
        for t in _partitions(n_max, 2, lo=0):
            if t[0] >= 1 and sum(t) >= 2:
                out.append(CaseSpec(family, t, "Phi1"))
        for t in _partitions(n_max, 2, step=2, lo=0):
            if t[0] >= 2:
                out.append(CaseSpec(family, t, "PhiBar1"))
        for k in range(1, n_max // 2 + 1):
            out.append(CaseSpec(family, (k,), "Phi1'"))
            out.append(CaseSpec(family, (k,), "PhiBar1'"))
    else:
        raise ValueError(f"unknown family {family!r}")
    out = [c for c in out if 2 <= c.n <= n_max]
    return sorted(out, key=CaseSpec.sort_key)


# --------------------------------------------------------------------------
# grading construction


_LABELS = "eabc"


def _tuple(spec: CaseSpec) -> str:
    """Elementary tuple for the spec as a string of element names."""
    p, c = spec.params, spec.phi_choice
    if c.endswith("'"):
        if len(p) == 1:
            return "e" * p[0] + "a" * p[0]
        k1, k3 = p
        return "e" * k1 + "a" * k1 + "b" * k3 + "c" * k3
    return "".join(_LABELS[i] * k for i, k in enumerate(p))


def build_grading(spec: CaseSpec) -> Grading:
    f, c, p = spec.family, spec.phi_choice, spec.params
    if f == "BCD_elem":
        t = _tuple(spec)
        return restrict_K(elementary(len(t), t), phi_catalogue(c, p), name=spec.key)
    if f == "BCD_fine":
        return fine_bcd(c, p[0])
    if f == "A_classI_elem":
        t = _tuple(spec)
        return class1_sl(elementary(len(t), t), name=spec.key)
    if f == "A_classI_fine":
        return fine_sl(p[0])
    if f == "A_classII":
        t = _tuple(spec)
        return class2_sl(len(t), t, phi_catalogue(c, p), name=spec.key)
    raise ValueError(f"unknown family {f!r}")


# --------------------------------------------------------------------------
# expected isotropy: explicit block embeddings


def _so_block(k: int, off: int, n: int) -> list[dict]:
    rows = []
    for i in range(k):
        for j in range(i + 1, k):
            a, b = off + i, off + j
            rows.append({a * n + b: (1, 0), b * n + a: (-1, 0)})
    return rows


def _sp_block(k: int, off: int, n: int) -> list[dict]:
    """``[[A, B], [C, -A^t]]`` with ``B, C`` symmetric, placed at ``off`` (form ``S_k``)."""
    if k % 2:
        raise ValueError("symplectic blocks have even size")
    h = k // 2
    rows = []

    def at(i, j):
        return (off + i) * n + off + j

    for i in range(h):
        for j in range(h):
            rows.append({at(i, j): (1, 0), at(h + j, h + i): (-1, 0)})
    for i in range(h):
        for j in range(i, h):
            if i == j:
                rows.append({at(i, h + i): (1, 0)})
                rows.append({at(h + i, i): (1, 0)})
            else:
                rows.append({at(i, h + j): (1, 0), at(j, h + i): (1, 0)})
                rows.append({at(h + i, j): (1, 0), at(h + j, i): (1, 0)})
    return rows


def _gl_block(k: int, off: int, n: int) -> list[dict]:
    """``diag(W, -W^t)`` on two consecutive ``k``-blocks starting at ``off``."""
    rows = []
    for i in range(k):
        for j in range(k):
            rows.append({(off + i) * n + off + j: (1, 0), (off + k + j) * n + off + k + i: (-1, 0)})
    return rows


def _block_traceless(sizes: Sequence[int], n: int) -> list[dict]:
    rows = []
    off = 0
    for k in sizes:
        for i in range(k):
            for j in range(k):
                if i != j:
                    rows.append({(off + i) * n + off + j: (1, 0)})
        off += k
    for i in range(n - 1):
        rows.append({i * n + i: (1, 0), (i + 1) * n + i + 1: (-1, 0)})
    return rows


def _doubled(rows_m: list[dict], m: int) -> list[dict]:
    """``X -> kron(I_2, X) = diag(X, X)``."""
    n = 2 * m
    out = []
    for r in rows_m:
        d = {}
        for k, v in r.items():
            i, j = divmod(k, m)
            d[i * n + j] = v
            d[(m + i) * n + m + j] = v
        out.append(d)
    return out


def _blocks(kind_of_block, sizes: Sequence[int], n: int) -> list[dict]:
    rows, off = [], 0
    for k in sizes:
        rows.extend(kind_of_block(k, off, n))
        off += k
    return rows


def expected_isotropy(spec: CaseSpec) -> Subspace:
    """The embedded subalgebra the classification assigns to the identity component."""
    f, c, p = spec.family, spec.phi_choice, spec.params
    n = spec.n
    N = n * n
    if f in ("BCD_elem", "A_classII"):
        if c in ("Phi1", "Phi2", "Phi3"):
            rows = _blocks(_so_block, [k for k in p if k], n)
        elif c in ("PhiBar1", "PhiBar2", "PhiBar3"):
            rows = _blocks(_sp_block, [k for k in p if k], n)
        elif c in ("Phi1'", "PhiBar1'"):
            rows = _gl_block(p[0], 0, n)
        elif c in ("Phi3'", "PhiBar3'"):
            rows = _gl_block(p[0], 0, n) + _gl_block(p[1], 2 * p[0], n)
        else:
            raise ValueError(f"no expected isotropy for {spec.key}")
    elif f == "BCD_fine":
        m = p[0]
        so_type = c in ("Psi1", "Psi2", "Psi3", "PsiBar4")
        rows = _doubled(_so_block(m, 0, m) if so_type else _sp_block(m, 0, m), m)
    elif f == "A_classI_elem":
        rows = _block_traceless(p, n)
    elif f == "A_classI_fine":
        m = p[0]
        rows = _doubled(_block_traceless([m], m), m) if m > 1 else []
    else:
        raise ValueError(f"unknown family {f!r}")
    return Subspace.from_dicts(N, rows)


def isotropy_label(spec: CaseSpec) -> str:
    f, c, p = spec.family, spec.phi_choice, spec.params
    nz = [k for k in p if k]
    if f in ("BCD_elem", "A_classII"):
        if c.endswith("'"):
            return "+".join(f"gl({k})" for k in p)
        kind = "sp" if c.startswith("PhiBar") else "so"
        return "+".join(f"{kind}({k})" for k in nz)
    if f == "BCD_fine":
        return f"so({p[0]})" if c in ("Psi1", "Psi2", "Psi3", "PsiBar4") else f"sp({p[0]})"
    if f == "A_classI_elem":
        return "+".join(f"sl({k})" for k in p) + f"+C^{len(p) - 1}"
    return f"sl({p[0]})"


def table_of(spec: CaseSpec) -> int:
    return {"BCD_elem": 1, "BCD_fine": 2, "A_classI_elem": 3, "A_classI_fine": 3, "A_classII": 4}[spec.family]


# --------------------------------------------------------------------------
# running cases


@dataclass
class CaseReport:
    spec: CaseSpec
    algebra: str
    type_letter: str
    simple: bool
    table: int
    isotropy: str
    dims: dict = field(default_factory=dict)
    dim_g: int = 0
    support: list = field(default_factory=list)
    support_generates: bool = False
    degenerate: bool = False
    grading_ok: bool = False
    round_trip: bool = False
    round_trip_realized: bool | None = None
    reductive: bool = False
    effective: bool = False
    match: bool = False
    symmetric: bool = False
    torsion_zero: bool = False
    curvature_zero: bool = False
    second_torsion_zero: bool = False
    signature: dict | None = None
    torsion: list | None = None
    curvature: list | None = None
    caveat: str = CAVEAT
    errors: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        """Verification checks required of every case.

        Effectivity and whether a generating support forces nonzero torsion
        are reported as data; they are properties of the classification
        rather than consistency checks.
        """
        ok = (
            not self.errors
            and self.grading_ok
            and self.round_trip
            and self.round_trip_realized is not False
            and self.reductive
            and self.match
            and self.second_torsion_zero
            and self.torsion_zero == self.symmetric
            and sum(self.dims.values()) == self.dim_g
        )
        return ok

    def to_json(self) -> dict:
        d = asdict(self)
        d["spec"] = self.spec.to_json()
        d["key"] = self.spec.key
        d["passed"] = self.passed
        d["seconds"] = round(self.seconds, 3)
        if self.torsion is None:
            d.pop("torsion")
        if self.curvature is None:
            d.pop("curvature")
        return d


def run_case(spec: CaseSpec, tensors: bool = False) -> CaseReport:
    t0 = time.perf_counter()
    rep = CaseReport(
        spec=spec,
        algebra=spec.algebra,
        type_letter=type_letter(spec.algebra_kind, spec.n),
        simple=is_simple(spec.algebra_kind, spec.n),
        table=table_of(spec),
        isotropy=isotropy_label(spec),
        degenerate=any(k == 0 for k in spec.params),
    )
    try:
        g = build_grading(spec)
        rep.dims = g.dims()
        rep.dim_g = g.carrier.space.dim
        vr = check_grading(g)
        rep.grading_ok = vr.ok
        rep.errors.extend(vr.failures)
        rep.support = list(vr.support)
        rep.support_generates = vr.generates_group
        comps = g.components
        dual = dual_eigenspaces(g)
        rep.round_trip = all(dual[x] == comps[x] for x in g.group.elements)
        if g.action is not None:
            dual = dual_eigenspaces(g, realized=True)
            rep.round_trip_realized = all(dual[x] == comps[x] for x in g.group.elements)
        space = build_space(g)
        rep.reductive = space.reductive
        rep.effective = space.effective
        rep.match = space.h == expected_isotropy(spec)
        rep.symmetric = space.is_symmetric()
        rep.torsion_zero = space.torsion_is_zero()
        rep.curvature_zero = space.curvature_is_zero()
        rep.second_torsion_zero = space.torsion_is_zero((1, 2))
        rep.signature = signature(g.carrier, space.h).to_json()
        if tensors:
            rep.torsion = space.torsion_json()
            rep.curvature = space.curvature_json()
    except Exception as exc:  # recorded, the census continues
        rep.errors.append(f"{type(exc).__name__}: {exc}")
        rep.errors.append(traceback.format_exc(limit=3))
    rep.seconds = time.perf_counter() - t0
    return rep


def _family_letters(spec: CaseSpec) -> str:
    return type_letter(spec.algebra_kind, spec.n)


def run_census(letter: str = "all", n_max: int = 8, tensors: bool = False,
               families: Iterable[str] = FAMILIES) -> list[CaseReport]:
    """Run every enumerated case whose type letter matches ``letter`` (``A``..``D`` or ``all``)."""
    specs = [s for f in families for s in enumerate_cases(f, n_max)]
    if letter != "all":
        specs = [s for s in specs if _family_letters(s) == letter]
    specs.sort(key=CaseSpec.sort_key)
    return [run_case(s, tensors) for s in specs]


# --------------------------------------------------------------------------
# output


def emit(reports: Sequence[CaseReport], fmt: str = "json") -> str:
    reports = sorted(reports, key=lambda r: r.spec.sort_key())
    if fmt == "json":
        return json.dumps({"version": __version__, "cases": [r.to_json() for r in reports]}, indent=1)
    if fmt == "markdown":
        return _markdown(reports)
    raise ValueError(f"unknown format {fmt!r}")


_TABLE_TITLES = {
    1: "Elementary gradings of so(n) and sp(n)",
    2: "Fine gradings of so(2m) and sp(2m) from M_m (x) M_2",
    3: "Class I gradings of sl(n)",
    4: "Class II gradings of sl(n)",
}


def _mark(b: bool) -> str:
    return "yes" if b else "NO"


def _markdown(reports: Sequence[CaseReport]) -> str:
    lines = []
    for t in (1, 2, 3, 4):
        lines.append(f"## Table {t}: {_TABLE_TITLES[t]}")
        lines.append("")
        lines.append("| g | g_e | involution | params | dims e/a/b/c | support | symmetric | match | checks |")
        lines.append("|---|---|---|---|---|---|---|---|---|")
        for r in reports:
            if r.table != t:
                continue
            dims = "/".join(str(r.dims.get(x, 0)) for x in "eabc")
            supp = "".join(r.support) + ("" if r.support_generates else " (Z2)")
            if r.degenerate:
                supp += " degenerate"
            lines.append(
                f"| {r.algebra} | {r.isotropy} | {r.spec.phi_choice} | {','.join(map(str, r.spec.params))} "
                f"| {dims} | {supp} | {_mark(r.symmetric)} | {_mark(r.match)} | {_mark(r.passed)} |"
            )
        lines.append("")
    total = len(reports)
    ok = sum(r.passed for r in reports)
    lines.append(f"{ok}/{total} cases passed.")
    lines.append("")
    lines.append(f"Note: {CAVEAT}.")
    return "\n".join(lines) + "\n"
