"""Random component splits and a floating-point validity oracle for them."""
import random

import numpy as np

from zsym.gradings import Grading
from zsym.groups import Z2xZ2
from zsym.lie import MatAlgebra, build_K, build_sl, psi_catalogue
from zsym.linalg import Subspace, lincomb


def carriers():
    return [build_sl(2), build_sl(3), build_K(4, psi_catalogue("Psi1", 2)), MatAlgebra(2)]


def random_split(rng: random.Random, carrier) -> Grading:
    """Carrier basis mixed by a random invertible Gaussian-integer matrix, then labelled at random."""
    basis = carrier.space.vecs()
    d = len(basis)
    while True:
        mix = [[(rng.randint(-3, 3), rng.randint(-3, 3), 1) for _ in range(d)] for _ in range(d)]
        vecs = [lincomb(row, basis) for row in mix]
        if Subspace.from_dicts(carrier.ambient_dim, [v.data for v in vecs]).dim == d:
            break
    labels = [rng.choice(Z2xZ2.elements) for _ in range(d)]
    # keep at least two labels in use; an all-e split is the trivial (valid) grading
    if len(set(labels)) == 1:
        labels[0] = Z2xZ2.parse("a") if labels[0] == Z2xZ2.identity else Z2xZ2.identity
    comps = {x: Subspace.from_dicts(carrier.ambient_dim, [v.data for v, l in zip(vecs, labels) if l == x])
             for x in Z2xZ2.elements}
    return Grading(Z2xZ2, carrier, comps, name="random split")


def _np(v, n):
    return np.array([x.to_complex() for x in v.tolist()]).reshape(n, n)


def numeric_is_grading(g: Grading, tol: float = 1e-8) -> bool:
    """Compatibility decided in floating point, independently of the exact checker."""
    n = g.carrier.n
    lie = getattr(g.carrier, "is_lie", True)
    G = g.group
    mats = {x: [_np(v, n) for v in g.components[x].vecs()] for x in G.elements}
    for p in G.elements:
        for q in G.elements:
            target = mats[G.mul(p, q)]
            basis = np.array([t.ravel() for t in target]).T if target else np.zeros((n * n, 0))
            for u in mats[p]:
                for v in mats[q]:
                    w = (u @ v - v @ u) if lie else u @ v
                    w = w.ravel()
                    if np.linalg.norm(w) < tol:
                        continue
                    if basis.shape[1] == 0:
                        return False
                    coef, *_ = np.linalg.lstsq(basis, w, rcond=None)
                    if np.linalg.norm(basis @ coef - w) > tol * max(1.0, np.linalg.norm(w)):
                        return False
    return True
