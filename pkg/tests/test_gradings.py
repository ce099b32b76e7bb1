import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from _splits import carriers, numeric_is_grading, random_split
from zsym.gradings import (
    Grading,
    GradingError,
    check_grading,
    class1_sl,
    class2_sl,
    dual_eigenspaces,
    dumps,
    elementary,
    fine_bcd,
    fine_sl,
    grading_from_json,
    grading_to_json,
    loads,
    pauli,
    restrict_K,
    tensor,
    trivial,
)
from zsym.groups import Z2, Z2xZ2, Z4, AbGroup, GroupElt
from zsym.lie import PAULI, InvolutionSpec, MatLie, build_H, build_sl, derived, n7_3, phi_catalogue
from zsym.linalg import (
    Mat,
    Subspace,
    intersect,
    is_direct_sum,
    kron,
    matrix_unit,
    span,
    sum_spaces,
)


def dims(g):
    return tuple(g.dims()[x] for x in "eabc")


def test_pauli():
    g = pauli()
    rep = check_grading(g)
    assert rep.ok and rep.support == ("e", "a", "b", "c") and rep.generates_group
    assert g["a"] == span([Mat.from_rows([[-1, 0], [0, 1]])])
    assert span([PAULI["c"]]).contains((PAULI["a"] @ PAULI["b"]).flat())


@pytest.mark.parametrize("t, expected", [("ea", (2, 2, 0, 0)), ("eeaa", (8, 8, 0, 0)), ("eabc", (4, 4, 4, 4))])
def test_elementary_dims(t, expected):
    g = elementary(len(t), t)
    assert dims(g) == expected
    assert check_grading(g).ok


def test_elementary_components():
    g = elementary(2, "ea")
    assert g["e"] == span([matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)])
    assert g["a"] == span([matrix_unit(2, 0, 1), matrix_unit(2, 1, 0)])


@given(st.lists(st.sampled_from("eabc"), min_size=1, max_size=5))
def test_elementary_counts(t):
    g = elementary(len(t), t)
    n = len(t)
    G = Z2xZ2
    for x in G.elements:
        want = sum(1 for i in range(n) for j in range(n)
                   if G.mul(G.inverse(G.parse(t[i])), G.parse(t[j])) == x)
        assert g[x].dim == want
    assert sum(g.dims().values()) == n * n
    assert check_grading(g).ok


def test_elementary_over_z4():
    g = elementary(3, [GroupElt((0,)), GroupElt((1,)), GroupElt((3,))], Z4)
    assert check_grading(g).ok
    assert sum(g.dims().values()) == 9
    assert all(dual_eigenspaces(g)[x] == g[x] for x in Z4.elements)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_tensor_with_pauli(m):
    g = tensor(trivial(m), pauli())
    assert dims(g) == (m * m,) * 4
    assert check_grading(g).ok
    if m == 1:
        assert g == pauli()


def test_tensor_support_overlap():
    with pytest.raises(GradingError):
        tensor(pauli(), pauli())


def test_tensor_layout():
    # a (x) b is stored as kron(b, a)
    g = tensor(elementary(2, "ea"), trivial(2))
    assert g["a"].contains(kron(Mat.identity(2), matrix_unit(2, 0, 1)).flat())


def test_restrict_K_examples():
    so4 = restrict_K(elementary(4, "eeaa"), phi_catalogue("Phi1", (2, 2)))
    assert dims(so4) == (2, 4, 0, 0)
    assert dims(fine_bcd("Psi1", 2)) == (1, 1, 1, 3)
    g4 = fine_bcd("Psi4", 2)
    assert dims(g4) == (3, 1, 1, 1)
    # g_e is a copy of sp(2): three-dimensional and perfect
    assert derived(MatLie(4, g4["e"])) == g4["e"]


def test_restrict_K_rejects_ungraded_involution():
    with pytest.raises(GradingError):
        restrict_K(elementary(2, "ea"), InvolutionSpec.of(Mat.from_rows([[1, 1], [1, 2]])))


@pytest.mark.parametrize("t, name, params", [
    ("eeaa", "Phi1", (2, 2)), ("eab", "Phi2", (1, 1, 1)), ("eabc", "Phi3", (1, 1, 1, 1)),
    ("eeaa", "PhiBar1", (2, 2)), ("ea", "Phi1'", (1,)), ("eaeb", "Phi3'", (1, 1)),
])
def test_restrict_K_dims_split(t, name, params):
    inv = phi_catalogue(name, params)
    base = elementary(len(t), [x for x in t] if "'" not in name else _paired(name, params))
    g = restrict_K(base, inv)
    assert check_grading(g).ok
    for x in Z2xZ2.elements:
        assert g[x].dim + intersect(build_H(inv.n, inv), base[x]).dim == base[x].dim


def _paired(name, params):
    # primed involutions pair e/a blocks (and b/c blocks)
    if name.endswith("1'"):
        (k,) = params
        return ["e"] * k + ["a"] * k
    k1, k3 = params
    return ["e"] * k1 + ["a"] * k1 + ["b"] * k3 + ["c"] * k3


def test_class1_examples():
    g = class1_sl(elementary(2, "ea"))
    assert dims(g) == (1, 2, 0, 0)
    g = class1_sl(elementary(3, "eab"))
    assert g["e"].dim == 2
    m = 2
    f = fine_sl(m)
    expected = span([kron(Mat.identity(2), x) for x in build_sl(m).basis()])
    assert f["e"] == expected


def test_class2_fine_sl2():
    g = class2_sl(2, "ea", phi_catalogue("Phi1", (1, 1)))
    assert dims(g) == (0, 1, 1, 1)
    assert check_grading(g).ok


@pytest.mark.parametrize("n, t, name, params", [
    (4, "eeaa", "Phi1", (2, 2)), (5, "eeeaa", "Phi1", (3, 2)), (4, "eeaa", "PhiBar1", (2, 2)),
    (4, "eeaa", "Phi1'", (2,)), (6, "eeeaaa", "PhiBar1'", (3,)),
])
def test_class2_components(n, t, name, params):
    g = class2_sl(n, t, phi_catalogue(name, params))
    base = elementary(n, t)
    sl = build_sl(n)
    assert check_grading(g).ok
    assert sum_spaces(g["e"], g["b"]) == intersect(base["e"], sl.space)
    assert sum_spaces(g["a"], g["c"]) == base["a"]


def test_class2_rejects_bad_tuple():
    with pytest.raises(GradingError):
        class2_sl(2, "eb", phi_catalogue("Phi1", (1, 1)))


def test_degenerate_is_z2_grading():
    g = class2_sl(2, "ee", phi_catalogue("Phi1", (2,)))
    rep = check_grading(g)
    assert rep.ok and not rep.generates_group
    assert set(rep.support) == {"e", "b"}


def test_random_split_of_sl2_fails():
    rng = random.Random(7)
    sl2 = build_sl(2)
    while True:
        g = random_split(rng, sl2)
        if not numeric_is_grading(g):
            break
    assert not check_grading(g).ok


@given(st.integers(0, 2**32 - 1))
def test_checker_agrees_with_numeric_oracle(seed):
    rng = random.Random(seed)
    g = random_split(rng, carriers()[seed % 4])
    assert check_grading(g).ok == numeric_is_grading(g)


@pytest.mark.parametrize("g", [pauli(), fine_bcd("Psi2", 2), class2_sl(4, "eeaa", phi_catalogue("Phi1'", (2,)))],
                         ids=["pauli", "psi2", "class2"])
def test_numeric_oracle_accepts_valid(g):
    assert numeric_is_grading(g)


def test_direct_sum_failure_reported():
    sl2 = build_sl(2)
    h = span([matrix_unit(2, 0, 1)], 4)
    g = Grading(Z2xZ2, sl2, {Z2xZ2.identity: h, Z2xZ2.parse("a"): h})
    rep = check_grading(g)
    assert not rep.direct_sum and not rep.ok and rep.failures


GRADINGS = {
    "pauli": pauli,
    "elementary": lambda: elementary(3, "eab"),
    "so4_psi1": lambda: fine_bcd("Psi1", 2),
    "sp4_psibar3": lambda: fine_bcd("PsiBar3", 2),
    "sl4_fine": lambda: fine_sl(2),
    "class2": lambda: class2_sl(4, "eeaa", phi_catalogue("PhiBar1", (2, 2))),
    "trivial": lambda: trivial(2),
}


@pytest.mark.parametrize("name", sorted(GRADINGS))
def test_dual_round_trip(name):
    g = GRADINGS[name]()
    for realized in (False, True):
        dual = dual_eigenspaces(g, realized=realized)
        assert all(dual[x] == g[x] for x in g.group.elements)


def test_trivial_dual():
    g = trivial(2)
    dual = dual_eigenspaces(g)
    assert dual[Z2xZ2.identity] == Subspace.full(4)


def test_realized_action_required():
    g = loads(dumps(pauli()))
    with pytest.raises(GradingError):
        dual_eigenspaces(g, realized=True)


@pytest.mark.parametrize("name", sorted(GRADINGS))
def test_json_round_trip(name):
    g = GRADINGS[name]()
    text = dumps(g)
    back = loads(text)
    assert back == g
    assert dumps(back) == text
    assert grading_to_json(back) == json.loads(text)


def test_json_structure_constants():
    G = Z2
    h = span([[0, 1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0, 0], [0, 0, 0, 0, 0, 1, 0]])
    rest = span([[1, 0, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 0, 1]])
    g = Grading(G, n7_3(), {G.identity: h, G.generators()[0]: rest})
    assert check_grading(g).ok
    back = grading_from_json(grading_to_json(g))
    assert back == g and dumps(back) == dumps(g)


def test_json_rejects_bad_version():
    d = grading_to_json(pauli())
    d["version"] = 99
    with pytest.raises(GradingError):
        grading_from_json(d)


def test_components_filled_with_zero():
    g = Grading(AbGroup((2, 2)), build_sl(2), {Z2xZ2.identity: build_sl(2).space})
    assert g["c"].is_zero()
    assert is_direct_sum([g[x] for x in "eabc"], build_sl(2).space)
