import math

import pytest

from gtkit import lab
from gtkit.field import GF, QQ
from gtkit.poly import Ring


@pytest.fixture(scope="module")
def gl4_report():
    return lab.verify_gl4_decomposition()


@pytest.mark.parametrize("n,dim", [(2, 1), (3, 3)])
def test_ovsienko_small(n, dim):
    rep = lab.verify_ovsienko(n)
    assert rep.verdict == lab.VERIFIED_EXACT
    assert rep.artifacts["ci_certificate"]["concluded_dim"] == dim
    assert rep.artifacts["krull_dimension"]["krull_dim"] == dim
    assert rep.artifacts["components"]["equal"]


def test_ovsienko_range():
    with pytest.raises(ValueError):
        lab.verify_ovsienko(5)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_weak(n):
    rep = lab.verify_weak(n)
    assert rep.verdict == lab.VERIFIED_EXACT
    assert rep.artifacts["ci_certificate"]["dim"] == n * (n - 1) // 2


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_weak_recursion_replay(n):
    res = lab.replay_weak_recursion(n)
    assert res["ok"] and res["monomial_split"]
    assert len(res["branches"]) == n


def test_components_gl2():
    rep = lab.enumerate_regular_components(2)
    assert rep.verdict == lab.VERIFIED_EXACT
    assert sorted(sorted(c["S"]) for c in rep.artifacts["candidates"]) == [
        ["x11", "x12", "x22"], ["x11", "x21", "x22"]]


@pytest.mark.parametrize("n", [3, 4])
def test_components_cyclic_candidates_are_reported(n):
    rep = lab.enumerate_regular_components(n)
    # only orientations of the free entries without directed cycles give nilpotent subspaces
    assert rep.artifacts["contained_count"] == math.factorial(n)
    assert rep.artifacts["contained_all_dim_and_iso"]
    assert rep.verdict == lab.FAILED
    bad = rep.counterexample["failures"][-1]
    assert bad["count"] == 2 ** (n * (n - 1) // 2) - math.factorial(n)


@pytest.mark.parametrize("i", [1, 2, 3])
def test_zelobenko_exact(i):
    rep = lab.verify_zelobenko(i)
    assert rep.verdict == lab.VERIFIED_EXACT and rep.artifacts["ideal_equality_char0"]


def test_zelobenko_modular():
    assert lab.verify_zelobenko(4).verdict == lab.VERIFIED_MODULAR


@pytest.mark.parametrize("i", range(1, 6))
def test_newton_identities(i):
    assert lab.newton_identities(i)["ok"]


def test_partial_fixed_beta():
    rep = lab.verify_partial(2, 1, betas=[[1, 5]])
    t = rep.artifacts["trials"][0]
    assert rep.verdict == lab.VERIFIED_EXACT
    assert t["concluded_dim"] == t["krull_dim"] == 2


def test_partial_zero_beta_is_nilpotent_fiber():
    rep = lab.verify_partial(3, 3, betas=[[0] * 6])
    assert rep.artifacts["trials"][0]["concluded_dim"] == 3


def test_union_cover_helpers():
    R = Ring(["x", "y"])
    x, y = R.gens()
    assert lab.radical_union_equal([x * y], {"a": [x], "b": [y]})["equal"]
    res = lab.union_covers([x * y], [[x]])
    assert not res["covers"] and res["witness_factors"] == ["x"]


def test_gl4_isomorphisms(gl4_report):
    a = gl4_report.artifacts
    for key in ("hom_transpose_D", "hom_swap12_transpose_C", "hom_swap23_V4"):
        assert a[key]["onto"]
    assert all(a["pieces_inside"].values()) and a["cover"]["covers"]
    assert all(v["dim"] == 6 for v in a["piece_dims"].values())


def test_gl4_b_chain(gl4_report):
    levels = gl4_report.counterexample["failures"][0]["detail"]
    by = {lv["level"]: lv for lv in levels}
    assert [by[k]["ok"] for k in (2, 3, 4)] == [True, True, True]
    assert by[4]["coordinate_subspace_dims"] == {"bar": 1, "hat": 1}
    # the displayed first split misses the determinant factor; the corrected one holds
    assert not by[1]["split"]["equal"]
    assert by[1]["outside_points"][0]["piece"] == "hat"
    assert by[1]["alternative_split"]["equal"]
    assert gl4_report.verdict == lab.FAILED
