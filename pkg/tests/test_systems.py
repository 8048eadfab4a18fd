import json

import pytest
import sympy

from gtkit.field import GF, QQ
from gtkit.kostant_wallach import ConcreteMatrix
from gtkit.poly import matrix_ring
from gtkit.regularity import project_out_variables
from gtkit.systems import (MAX_N, charpoly_coefficients, chi, d, e, gamma_bar, index_set, named_hom,
                           partial_count, partial_system, punctured_index_set, recursion_branches, sigma,
                           system_from_json)


def test_bookkeeping_functions():
    assert [d(t) for t in range(5)] == [0, 1, 3, 6, 10]
    assert [e(t) for t in range(2, 6)] == [2, 5, 9, 14]
    assert partial_count(4, 2) == 7


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_gamma_bar_shape(n):
    G = gamma_bar(n)
    assert len(G) == d(n)
    for g, lab in zip(G.generators, G.labels):
        j = int(lab.split(",")[1].rstrip("]"))
        assert g.is_homogeneous() == (True, j)


def test_gamma_bar_gl2_values():
    G = gamma_bar(2)
    assert [g.to_text() for g in G.generators] == ["x11", "x11 + x22", "x11^2 + 2*x12*x21 + x22^2"]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_chi_against_sympy_charpoly(n):
    C = chi(n)
    t = sympy.Symbol("t")
    syms = sympy.symbols(matrix_ring(n).variables)
    M = sympy.Matrix(n, n, syms)
    for i in range(1, n + 1):
        cp = sympy.Poly(M[:i, :i].charpoly(t).as_expr(), t)
        for j in range(1, i + 1):
            ours = sympy.sympify(C[f"chi[{i},{j}]"].to_text().replace("^", "**"), locals=dict(zip(map(str, syms), syms)))
            assert sympy.expand(ours - cp.coeff_monomial(t ** (i - j))) == 0


def test_charpoly_of_concrete_matrix():
    assert charpoly_coefficients([[1, 2], [3, 4]]) == [-5, -2]


def test_sigma_n3():
    S = sigma(3)
    assert S.generators == [S.ring.parse("x31*x13 + x32*x23"), S.ring.parse("x32*x21*x13")]
    assert S.ring.nvars == e(3)


def test_sigma_range():
    with pytest.raises(ValueError):
        sigma(MAX_N["sigma"] + 1)


def test_index_sets():
    assert index_set(3) == ["x21", "x31", "x32", "x13", "x23"]
    assert punctured_index_set(3, 2) == ["x31", "x13"]


def test_partial_system():
    P = partial_system(2, 1, [1, 5])
    assert [g.to_text() for g in P.generators] == ["x11 + x22 - 1", "x11^2 + 2*x12*x21 + x22^2 - 5"]
    with pytest.raises(ValueError):
        partial_system(2, 1, [1])


def test_json_roundtrip():
    for S in (gamma_bar(3), sigma(4), partial_system(3, 2, [1, 2, 3, 4, 5], field=GF())):
        ring, gens, order = system_from_json(json.loads(json.dumps(S.to_json())))
        assert ring == S.ring
        assert gens == S.generators


def test_transpose_and_conjugation_homs():
    h = named_hom("transpose", 3)
    R = h.source
    assert h(R.gen("x12")) == R.gen("x21")
    q = named_hom("conj_perm", 4, perm=[1, 3, 2, 4])
    assert q(q.source.gen("x12")) == q.source.gen("x13")
    G = gamma_bar(3)
    assert all(h(g) == g for g in G.generators)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_recursion_projection_equals_hom_image(n):
    S, P = sigma(n), sigma(n - 1)
    for name, t, X in recursion_branches(n):
        proj = project_out_variables(S.generators[:-1], X)
        h = named_hom(name, n, t=t)
        assert len(X) == n
        assert [h(p).change_ring(proj[0].ring) for p in P.generators] == proj
