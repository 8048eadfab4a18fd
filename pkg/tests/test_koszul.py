import pytest
from hypothesis import given, settings, strategies as st

from conftest import R3, polys
from gtkit.errors import NotHomogeneousError
from gtkit.koszul import PieceTooLarge, build_complex, ci_oracle, homology_dims
from gtkit.poly import Ring
from gtkit.regularity import is_regular_sequence
from gtkit.systems import gamma_bar, sigma

R = Ring(["x", "y", "z"])
x, y, z = R.gens()


def test_differential_of_two_elements():
    K = build_complex([x, y])
    d2 = K.differentials[2]
    assert d2 == [[-y], [x]]


def test_dd_zero():
    assert build_complex(sigma(3).generators).check_dd()
    assert build_complex([x, y, z]).check_dd()


def test_non_regular_pair_has_h1_from_degree_3():
    K = build_complex([x * y, x * z])
    h = [r.homology_dim for r in homology_dims(K, 1, 5)]
    assert h[:3] == [0, 0, 0] and h[3] > 0


def test_repeated_element():
    v = ci_oracle([x, x])
    assert v.homology_found and (v.p, v.d) == (1, 1)
    assert v.verdict == "homology_found_at(p=1,d=1)"


def test_gl2_no_homology():
    assert ci_oracle(gamma_bar(2).generators).verdict == "no_homology_up_to_8"


def test_h0_of_regular_sequence_counts_quotient_monomials():
    # k[x,y,z]/(x, y^2) has basis y^a z^b with a <= 1
    K = build_complex([x, y ** 2])
    h0 = [r.homology_dim for r in homology_dims(K, 0, 5)]
    assert h0 == [1, 2, 2, 2, 2, 2]
    assert not ci_oracle([x, y ** 2]).homology_found


def test_rejects_inhomogeneous_and_large_pieces():
    with pytest.raises(NotHomogeneousError):
        build_complex([x + 1])
    with pytest.raises(PieceTooLarge):
        homology_dims(build_complex([x, y]), 1, 8, max_piece=3)


@settings(max_examples=60)
@given(st.lists(st.integers(1, 2).flatmap(lambda d: polys(homogeneous_deg=d, max_terms=3, min_terms=1)),
                min_size=1, max_size=3))
def test_homology_never_contradicts_regularity(gs):
    if any(not g for g in gs):
        return
    v = ci_oracle(gs, max_degree=5)
    cert = is_regular_sequence(gs, method="quotient")
    assert not (v.homology_found and cert.regular)
    if not cert.regular:
        # a failed step leaves H_1 nonzero somewhere; degree 5 suffices for these small inputs
        assert v.homology_found or not cert.steps[-1].non_unit
