import itertools

from hypothesis import given, strategies as st

from gtkit.monomial import hilbert_numerator, max_independent_set, minimalize, series_times_one_minus_tpow

exps = st.lists(st.tuples(*[st.integers(0, 2)] * 3), min_size=0, max_size=4)


def standard_monomial_counts(gens, nvars, top):
    """Brute-force dims of (R/M)_d for d <= top."""
    out = []
    for d in range(top + 1):
        cnt = 0
        for e in itertools.product(range(d + 1), repeat=nvars):
            if sum(e) == d and not any(all(a <= b for a, b in zip(g, e)) for g in gens):
                cnt += 1
        out.append(cnt)
    return out


def series_from_numerator(num, nvars, top):
    """Coefficients of num(t) / (1-t)^n up to t^top."""
    from math import comb
    return [sum(c * comb(d - k + nvars - 1, nvars - 1) for k, c in num.items() if k <= d) for d in range(top + 1)]


@given(exps)
def test_hilbert_numerator_against_counting(gens):
    num = hilbert_numerator(gens)
    assert series_from_numerator(num, 3, 7) == standard_monomial_counts(gens, 3, 7)


def brute_dimension(gens, nvars):
    if any(sum(g) == 0 for g in gens):
        return -1
    best = 0
    for r in range(nvars + 1):
        for S in itertools.combinations(range(nvars), r):
            if all(any(g[k] and k not in S for k in range(nvars)) for g in gens):
                best = max(best, r)
    return best


@given(exps)
def test_independent_set_against_brute_force(gens):
    dim, wit = max_independent_set(gens, 3)
    assert dim == brute_dimension(gens, 3)
    if dim >= 0:
        assert len(wit) == dim


def test_minimalize_and_series_shift():
    assert minimalize([(1, 1), (1, 0), (2, 0)]) == [(1, 0)]
    assert series_times_one_minus_tpow({0: 1}, 2) == {0: 1, 2: -1}
    # (x*y, x*z): 1 - 2t^2 + t^3
    assert hilbert_numerator([(1, 1, 0), (1, 0, 1)]) == {0: 1, 2: -2, 3: 1}
