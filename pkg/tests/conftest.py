import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from gtkit.field import QQ
from gtkit.poly import Ring

settings.register_profile("gtkit", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("gtkit")

R3 = Ring(["x", "y", "z"], QQ)


@st.composite
def polys(draw, ring=R3, max_terms=4, max_deg=2, homogeneous_deg=None, coeff=5, min_terms=0):
    nv = ring.nvars
    terms = {}
    for _ in range(draw(st.integers(min_terms, max_terms))):
        if homogeneous_deg is None:
            e = tuple(draw(st.integers(0, max_deg)) for _ in range(nv))
        else:
            cuts = sorted(draw(st.integers(0, homogeneous_deg)) for _ in range(nv - 1))
            bounds = [0] + cuts + [homogeneous_deg]
            e = tuple(bounds[k + 1] - bounds[k] for k in range(nv))
        c = Fraction(draw(st.integers(-coeff, coeff)), draw(st.integers(1, 3)))
        terms[e] = terms.get(e, 0) + c
    return ring.from_dict(terms)


def random_poly(rng: random.Random, ring, max_terms=4, max_deg=2, coeff=5):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = tuple(rng.randint(0, max_deg) for _ in range(ring.nvars))
        terms[e] = terms.get(e, 0) + rng.randint(-coeff, coeff)
    return ring.from_dict(terms)


@pytest.fixture
def R():
    return R3


ACCEPTANCE_LINES = []


def record_criterion(number: int, ok: bool, detail: str):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
