import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from krullcheck.parse import parse_poly, parse_ring
from krullcheck.poly import PolyRing, Polynomial

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large]
)
settings.load_profile("default")

# property suites that the acceptance criteria count need at least this many instances
MIN_EXAMPLES = 200


def to_sympy(p: Polynomial):
    import sympy

    return sympy.sympify(str(p).replace("^", "**"))


def from_sympy(expr, ring: PolyRing) -> Polynomial:
    import sympy

    return parse_poly(str(sympy.expand(expr)).replace("**", "^"), ring)


def polys(ring: PolyRing, max_terms=3, max_exp=3, coeff=5, nonzero=True):
    """Strategy for small random polynomials of ``ring``."""
    exps = st.tuples(*[st.integers(0, max_exp)] * ring.nvars)
    coeffs = st.integers(-coeff, coeff).filter(bool)
    terms = st.dictionaries(exps, coeffs, min_size=1 if nonzero else 0, max_size=max_terms)
    return terms.map(lambda d: Polynomial(ring, d))


def monomial_exps(nvars, max_exp=4, min_gens=1, max_gens=4):
    vec = st.tuples(*[st.integers(0, max_exp)] * nvars).filter(any)
    return st.lists(vec, min_size=min_gens, max_size=max_gens)


def random_poly(rng: random.Random, ring: PolyRing, terms=3, max_exp=3, coeff=5) -> Polynomial:
    d = {}
    for _ in range(terms):
        e = tuple(rng.randint(0, max_exp) for _ in range(ring.nvars))
        d[e] = rng.randint(-coeff, coeff) or 1
    return Polynomial(ring, d)


@pytest.fixture
def R3():
    return parse_ring("QQ[x,y,z]")


@pytest.fixture
def R4():
    return parse_ring("QQ[x,y,z,t]")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
