from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from linklct.polyring import Polynomial, RingDescriptor

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

RING3 = RingDescriptor.simple(["x", "y", "z"])

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def polynomials(ring=RING3, max_deg=3, max_terms=4):
    mono = st.tuples(*[st.integers(0, max_deg)] * ring.nvars)
    return st.dictionaries(mono, coeffs, max_size=max_terms).map(lambda d: Polynomial(ring, d))


def monomial_sets(nvars, max_gens=4, max_deg=3):
    mono = st.tuples(*[st.integers(0, max_deg)] * nvars).filter(any)
    return st.lists(mono, min_size=1, max_size=max_gens)


@pytest.fixture
def ring3():
    return RING3


def F(x):
    return Fraction(x)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
