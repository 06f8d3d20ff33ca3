from fractions import Fraction

import pytest
from hypothesis import strategies as st

from padic_cf import PrimeContext

PRIMES = [2, 3, 5, 7, 11, 101]


@pytest.fixture(params=PRIMES)
def ctx(request):
    return PrimeContext(request.param)


def rationals(height=10**6):
    return st.builds(
        Fraction,
        st.integers(-height, height),
        st.integers(1, height),
    )


primes = st.sampled_from(PRIMES).map(PrimeContext)


def brute_valuation(p, x):
    """Repeated division; independent of the library's helpers."""
    x = Fraction(x)
    if x == 0:
        return None
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.REPORT, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
