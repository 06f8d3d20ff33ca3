from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padic_cf import (
    INFINITY,
    DigitStream,
    DivisionByZero,
    NotIntegral,
    NotPrime,
    PAdicApprox,
    PrecisionExhausted,
    PrecisionTooLow,
    PrimeContext,
    abs_p,
    approx_add,
    approx_from_rational,
    approx_inv,
    approx_mul,
    approx_truncation_value,
    digit_stream_to_rational,
    epsilon,
    floor_p,
    is_prime,
    rational_to_digit_stream,
    valuation,
)
from padic_cf.padic_core import canonical_stream, digit_stream_geometric_sum, rational_reconstruction

from .conftest import brute_valuation, primes, rationals

P2, P3, P5, P7 = (PrimeContext(p) for p in (2, 3, 5, 7))


def test_prime_context_rejects_composites():
    for n in (0, 1, 4, 9, 561, 2**61 + 1):
        with pytest.raises(NotPrime):
            PrimeContext(n)
    with pytest.raises(NotPrime):
        PrimeContext(2**89 - 1)  # prime, but outside the 64-bit range
    assert PrimeContext(2**61 - 1).p == 2**61 - 1


def test_is_prime_against_sieve():
    n = 5000
    sieve = [True] * n
    sieve[0] = sieve[1] = False
    for i in range(2, n):
        if sieve[i]:
            for j in range(i * i, n, i):
                sieve[j] = False
    assert [is_prime(i) for i in range(n)] == sieve


@pytest.mark.parametrize(
    "p, x, expected",
    [(2, F(4, 3), 2), (3, F(0), INFINITY), (5, F(7, 25), -2)],
)
def test_valuation_examples(p, x, expected):
    assert valuation(PrimeContext(p), x) == expected


@pytest.mark.parametrize(
    "p, x, expected",
    [(2, F(12), F(1, 4)), (7, F(0), F(0)), (3, F(5, 9), F(9))],
)
def test_abs_examples(p, x, expected):
    assert abs_p(PrimeContext(p), x) == expected


@pytest.mark.parametrize(
    "p, x, expected",
    [(2, F(12), F(3)), (3, F(0), F(1)), (2, F(4, 3), F(1, 3))],
)
def test_epsilon_examples(p, x, expected):
    assert epsilon(PrimeContext(p), x) == expected


@pytest.mark.parametrize("p, x, expected", [(2, F(3), 1), (3, F(7, 4), 1), (5, F(-1), 4)])
def test_floor_examples(p, x, expected):
    assert floor_p(PrimeContext(p), x) == expected


def test_floor_rejects_non_integral():
    with pytest.raises(NotIntegral):
        floor_p(P2, F(1, 2))


@given(ctx=primes, x=rationals())
def test_valuation_matches_repeated_division(ctx, x):
    v = valuation(ctx, x)
    assert (v == INFINITY) if x == 0 else v == brute_valuation(ctx.p, x)


@given(ctx=primes, x=rationals())
def test_epsilon_is_unit_part(ctx, x):
    if x == 0:
        return
    u = epsilon(ctx, x)
    assert valuation(ctx, u) == 0
    assert u * F(ctx.p) ** valuation(ctx, x) == x
    assert abs_p(ctx, x) * x == u


@given(ctx=primes, x=rationals())
def test_floor_is_unique_close_digit(ctx, x):
    if x.denominator % ctx.p == 0:
        return
    close = [a for a in range(ctx.p) if x - a == 0 or brute_valuation(ctx.p, x - a) >= 1]
    assert close == [floor_p(ctx, x)]


# ---------------------------------------------------------------- digit streams


def test_stream_examples():
    assert rational_to_digit_stream(P2, -1) == DigitStream(0, (), (1,))
    assert rational_to_digit_stream(P2, F(1, 3)) == DigitStream(0, (1,), (1, 0))
    assert rational_to_digit_stream(P3, 0).is_zero
    assert digit_stream_to_rational(P2, DigitStream(0, (), (1,))) == -1
    assert digit_stream_to_rational(P2, DigitStream(1, (1, 1), (0,))) == 6
    assert digit_stream_to_rational(P2, DigitStream.zero()) == 0


def _direct_digits(p, x, count):
    """First unit digits of x, from x mod p**count computed by modular inverse."""
    v = brute_valuation(p, x)
    u = x / F(p) ** v
    mod = p**count
    r = u.numerator * pow(u.denominator, -1, mod) % mod
    out = []
    for _ in range(count):
        r, d = divmod(r, p)
        out.append(d)
    return v, out


@settings(max_examples=60)
@given(ctx=primes, x=rationals())
def test_stream_digits_match_modular_truncation(ctx, x):
    s = rational_to_digit_stream(ctx, x)
    if x == 0:
        assert s.is_zero
        return
    v, digits = _direct_digits(ctx.p, x, 40)
    assert s.valuation == v
    assert [s.digit(i) for i in range(40)] == digits


@settings(max_examples=60)
@given(ctx=primes, x=rationals())
def test_stream_round_trip(ctx, x):
    s = rational_to_digit_stream(ctx, x)
    assert digit_stream_to_rational(ctx, s) == x
    # canonical: nonzero lead, and renormalizing changes nothing
    if not s.is_zero:
        assert s.digit(0) != 0
        assert canonical_stream(s.valuation, s.preperiod, s.period) == s


@pytest.mark.parametrize("x", [F(1, 1019), F(-5, 1031), F(-11, 1061), F(123456, 65537)])
def test_reconstruction_agrees_with_geometric_sum_on_long_periods(x):
    ctx = P3
    s = rational_to_digit_stream(ctx, x)
    assert len(s.period) > 256
    assert digit_stream_to_rational(ctx, s) == digit_stream_geometric_sum(ctx, s) == x


def test_canonical_stream_normalizes():
    # leading zeros, non-primitive period, non-minimal preperiod
    s = canonical_stream(0, (0, 1, 1, 0), (1, 0, 1, 0))
    assert s == DigitStream(1, (1,), (1, 0))
    assert s == rational_to_digit_stream(P2, F(2, 3))
    assert canonical_stream(3, (0, 0), (0, 0)).is_zero


def test_rational_reconstruction():
    mod = 2**40
    x = F(-17, 23)
    residue = x.numerator * pow(x.denominator, -1, mod) % mod
    assert rational_reconstruction(residue, mod) == x


# ---------------------------------------------------------------- approximations


def test_approx_examples():
    assert approx_from_rational(P2, F(1, 3), 4) == PAdicApprox(0, (1, 1, 0, 1))
    assert approx_from_rational(P2, 0, 10).exact_zero
    assert approx_from_rational(P3, -1, 3) == PAdicApprox(0, (2, 2, 2))
    assert approx_truncation_value(P2, PAdicApprox(0, (1, 1, 0, 1))) == 11
    assert approx_truncation_value(P2, PAdicApprox.exact()) == 0
    assert approx_truncation_value(P3, PAdicApprox(-1, (2, 1))) == F(5, 3)


def test_approx_from_rational_precision_too_low():
    with pytest.raises(PrecisionTooLow):
        approx_from_rational(P2, 8, 3)


def test_approx_arithmetic_examples():
    three = approx_from_rational(P2, 3, 4)
    one = approx_from_rational(P2, 1, 4)
    s = approx_add(P2, three, one)
    assert s == approx_from_rational(P2, 4, 4) and s.precision == 4

    two = PAdicApprox(1, (1,))
    prod = approx_mul(P2, two, two)
    assert (prod.valuation, prod.digits, prod.precision) == (2, (1,), 3)

    assert approx_inv(P2, three) == PAdicApprox(0, (1, 1, 0, 1))


def test_approx_edge_cases():
    a = approx_from_rational(P5, 7, 3)
    assert approx_add(P5, a, PAdicApprox.exact()) == a
    assert approx_mul(P5, a, PAdicApprox.exact()).exact_zero
    cancel = approx_add(P5, a, approx_from_rational(P5, -7, 3))
    assert cancel == PAdicApprox.zero_mod(3) and not cancel.exact_zero
    with pytest.raises(DivisionByZero):
        approx_inv(P5, PAdicApprox.exact())
    with pytest.raises(PrecisionExhausted):
        approx_inv(P5, cancel)


@given(ctx=primes, x=rationals(), N=st.integers(-5, 40))
def test_truncation_consistency(ctx, x, N):
    if x != 0 and N <= valuation(ctx, x):
        return
    a = approx_from_rational(ctx, x, N)
    t = approx_truncation_value(ctx, a)
    assert x == t or valuation(ctx, x - t) >= N


def _contains(ctx, approx, value):
    t = approx_truncation_value(ctx, approx)
    if approx.exact_zero:
        return value == 0
    return value == t or valuation(ctx, value - t) >= approx.precision


@given(ctx=primes, x=rationals(), y=rationals(), N=st.integers(1, 30), M=st.integers(1, 30))
def test_approx_arithmetic_is_sound(ctx, x, y, N, M):
    vx = valuation(ctx, x) if x else 0
    vy = valuation(ctx, y) if y else 0
    a = approx_from_rational(ctx, x, vx + N)
    b = approx_from_rational(ctx, y, vy + M)
    s = approx_add(ctx, a, b)
    assert _contains(ctx, s, x + y)
    assert s.precision == min(a.precision, b.precision) or s.exact_zero
    m = approx_mul(ctx, a, b)
    assert _contains(ctx, m, x * y)
    if x != 0:
        inv = approx_inv(ctx, a)
        assert inv.digit_count == a.digit_count
        assert _contains(ctx, inv, 1 / x)
