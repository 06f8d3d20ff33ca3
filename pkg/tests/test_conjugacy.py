from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from padic_cf import (
    CFPair,
    FImage,
    InvariantViolation,
    IrrationalPreimage,
    NotDyadic,
    OrbitNotTerminated,
    PAdicApprox,
    PrimeContext,
    RationalPreimage,
    approx_from_rational,
    cf_eval_exact,
    cf_expand,
    check_one_step_identity,
    classify_preimage,
    epsilon,
    f_approx,
    f_inverse_approx,
    f_inverse_dyadic,
    f_of_expansion,
    f_rational,
    floor_p,
    sigma_step,
    tau,
    valuation,
)

from .conftest import primes, rationals

P2, P3, P5 = PrimeContext(2), PrimeContext(3), PrimeContext(5)


def fv(ctx, x):
    return f_rational(ctx, x).value


def f_by_series(ctx, x, terms):
    """Partial sum of f's defining series, walking the tau-orbit directly.

    Returns the sum and the valuation of the last product, which bounds the
    error of the partial sum from below.
    """
    total, prod, y, last = F(0), F(1), F(x), None
    for _ in range(terms):
        if y == 0:
            return total, None
        prod *= y / epsilon(ctx, y)
        total += floor_p(ctx, 1 / epsilon(ctx, y)) * prod
        last = valuation(ctx, prod)
        inv = 1 / epsilon(ctx, y)
        y = inv - floor_p(ctx, inv)
    return total, last


def random_dyadics(height=10**6, spread=8):
    return st.builds(
        lambda m, k, p: (p, F(m) * F(p.p) ** k),
        st.integers(-height, height),
        st.integers(-spread, spread),
        primes,
    )


def test_f_examples():
    assert fv(P2, F(4, 3)) == 12
    assert str(f_rational(P2, F(4, 3))) == "3*2^2"
    assert fv(P2, -1) == -1
    for p in (2, 3, 5, 7, 11, 101):
        ctx = PrimeContext(p)
        assert fv(ctx, 0) == 0
        assert fv(ctx, -p) == -p
    assert fv(P5, -5) == -5


def test_fimage_canonical_form():
    y = FImage.from_value(P2, F(12))
    assert (y.mantissa, y.exponent) == (3, 2)
    assert FImage.from_value(P3, F(-5, 9)) == FImage(-5, -2, 3)
    assert str(FImage.from_value(P3, 0)) == "0"
    with pytest.raises(NotDyadic):
        FImage.from_value(P2, F(1, 3))


def test_f_orbit_not_terminated_carries_expansion():
    with pytest.raises(OrbitNotTerminated) as info:
        f_rational(P2, F(4, 3), cap=1)
    assert info.value.expansion.residual == 2


@given(ctx=primes, x=rationals(), terms=st.integers(1, 40))
def test_f_matches_defining_series(ctx, x, terms):
    S, last = f_by_series(ctx, x, terms)
    y = fv(ctx, x)
    if last is None:
        assert S == y
    else:
        assert S == y or valuation(ctx, y - S) > last


def test_f_approx_examples():
    a = approx_from_rational(P2, F(4, 3), 6)
    assert f_approx(P2, a) == PAdicApprox(2, (1, 1, 0, 0)) == approx_from_rational(P2, 12, 6)
    assert f_approx(P2, PAdicApprox.exact()).exact_zero
    assert f_approx(P2, approx_from_rational(P2, -2, 5)) == PAdicApprox(1, (1, 1, 1, 1))
    assert f_approx(P2, PAdicApprox.zero_mod(7)) == PAdicApprox.zero_mod(7)


def test_f_inverse_examples():
    assert f_inverse_dyadic(P2, FImage(3, 2, 2)) == F(4, 3)
    assert f_inverse_dyadic(P2, F(-1)) == -1
    assert f_inverse_dyadic(P2, 0) == 0
    # top digit absorbed from the -p tail: -7 = 2 + 2*9 - 27 at p = 3
    assert fv(P3, f_inverse_dyadic(P3, -7)) == -7


def test_f_inverse_approx_examples():
    twelve = approx_from_rational(P2, 12, 6)
    assert f_inverse_approx(P2, twelve) == approx_from_rational(P2, F(4, 3), 6)
    assert f_inverse_approx(P2, PAdicApprox.exact()).exact_zero
    third = approx_from_rational(P2, F(1, 3), 8)
    pre = f_inverse_approx(P2, third)
    assert pre.precision == 8
    assert f_approx(P2, pre) == third


def test_classify_examples():
    assert classify_preimage(P2, 12) == RationalPreimage(F(4, 3))
    assert classify_preimage(P2, F(1, 3)) == IrrationalPreimage()
    assert classify_preimage(P3, -3) == RationalPreimage(F(-3))
    assert classify_preimage(PrimeContext(7), 0) == RationalPreimage(F(0))


def test_one_step_identity_examples():
    assert fv(P2, 2) == 2
    assert check_one_step_identity(P2, 2, 1, 2)
    assert check_one_step_identity(P2, 0, 1, -2)
    assert check_one_step_identity(P3, 0, 2, 0)
    with pytest.raises(InvariantViolation):
        check_one_step_identity(P3, 0, 3, 0)
    with pytest.raises(InvariantViolation):
        check_one_step_identity(P3, 0, 1, F(1, 2))


# ---------------------------------------------------------------- properties


@given(ctx=primes, x=rationals())
def test_conjugacy(ctx, x):
    assert fv(ctx, tau(ctx, x)) == sigma_step(ctx, fv(ctx, x))


@given(ctx=primes, x=rationals(), y=rationals())
def test_isometry(ctx, x, y):
    assume(x != y)
    assert valuation(ctx, fv(ctx, x) - fv(ctx, y)) == valuation(ctx, x - y)


@given(ctx=primes, x=rationals())
def test_range_and_round_trip(ctx, x):
    y = f_rational(ctx, x)
    assert y.value.denominator == ctx.p ** max(0, -y.exponent)
    assert f_inverse_dyadic(ctx, y) == x


@given(data=random_dyadics())
def test_inverse_round_trip(data):
    ctx, y = data
    assert fv(ctx, f_inverse_dyadic(ctx, y)) == y


@st.composite
def finite_cf(draw):
    ctx = draw(primes)
    n = draw(st.integers(1, 8))
    es = [draw(st.integers(-6, 6))] + [draw(st.integers(1, 4)) for _ in range(n - 1)]
    as_ = [draw(st.integers(1, ctx.p - 1)) for _ in range(n)]
    return ctx, [CFPair(e, a) for e, a in zip(es, as_)], draw(st.sampled_from([0, -ctx.p]))


@given(data=finite_cf())
def test_closed_form_on_finite_fractions(data):
    ctx, pairs, t = data
    x = cf_eval_exact(ctx, pairs, t)
    E, expected = 0, F(0)
    for pr in pairs:
        E += pr.e
        expected += pr.a * F(ctx.p) ** E
    expected += t * F(ctx.p) ** E
    assert fv(ctx, x) == expected


@settings(max_examples=50)
@given(ctx=primes, x=rationals(), N=st.sampled_from([8, 16, 32, 64]))
def test_two_routes_to_f_agree(ctx, x, N):
    assume(x == 0 or valuation(ctx, x) < N)
    a = approx_from_rational(ctx, x, N)
    expected = approx_from_rational(ctx, fv(ctx, x), N)
    assert f_approx(ctx, a) == expected
    assert f_inverse_approx(ctx, expected) == a


@given(ctx=primes, e=st.integers(-5, 5), x=rationals(), data=st.data())
def test_one_step_identity(ctx, e, x, data):
    a = data.draw(st.integers(1, ctx.p - 1))
    if x != 0:
        x = x * F(ctx.p) ** (data.draw(st.integers(1, 4)) - valuation(ctx, x))
    assert check_one_step_identity(ctx, e, a, x)


def test_expansion_used_by_f():
    e = cf_expand(P2, F(4, 3))
    assert f_of_expansion(P2, e) == f_rational(P2, F(4, 3))
