"""Exact and finite-precision p-adic arithmetic over the rationals.

Rationals are plain :class:`fractions.Fraction` values, which are always
reduced with a positive denominator.  Digits are stored least significant
first and the valuation is kept separately, so a number with negative
valuation needs no special casing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import (
    DivisionByZero,
    NotIntegral,
    NotPrime,
    PrecisionExhausted,
    PrecisionTooLow,
)

INFINITY = math.inf

# Deterministic Miller-Rabin witnesses for every n < 3.3e24 (covers 64 bits).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for integers below 2**64."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeContext:
    """Holds the fixed prime ``p``; validated once at construction."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise NotPrime(f"prime must be an integer, got {self.p!r}")
        if self.p >= 2**64:
            raise NotPrime(f"{self.p} is outside the supported 64-bit range")
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def int_valuation(p: int, n: int) -> tuple[int, int]:
    """Split a nonzero integer as ``p**k * u`` with ``u`` prime to ``p``."""
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def valuation(ctx: PrimeContext, x) -> int | float:
    """p-adic valuation; ``INFINITY`` for zero."""
    x = as_rational(x)
    if x == 0:
        return INFINITY
    p = ctx.p
    return int_valuation(p, x.numerator)[0] - int_valuation(p, x.denominator)[0]


def _split(ctx: PrimeContext, x: Fraction) -> tuple[int, int, int]:
    """Return ``(v, a, b)`` with ``x = p**v * a / b``, ``a, b`` prime to p, b > 0."""
    vn, a = int_valuation(ctx.p, x.numerator)
    vd, b = int_valuation(ctx.p, x.denominator)
    return vn - vd, a, b


def _pow_p(p: int, k: int) -> Fraction:
    return Fraction(p**k) if k >= 0 else Fraction(1, p ** (-k))


def abs_p(ctx: PrimeContext, x) -> Fraction:
    x = as_rational(x)
    if x == 0:
        return Fraction(0)
    return _pow_p(ctx.p, -valuation(ctx, x))


def epsilon(ctx: PrimeContext, x) -> Fraction:
    """Unit part ``|x|_p * x``, with the convention ``epsilon(0) == 1``."""
    x = as_rational(x)
    if x == 0:
        return Fraction(1)
    _, a, b = _split(ctx, x)
    return Fraction(a, b)


def floor_p(ctx: PrimeContext, x) -> int:
    """The digit ``a`` in ``{0, ..., p-1}`` with ``|x - a|_p < 1``.

    Raises NotIntegral when ``x`` is not in Z_p.
    """
    x = as_rational(x)
    p = ctx.p
    if x.denominator % p == 0:
        raise NotIntegral(f"{x} has negative {p}-adic valuation")
    return x.numerator * pow(x.denominator, -1, p) % p


def int_digits(p: int, n: int) -> list[int]:
    """Base-p digits of a nonnegative integer, least significant first."""
    out = []
    while n:
        n, d = divmod(n, p)
        out.append(d)
    return out


# --------------------------------------------------------------------------
# exact expansions of rationals


@dataclass(frozen=True)
class DigitStream:
    """Eventually periodic p-adic expansion ``p**valuation * sum d_n p**n``.

    The digit sequence is ``preperiod`` followed by ``period`` repeated
    forever.  Instances built by :func:`canonical_stream` have a nonzero
    leading digit, a primitive period and a minimal preperiod.
    """

    valuation: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    is_zero: bool = False

    @classmethod
    def zero(cls) -> DigitStream:
        return cls(0, (), (0,), True)

    def digit(self, n: int) -> int:
        """The n-th unit digit (n >= 0), i.e. the coefficient of p**(valuation+n)."""
        if self.is_zero:
            return 0
        m = len(self.preperiod)
        if n < m:
            return self.preperiod[n]
        return self.period[(n - m) % len(self.period)]


def canonical_stream(valuation_: int, preperiod, period, primitive: bool = False) -> DigitStream:
    """Normalize expansion data; pass ``primitive=True`` if the period is known primitive."""
    pre = tuple(preperiod)
    per = tuple(period)
    if not per:
        raise ValueError("period must be nonempty")
    if not any(pre) and not any(per):
        return DigitStream.zero()
    e = valuation_
    if any(pre):
        k = next(i for i, d in enumerate(pre) if d)
        pre = pre[k:]
    else:
        k = next(i for i, d in enumerate(per) if d)
        pre, per = (), per[k:] + per[:k]
        k += len(preperiod)
    e += k
    n = len(per)
    if not primitive:
        for size in range(1, n + 1):
            if n % size == 0 and per == per[:size] * (n // size):
                per = per[:size]
                break
    # fold trailing preperiod digits into the period
    n = len(per)
    j = len(pre)
    while j and pre[j - 1] == per[(j - 1 - len(pre)) % n]:
        j -= 1
    if j < len(pre):
        shift = (j - len(pre)) % n
        per = per[shift:] + per[:shift]
        pre = pre[:j]
    return DigitStream(e, pre, per)


def _period(r0: int, b: int, p: int) -> tuple[int, ...]:
    if _kernels.fits_int64(b, p):
        digits = _kernels.period_digits(r0, b, p)
        return tuple(digits.tobytes() if digits.dtype == np.uint8 else digits.tolist())
    binv = pow(b, -1, p)
    digits = []
    r = r0
    while True:
        d = r * binv % p
        digits.append(d)
        r = (r - d * b) // p
        if r == r0:
            return tuple(digits)


def rational_to_digit_stream(ctx: PrimeContext, x) -> DigitStream:
    """Exact eventually periodic expansion of a rational.

    The tail after n digits is ``r/b`` for a long-division state ``r``; the
    expansion is purely periodic from the first state in ``[-b, 0]`` and the
    period closes when that state recurs.
    """
    x = as_rational(x)
    if x == 0:
        return DigitStream.zero()
    p = ctx.p
    e, r, b = _split(ctx, x)
    binv = pow(b, -1, p)
    pre = []
    while not -b <= r <= 0:
        d = r * binv % p
        pre.append(d)
        r = (r - d * b) // p
    return DigitStream(e, tuple(pre), _period(r, b, p))


def digit_stream_geometric_sum(ctx: PrimeContext, s: DigitStream) -> Fraction:
    """Value of a stream by summing the periodic tail as a geometric series.

    Exact but quadratic in the period length; see digit_stream_to_rational.
    """
    if s.is_zero:
        return Fraction(0)
    p = ctx.p
    head = _digits_value(p, s.preperiod)
    cycle = _digits_value(p, s.period)
    tail = Fraction(cycle * p ** len(s.preperiod), 1 - p ** len(s.period))
    return _pow_p(p, s.valuation) * (head + tail)


def _digits_value(p: int, digits) -> int:
    """sum d_i p**i, split recursively so long inputs stay subquadratic."""
    n = len(digits)
    if n <= 64:
        v = 0
        for d in reversed(digits):
            v = v * p + d
        return v
    h = n // 2
    return _digits_value(p, digits[:h]) + p**h * _digits_value(p, digits[h:])


def rational_reconstruction(residue: int, modulus: int) -> Fraction | None:
    """The fraction n/d with ``n = d*residue mod modulus`` and |n|, d <= sqrt(modulus/2)."""
    bound = math.isqrt(modulus // 2)
    r0, r1 = modulus, residue % modulus
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound or math.gcd(r1, t1) != 1:
        return None
    return Fraction(r1, t1)


def digit_stream_to_rational(ctx: PrimeContext, s: DigitStream) -> Fraction:
    """Exact rational value of an eventually periodic expansion.

    Short periods are summed directly.  Long ones would need gcds of
    numbers with ``len(period) * log2(p)`` bits, so instead a candidate is
    recovered from a growing digit prefix by rational reconstruction and
    accepted only if its own expansion reproduces ``s``.
    """
    if s.is_zero:
        return Fraction(0)
    p = ctx.p
    total = len(s.preperiod) + len(s.period)
    if len(s.period) <= 256:
        return digit_stream_geometric_sum(ctx, s)
    unit = DigitStream(0, s.preperiod, s.period)
    K = 2 * len(s.preperiod) + 32
    while K <= 2 * total + 2:
        residue = _digits_value(p, [unit.digit(i) for i in range(K)])
        cand = rational_reconstruction(residue, p**K)
        # a purely L-periodic tail needs p**L == 1 modulo the denominator
        if (
            cand is not None
            and cand.denominator % p
            and pow(p, len(s.period), cand.denominator) == 1 % cand.denominator
            and rational_to_digit_stream(ctx, cand) == unit
        ):
            return _pow_p(p, s.valuation) * cand
        K *= 2
    return digit_stream_geometric_sum(ctx, s)


# --------------------------------------------------------------------------
# finite-precision approximations


@dataclass(frozen=True)
class PAdicApprox:
    """A p-adic number known modulo ``p**precision``.

    ``digits`` are the known unit digits, so ``precision == valuation +
    len(digits)``.  Three flavours exist:

    * ``digits`` nonempty: the leading digit is nonzero and ``valuation`` is
      the true valuation;
    * ``digits`` empty and not ``exact_zero``: indistinguishable from zero at
      this precision ("0 mod p**valuation");
    * ``exact_zero``: exactly 0, infinite precision.
    """

    valuation: int
    digits: tuple[int, ...]
    exact_zero: bool = False

    @classmethod
    def exact(cls) -> PAdicApprox:
        return cls(0, (), True)

    @classmethod
    def zero_mod(cls, precision: int) -> PAdicApprox:
        return cls(precision, ())

    @property
    def digit_count(self) -> int:
        return len(self.digits)

    @property
    def precision(self) -> int | float:
        if self.exact_zero:
            return INFINITY
        return self.valuation + len(self.digits)

    def unit(self, p: int) -> int:
        return sum(d * p**i for i, d in enumerate(self.digits))


def _approx_from_residue(p: int, e: int, residue: int, k: int) -> PAdicApprox:
    digits = int_digits(p, residue)
    return PAdicApprox(e, tuple(digits + [0] * (k - len(digits))))


def approx_from_rational(ctx: PrimeContext, x, N: int) -> PAdicApprox:
    """Truncate ``x`` to absolute precision ``N``."""
    x = as_rational(x)
    if x == 0:
        return PAdicApprox.exact()
    e, a, b = _split(ctx, x)
    k = N - e
    if k <= 0:
        raise PrecisionTooLow(f"precision {N} does not exceed valuation {e}")
    mod = ctx.p**k
    return _approx_from_residue(ctx.p, e, a * pow(b, -1, mod) % mod, k)


def approx_truncation_value(ctx: PrimeContext, a: PAdicApprox) -> Fraction:
    """The canonical representative ``p**e * sum d_i p**i`` (an element of Z[1/p])."""
    if a.exact_zero or not a.digits:
        return Fraction(0)
    return _pow_p(ctx.p, a.valuation) * a.unit(ctx.p)


def _reapprox(ctx: PrimeContext, value: Fraction, N: int) -> PAdicApprox:
    if value == 0 or valuation(ctx, value) >= N:
        return PAdicApprox.zero_mod(N)
    return approx_from_rational(ctx, value, N)


def approx_add(ctx: PrimeContext, a: PAdicApprox, b: PAdicApprox) -> PAdicApprox:
    """Sum at absolute precision ``min(a.precision, b.precision)``.

    Total cancellation yields ``zero_mod(N)`` rather than an error.
    """
    if a.exact_zero:
        return b
    if b.exact_zero:
        return a
    N = min(a.precision, b.precision)
    s = approx_truncation_value(ctx, a) + approx_truncation_value(ctx, b)
    return _reapprox(ctx, s, N)


def approx_mul(ctx: PrimeContext, a: PAdicApprox, b: PAdicApprox) -> PAdicApprox:
    if a.exact_zero or b.exact_zero:
        return PAdicApprox.exact()
    e = a.valuation + b.valuation
    k = min(a.digit_count, b.digit_count)
    if k == 0:
        return PAdicApprox.zero_mod(e)
    mod = ctx.p**k
    return _approx_from_residue(ctx.p, e, a.unit(ctx.p) * b.unit(ctx.p) % mod, k)


def approx_inv(ctx: PrimeContext, a: PAdicApprox) -> PAdicApprox:
    if a.exact_zero:
        raise DivisionByZero("cannot invert exact zero")
    if not a.digits:
        raise PrecisionExhausted(
            f"cannot invert 0 mod {ctx.p}^{a.valuation}: no known digits"
        )
    k = a.digit_count
    mod = ctx.p**k
    return _approx_from_residue(ctx.p, -a.valuation, pow(a.unit(ctx.p), -1, mod), k)
