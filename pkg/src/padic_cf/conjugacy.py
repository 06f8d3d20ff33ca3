"""The isometry f conjugating Schneider's map to the digit shift.

For a rational ``x`` whose tau-orbit ends in ``t`` (0 or -p) after pairs
``(e_0, a_0), ..., (e_m, a_m)``::

    f(x) = sum_i a_i p**E_i + t * p**E_m,    E_i = e_0 + ... + e_i

so f maps Q into Z[1/p], and every element of Z[1/p] has a rational
preimage.  Approximations are handled by truncating to an exact element of
Z[1/p] first; since f is an isometry nothing is lost at the input precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .dynamics import (
    DEFAULT_CAP,
    CFExpansion,
    CFPair,
    Terminal,
    _tau_int,
    cf_eval_exact,
    cf_expand,
)
from .errors import InvariantViolation, NotDyadic, OrbitNotTerminated
from .padic_core import (
    PAdicApprox,
    PrimeContext,
    approx_from_rational,
    approx_truncation_value,
    as_rational,
    int_digits,
    int_valuation,
    valuation,
)


@dataclass(frozen=True)
class FImage:
    """An element ``mantissa * p**exponent`` of Z[1/p].

    Canonical: the mantissa is prime to p, and zero is ``(0, 0)``.
    """

    mantissa: int
    exponent: int
    p: int

    @classmethod
    def from_value(cls, ctx: PrimeContext, y) -> FImage:
        y = as_rational(y)
        p = ctx.p
        if y == 0:
            return cls(0, 0, p)
        k_den, rest = int_valuation(p, y.denominator)
        if rest != 1:
            raise NotDyadic(f"{y} is not in Z[1/{p}]")
        k_num, m = int_valuation(p, y.numerator)
        return cls(m, k_num - k_den, p)

    @property
    def value(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.mantissa * self.p**self.exponent)
        return Fraction(self.mantissa, self.p ** (-self.exponent))

    def __str__(self):
        if self.mantissa == 0:
            return "0"
        return f"{self.mantissa}*{self.p}^{self.exponent}"


@dataclass(frozen=True)
class RationalPreimage:
    x: Fraction


@dataclass(frozen=True)
class IrrationalPreimage:
    pass


PreimageClassification = Union[RationalPreimage, IrrationalPreimage]


def f_of_expansion(ctx: PrimeContext, expansion: CFExpansion) -> FImage:
    """Closed form of f for a terminated expansion."""
    if not expansion.terminated:
        raise OrbitNotTerminated(expansion, len(expansion.pairs))
    p = ctx.p
    pairs = expansion.pairs
    if not pairs:
        return FImage.from_value(ctx, expansion.residual)
    # E_0 is the smallest exponent; accumulate an integer scaled by p**-E_0
    base = pairs[0].e
    offset = 0
    total = 0
    for pr in pairs:
        offset += pr.e
        total += pr.a * p ** (offset - base)
    if expansion.terminal is Terminal.MINUS_P:
        total -= p ** (offset - base + 1)
    k, m = int_valuation(p, total)
    return FImage(m, base + k, p)


def f_rational(ctx: PrimeContext, x, cap: int = DEFAULT_CAP) -> FImage:
    """Exact value of f at a rational.

    Raises OrbitNotTerminated (carrying the truncated expansion) if the
    orbit does not reach 0 or -p within ``cap`` steps.
    """
    expansion = cf_expand(ctx, x, cap)
    if not expansion.terminated:
        raise OrbitNotTerminated(expansion, cap)
    return f_of_expansion(ctx, expansion)


def f_approx(ctx: PrimeContext, a: PAdicApprox, cap: int = DEFAULT_CAP) -> PAdicApprox:
    """f on a residue class, at the same absolute precision."""
    if a.exact_zero:
        return a
    if not a.digits:
        # |f(y)| = |y| <= p**-N for every y in the class
        return a
    # Walk the orbit of the truncation, stopping once E_i reaches N: every
    # later term of the closed form is divisible by p**N.
    p, N = ctx.p, a.precision
    x = approx_truncation_value(ctx, a)
    num, den = x.numerator, x.denominator
    pairs, E = [], None
    terminal = Terminal.ZERO
    while num != 0 and (E is None or E < N):
        if num == -p and den == 1:
            terminal = Terminal.MINUS_P
            break
        if len(pairs) >= cap:
            raise OrbitNotTerminated(
                CFExpansion(tuple(pairs), Terminal.TRUNCATED, Fraction(num, den)), cap
            )
        e, d, num, den = _tau_int(p, num, den)
        pairs.append(CFPair(e, d))
        E = e if E is None else E + e
    residual = Fraction(-p if terminal is Terminal.MINUS_P else 0)
    image = f_of_expansion(ctx, CFExpansion(tuple(pairs), terminal, residual))
    return approx_from_rational(ctx, image.value, N)


def _dyadic_pairs(p: int, shift: int, digits: list[int]) -> list[CFPair]:
    pairs = []
    prev = None
    for pos, d in enumerate(digits):
        if d == 0:
            continue
        E = shift + pos
        pairs.append(CFPair(E if prev is None else E - prev, d))
        prev = E
    return pairs


def f_inverse_dyadic(ctx: PrimeContext, y, cap: int = DEFAULT_CAP) -> Fraction:
    """The rational preimage of an element of Z[1/p].

    For ``y > 0`` the nonzero base-p digits of ``y`` give the pairs of a
    terminating continued fraction.  For ``y < 0`` we write ``y = c * p**k -
    p**(k+K)`` with ``0 <= c < p**K`` and the digit of ``c`` at ``K-1``
    nonzero; the digits of ``c`` give the pairs and the tail is -p.
    """
    if not isinstance(y, FImage):
        y = FImage.from_value(ctx, y)
    p = ctx.p
    m, k = y.mantissa, y.exponent
    if m == 0:
        return Fraction(0)
    if m > 0:
        x = cf_eval_exact(ctx, _dyadic_pairs(p, k, int_digits(p, m)), 0)
    else:
        K = 0
        while m + p**K < 0:
            K += 1
        c = m + p**K
        if K == 0 or (c // p ** (K - 1)) % p == 0:
            c += (p - 1) * p**K
            K += 1
        x = cf_eval_exact(ctx, _dyadic_pairs(p, k, int_digits(p, c)), -p)
    image = f_rational(ctx, x, cap)
    if image != y:
        raise RuntimeError(f"inverse check failed: f({x}) = {image}, expected {y}")
    return x


def f_inverse_approx(ctx: PrimeContext, y: PAdicApprox, cap: int = DEFAULT_CAP) -> PAdicApprox:
    if y.exact_zero or not y.digits:
        return y
    target = approx_truncation_value(ctx, y)
    x = f_inverse_dyadic(ctx, FImage.from_value(ctx, target), cap)
    return approx_from_rational(ctx, x, y.precision)


def is_dyadic(ctx: PrimeContext, y) -> bool:
    """True when ``y`` lies in Z[1/p]."""
    return int_valuation(ctx.p, as_rational(y).denominator)[1] == 1


def classify_preimage(ctx: PrimeContext, y, cap: int = DEFAULT_CAP) -> PreimageClassification:
    """Decide whether f^-1(y) is rational, with a witness when it is."""
    y = as_rational(y)
    if is_dyadic(ctx, y):
        return RationalPreimage(f_inverse_dyadic(ctx, y, cap))
    return IrrationalPreimage()


def check_one_step_identity(ctx: PrimeContext, e: int, a: int, x, cap: int = DEFAULT_CAP) -> bool:
    """Evaluate both sides of ``f(p**e / (x + a)) == p**e * (f(x) + a)``."""
    x = as_rational(x)
    if not 1 <= a < ctx.p:
        raise InvariantViolation(f"digit {a} outside 1..{ctx.p - 1}")
    if x != 0 and valuation(ctx, x) < 1:
        raise InvariantViolation(f"{x} is not in pZ_p")
    scale = Fraction(ctx.p) ** e
    lhs = f_rational(ctx, scale / (x + a), cap).value
    rhs = scale * (f_rational(ctx, x, cap).value + a)
    return lhs == rhs
