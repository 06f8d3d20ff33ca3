"""Schneider's continued fraction map, the digit shift, and p-adic continued fractions.

A continued fraction here is a list of pairs ``(e, a)`` standing for the
partial numerator ``p**e`` and the partial denominator ``a`` in
``{1, ..., p-1}``::

    p**e0 / (a0 + p**e1 / (a1 + ... p**en / (an + tail)))

Every pair after the first must have ``e >= 1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .errors import EmptyInput, InvariantViolation, SourceExhausted
from .padic_core import (
    DigitStream,
    PAdicApprox,
    PrimeContext,
    _pow_p,
    approx_from_rational,
    as_rational,
    canonical_stream,
    epsilon,
    floor_p,
    int_valuation,
    valuation,
)

DEFAULT_CAP = 100_000


@dataclass(frozen=True)
class CFPair:
    e: int
    a: int

    def __str__(self):
        return f"({self.e},{self.a})"


class Terminal(enum.Enum):
    ZERO = "zero"
    MINUS_P = "minus_p"
    TRUNCATED = "truncated"


@dataclass(frozen=True)
class CFExpansion:
    """Pairs emitted along a tau-orbit and the iterate the expansion stopped at.

    ``residual`` is the exact last iterate: 0, -p, or whatever was reached
    when the cap ran out.
    """

    pairs: tuple[CFPair, ...]
    terminal: Terminal
    residual: Fraction

    @property
    def terminated(self) -> bool:
        return self.terminal is not Terminal.TRUNCATED

    def __len__(self):
        return len(self.pairs)


@dataclass(frozen=True)
class OrbitRecord:
    iterates: tuple[Fraction, ...]
    pairs: tuple[CFPair, ...] = field(default=())
    terminated: bool = False


def _tau_int(p: int, num: int, den: int) -> tuple[int, int, int, int]:
    """One tau step on a reduced nonzero fraction; returns (e, a, num', den')."""
    vn, n1 = int_valuation(p, num)
    vd, d1 = int_valuation(p, den)
    # 1/eps = d1/n1, already reduced; move the sign to the numerator
    if n1 < 0:
        n1, d1 = -n1, -d1
    a = d1 * pow(n1, -1, p) % p
    # gcd(d1 - a*n1, n1) == gcd(d1, n1) == 1, so no reduction needed
    return vn - vd, a, d1 - a * n1, n1


def tau_step(ctx: PrimeContext, x) -> Optional[tuple[CFPair, Fraction]]:
    """Apply Schneider's map once.

    Returns ``(pair, tau(x))`` where ``pair = (v(x), floor_p(1/eps(x)))``, or
    None at ``x == 0`` (a fixed point, where no pair is defined).
    """
    x = as_rational(x)
    if x == 0:
        return None
    e, a, n, d = _tau_int(ctx.p, x.numerator, x.denominator)
    return CFPair(e, a), Fraction(n, d)


def tau(ctx: PrimeContext, x) -> Fraction:
    step = tau_step(ctx, x)
    return Fraction(0) if step is None else step[1]


def sigma_step(ctx: PrimeContext, x) -> Fraction:
    """The digit shift ``eps(x) - floor_p(eps(x))``."""
    u = epsilon(ctx, x)
    return u - floor_p(ctx, u)


def sigma_shift_stream(ctx: PrimeContext, s: DigitStream) -> DigitStream:
    """Drop the leading unit digit of an expansion and renormalize."""
    if s.is_zero:
        return s
    if s.preperiod:
        pre, per = s.preperiod[1:], s.period
    else:
        pre, per = (), s.period[1:] + s.period[:1]
    # the remaining digits start at p**1; a rotated primitive period stays primitive
    return canonical_stream(1, pre, per, primitive=True)


def tau_orbit(ctx: PrimeContext, x, steps: int) -> OrbitRecord:
    """Up to ``steps`` tau iterates, stopping early at 0 or -p."""
    x = as_rational(x)
    iterates = [x]
    pairs = []
    minus_p = -ctx.p
    while len(pairs) < steps and x != 0 and x != minus_p:
        pair, x = tau_step(ctx, x)
        pairs.append(pair)
        iterates.append(x)
    return OrbitRecord(tuple(iterates), tuple(pairs), x == 0 or x == minus_p)


def sigma_orbit(ctx: PrimeContext, x, steps: int) -> OrbitRecord:
    x = as_rational(x)
    iterates = [x]
    minus_p = -ctx.p
    while len(iterates) <= steps and x != 0 and x != minus_p:
        x = sigma_step(ctx, x)
        iterates.append(x)
    return OrbitRecord(tuple(iterates), (), x == 0 or x == minus_p)


def cf_expand(ctx: PrimeContext, x, cap: int = DEFAULT_CAP) -> CFExpansion:
    """Expand ``x`` along its tau-orbit until it hits 0, -p, or ``cap`` steps."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    x = as_rational(x)
    p = ctx.p
    num, den = x.numerator, x.denominator
    pairs = []
    while True:
        if num == 0:
            return CFExpansion(tuple(pairs), Terminal.ZERO, Fraction(0))
        if num == -p and den == 1:
            return CFExpansion(tuple(pairs), Terminal.MINUS_P, Fraction(-p))
        if len(pairs) >= cap:
            residual = Fraction(num, den)
            return CFExpansion(tuple(pairs), Terminal.TRUNCATED, residual)
        e, a, num, den = _tau_int(p, num, den)
        pairs.append(CFPair(e, a))


def _check_pair(ctx: PrimeContext, i: int, pr: CFPair) -> None:
    if not 1 <= pr.a < ctx.p:
        raise InvariantViolation(f"partial denominator {pr.a} outside 1..{ctx.p - 1}")
    if i > 0 and pr.e < 1:
        raise InvariantViolation(f"pair {i} has exponent {pr.e} < 1")


def check_pairs(ctx: PrimeContext, pairs: Iterable[CFPair]) -> tuple[CFPair, ...]:
    pairs = tuple(pairs)
    for i, pr in enumerate(pairs):
        _check_pair(ctx, i, pr)
    return pairs


def cf_eval_exact(ctx: PrimeContext, pairs: Iterable[CFPair], tail=None) -> Fraction:
    """Evaluate a finite continued fraction right to left.

    ``tail`` is the value substituted below the last partial denominator and
    must be 0 or lie in pZ_p.  With no pairs the tail itself is returned.
    """
    pairs = check_pairs(ctx, pairs)
    if tail is None:
        if not pairs:
            raise EmptyInput("no pairs and no tail to evaluate")
        tail = 0
    value = as_rational(tail)
    if value != 0 and valuation(ctx, value) < 1:
        raise InvariantViolation(f"tail {value} is not in pZ_p")
    p = ctx.p
    for pr in reversed(pairs):
        num = p**pr.e if pr.e >= 0 else Fraction(1, p ** (-pr.e))
        value = num / (pr.a + value)
    return value


def convergent(ctx: PrimeContext, pairs: Iterable[CFPair]) -> Fraction:
    pairs = tuple(pairs)
    if not pairs:
        raise EmptyInput("a convergent needs at least one pair")
    return cf_eval_exact(ctx, pairs, 0)


def convergents(ctx: PrimeContext, pairs: Iterable[CFPair]) -> Iterator[Fraction]:
    """Yield P_0, P_1, ... for successive prefixes.

    Uses the three-term recurrence ``A_n = a_n A_{n-1} + p**e_n A_{n-2}``
    (likewise ``B_n``), so each convergent costs O(1) operations.
    """
    A0, A1 = Fraction(1), Fraction(0)
    B0, B1 = Fraction(0), Fraction(1)
    for i, pr in enumerate(pairs):
        _check_pair(ctx, i, pr)
        q = _pow_p(ctx.p, pr.e)
        A0, A1 = A1, pr.a * A1 + q * A0
        B0, B1 = B1, pr.a * B1 + q * B0
        yield A1 / B1


def cf_eval_limit(
    ctx: PrimeContext,
    pair_source: Iterable[CFPair],
    N: int,
    tail=None,
) -> PAdicApprox:
    """Limit of an infinite continued fraction, modulo ``p**N``.

    Pairs are consumed until the exponent sum ``E_n`` satisfies ``E_n + 1 >=
    N``; the limit then differs from the current convergent by at least
    ``p**(E_n + e_{n+1})`` and ``e_{n+1} >= 1``.  If the source ends first,
    a finite ``tail`` (e.g. 0 for a terminating expansion) is substituted;
    without one SourceExhausted is raised.
    """
    pairs: list[CFPair] = []
    total = 0
    it = iter(pair_source)
    while not pairs or total + 1 < N:
        try:
            pr = next(it)
        except StopIteration:
            if tail is None:
                raise SourceExhausted(
                    f"source ended after {len(pairs)} pairs before reaching precision {N}"
                ) from None
            value = cf_eval_exact(ctx, pairs, tail)
            break
        if not 1 <= pr.a < ctx.p:
            raise InvariantViolation(f"partial denominator {pr.a} outside 1..{ctx.p - 1}")
        if pairs and pr.e < 1:
            raise InvariantViolation(f"pair {len(pairs)} has exponent {pr.e} < 1")
        pairs.append(pr)
        total += pr.e
    else:
        value = convergent(ctx, pairs)
    if value == 0:
        return PAdicApprox.exact()
    if valuation(ctx, value) >= N:
        return PAdicApprox.zero_mod(N)
    return approx_from_rational(ctx, value, N)
