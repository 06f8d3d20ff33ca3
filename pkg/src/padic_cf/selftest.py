"""Randomized property suites behind the ``selftest`` command."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .conjugacy import FImage, check_one_step_identity, f_inverse_dyadic, f_rational
from .dynamics import DEFAULT_CAP, cf_expand, convergents, sigma_step, tau, tau_step
from .errors import OrbitNotTerminated
from .padic_core import (
    PrimeContext,
    digit_stream_to_rational,
    rational_to_digit_stream,
    valuation,
)

HEIGHT = 10**6


def random_rational(rng: random.Random, height: int = HEIGHT) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_dyadic(rng: random.Random, p: int, height: int = HEIGHT, spread: int = 6) -> Fraction:
    m = 0
    while m == 0:
        m = rng.randint(-height, height)
    return Fraction(m) * Fraction(p) ** rng.randint(-spread, spread)


def random_in_pzp(rng: random.Random, ctx: PrimeContext, height: int = HEIGHT) -> Fraction:
    """A random rational of valuation between 1 and 4, or occasionally 0."""
    x = random_rational(rng, height)
    if x == 0:
        return x
    return x * Fraction(ctx.p) ** (rng.randint(1, 4) - valuation(ctx, x))


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    unterminated: int = 0

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.unterminated == 0


def _run(name: str, trials: int, check: Callable[[], bool]) -> SuiteResult:
    res = SuiteResult(name)
    for _ in range(trials):
        try:
            good = check()
        except OrbitNotTerminated:
            res.unterminated += 1
            continue
        if good:
            res.passed += 1
        else:
            res.failed += 1
    return res


def run_selftest(ctx: PrimeContext, seed: int = 0, samples: int = 200, cap: int = DEFAULT_CAP) -> list[SuiteResult]:
    rng = random.Random(seed)
    p = ctx.p
    f = lambda x: f_rational(ctx, x, cap).value  # noqa: E731

    def fixed_points():
        return (
            f(0) == 0
            and f(-p) == -p
            and tau_step(ctx, 0) is None
            and tau(ctx, -p) == -p
        )

    def conjugacy():
        x = random_rational(rng)
        return f(tau(ctx, x)) == sigma_step(ctx, f(x))

    def isometry():
        x, y = random_rational(rng), random_rational(rng)
        if x == y:
            return True
        return valuation(ctx, f(x) - f(y)) == valuation(ctx, x - y)

    def round_trip():
        x = random_rational(rng)
        y = random_dyadic(rng, p)
        return (
            f_inverse_dyadic(ctx, FImage.from_value(ctx, f(x)), cap) == x
            and f(f_inverse_dyadic(ctx, y, cap)) == y
            and digit_stream_to_rational(ctx, rational_to_digit_stream(ctx, x)) == x
        )

    def one_step():
        e = rng.randint(-5, 5)
        a = rng.randint(1, p - 1)
        return check_one_step_identity(ctx, e, a, random_in_pzp(rng, ctx), cap)

    def convergent_error():
        x = random_rational(rng)
        if x == 0:
            return True
        exp = cf_expand(ctx, x, cap)
        if not exp.terminated:
            raise OrbitNotTerminated(exp, cap)
        v0 = valuation(ctx, x)
        total = 0
        rest = x
        for n, (pr, P) in enumerate(zip(exp.pairs, convergents(ctx, exp.pairs))):
            total += pr.e
            rest = tau(ctx, rest)
            if rest == 0:
                if P != x:
                    return False
                continue
            err = valuation(ctx, x - P)
            if err != total + valuation(ctx, rest) or not err > n + v0:
                return False
        return True

    return [
        _run("fixed_points", 1, fixed_points),
        _run("conjugacy", samples, conjugacy),
        _run("isometry", samples, isometry),
        _run("round_trip", samples, round_trip),
        _run("one_step_identity", samples, one_step),
        _run("convergent_error", samples, convergent_error),
    ]
