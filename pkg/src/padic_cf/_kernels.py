"""Digit kernels for the periodic part of a p-adic expansion.

Long division of ``r/b`` by ``p`` (``b`` prime to ``p``) maps the state
``r -> (r - d*b) / p`` with ``d = r * b^-1 mod p``.  Once ``-b <= r <= 0`` the
state stays there and the digits are purely periodic; the period ends at
the first return to the starting state.  Periods can be as long as ``b``, so
this loop dominates the cost of exact expansions.

Two interchangeable backends produce the period as an array of
:func:`digit_dtype`:

* numba: the sequential loop, compiled, with one division per digit;
* numpy: states via ``r_n = r_0 * p^-n mod b``, built by repeated doubling.

Set ``PADIC_CF_NUMBA=0`` to force the numpy path.  Both require the
intermediate products to fit in int64 (see :func:`fits_int64`); callers fall
back to Python integers otherwise.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional accelerator
    numba = None

_LIMIT = 2**62

USE_NUMBA = numba is not None and os.environ.get("PADIC_CF_NUMBA", "1") != "0"


def fits_int64(b: int, p: int) -> bool:
    return b * b < _LIMIT and b * p < _LIMIT


def digit_dtype(p: int) -> type:
    """Narrowest array type holding base-p digits; uint8 converts to Python ints fastest."""
    return np.uint8 if p <= 256 else np.int64


def _period_loop(s0, p, digit, step, out):
    # s = -r lies in [0, b]; writing s = q*p + t, the digit is digit[t] and
    # the next state is q + step[t], so each step costs a single division
    s = s0
    n = 0
    while True:
        q = s // p
        t = s - q * p
        out[n] = digit[t]
        n += 1
        s = q + step[t]
        if s == s0:
            return n


if numba is not None:
    _period_loop_jit = numba.njit(cache=True)(_period_loop)


def _tables(b: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    binv = pow(b, -1, p)
    digit = [-t * binv % p for t in range(p)]
    step = [(t + d * b) // p for t, d in enumerate(digit)]
    return np.array(digit, dtype=np.uint64), np.array(step, dtype=np.uint64)


def period_digits_numba(r0: int, b: int, p: int) -> np.ndarray:
    digit, step = _tables(b, p)
    out = np.empty(b + 1, dtype=digit_dtype(p))
    n = _period_loop_jit(np.uint64(-r0), np.uint64(p), digit, step, out)
    return out[:n]


def period_digits_numpy(r0: int, b: int, p: int) -> np.ndarray:
    binv = pow(b, -1, p)
    if b == 1:
        # states are stuck at 0 or -1
        return np.array([r0 * binv % p], dtype=digit_dtype(p))
    pinv = pow(p, -1, b)
    # q[n] = p^-n mod b; gcd(r0, b) == 1 so the period is the order of p mod b
    q = np.array([1], dtype=np.int64)
    step = pinv
    while True:
        nxt = q * step % b
        hit = np.flatnonzero(nxt == 1)
        if hit.size:
            q = np.concatenate([q, nxt[: hit[0]]])
            break
        q = np.concatenate([q, nxt])
        step = step * step % b
    rho = r0 % b * q % b
    r = rho - b  # representative in [-b+1, -1]; rho != 0 since b > 1
    return (r * binv % p).astype(digit_dtype(p))


def period_digits(r0: int, b: int, p: int) -> np.ndarray:
    """Digits of the purely periodic tail ``r0/b`` (``-b <= r0 <= 0``)."""
    if USE_NUMBA:
        return period_digits_numba(r0, b, p)
    return period_digits_numpy(r0, b, p)
