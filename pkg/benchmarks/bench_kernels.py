"""Time the period-digit backends on long periods.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each case expands the purely periodic tail -1/b in base p, whose period
length is the multiplicative order of p mod b.  The pure-Python loop is the
fallback used when products would overflow int64.
"""

import argparse
import time

import numpy as np

from padic_cf import _kernels

CASES = [(2, 999_983), (3, 999_979), (7, 1_000_003), (101, 999_961)]


def python_loop(r0, b, p):
    binv = pow(b, -1, p)
    digits = []
    r = r0
    while True:
        d = r * binv % p
        digits.append(d)
        r = (r - d * b) // p
        if r == r0:
            return np.array(digits)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = {"numpy": _kernels.period_digits_numpy}
    if _kernels.numba is not None:
        _kernels.period_digits_numba(-1, 7, 2)  # compile or load the cache
        backends["numba"] = _kernels.period_digits_numba
    else:
        print("numba not installed; timing numpy only")

    print(f"{'p':>4} {'b':>9} {'period':>8} {'python':>9}", *(f"{k:>9}" for k in backends))
    for p, b in CASES:
        ref_time, ref = best_of(lambda: python_loop(-1, b, p), 1)
        row = [f"{p:>4} {b:>9} {len(ref):>8} {ref_time * 1e3:>7.1f}ms"]
        for fn in backends.values():
            t, digits = best_of(lambda: fn(-1, b, p), args.repeat)
            assert np.array_equal(digits, ref), (p, b)
            row.append(f"{t * 1e3:>7.1f}ms")
        print(*row)


if __name__ == "__main__":
    main()
