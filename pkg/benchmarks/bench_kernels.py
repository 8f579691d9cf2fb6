#!/usr/bin/env python3
"""Compare the compiled kernels with the numpy/Python fallback.

Runs each kernel on the same inputs with both backends, checks the outputs
agree and prints timings. Usage::

    python3 benchmarks/bench_kernels.py [--states N] [--muls N]
"""

import argparse
import random
import time

import numpy as np

from rtsss import _kernels_py
from rtsss.gf import find_primitive_poly

try:
    from rtsss import _kernels
except ImportError:
    _kernels = None


def timed(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_xor(mod, tables, q, states):
    def run():
        out = np.empty(states, dtype=np.uint64)
        mod.enumerate_keys_xor(tables, q, 0, states, out)
        return out
    return run


def bench_digits(mod, tables, p, q, states):
    def run():
        out = np.empty(states, dtype=np.uint64)
        mod.enumerate_keys(tables, p, q, 0, states, out)
        return out
    return run


def bench_mul(mod, p, m, pairs):
    poly = find_primitive_poly(p, m)
    ops = mod.FieldOps(p, m, list(poly[:m]))

    def run():
        mul = ops.mul
        return [mul(a, b) for a, b in pairs]
    return run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--states", type=int, default=1 << 20)
    ap.add_argument("--muls", type=int, default=50_000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    cases = []
    # GF(2^5), t = 5, one 3-symbol share packed into 15 bits
    q, t = 32, 5
    xor_tab = rng.integers(0, 1 << 15, size=(t, q), dtype=np.uint64)
    cases.append(("enumerate_keys_xor  GF(2^5) t=5",
                  lambda mod: bench_xor(mod, xor_tab, q, args.states)))
    # GF(3^3), t = 3, 2 symbols -> 6 base-3 digits
    p3, q3, t3 = 3, 27, 3
    states3 = min(args.states, q3 ** t3)
    dig_tab = rng.integers(0, p3, size=(t3, q3, 6), dtype=np.uint16)
    cases.append(("enumerate_keys      GF(3^3) t=3",
                  lambda mod: bench_digits(mod, dig_tab, p3, q3, states3)))

    prng = random.Random(args.seed)
    for p, m in ((2, 20), (7, 14)):
        order = p ** m
        pairs = [(prng.randrange(order), prng.randrange(order)) for _ in range(args.muls)]
        cases.append((f"FieldOps.mul        GF({p}^{m})",
                      lambda mod, p=p, m=m, pairs=pairs: bench_mul(mod, p, m, pairs)))

    print(f"{'kernel':34s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, make in cases:
        t_py, out_py = timed(make(_kernels_py), repeat=1)
        if _kernels is None:
            print(f"{name:34s} {t_py:10.4f} {'n/a':>10s}")
            continue
        t_cy, out_cy = timed(make(_kernels))
        same = np.array_equal(np.asarray(out_py), np.asarray(out_cy))
        flag = "" if same else "  MISMATCH"
        print(f"{name:34s} {t_py:10.4f} {t_cy:10.4f} {t_py / t_cy:7.1f}x{flag}")


if __name__ == "__main__":
    main()
