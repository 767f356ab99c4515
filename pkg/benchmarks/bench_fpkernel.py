#!/usr/bin/env python3
"""Benchmark the dense mod-p kernels: numba JIT vs the pure-numpy fallback.

Times the raw kernel functions backend-by-backend, then an end-to-end
univariate factorization in a child process per backend (the dispatcher
picks its implementation at import time from IDEALDEC_KERNEL).

Usage: python3 benchmarks/bench_fpkernel.py [--repeat N]
"""

import argparse
import os
import random
import subprocess
import sys
import time

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from idealdec._kernels import numpy_impl

try:
    from idealdec._kernels import numba_impl
    IMPLS = [("numba", numba_impl), ("numpy", numpy_impl)]
except ImportError:
    IMPLS = [("numpy", numpy_impl)]

P = 2_147_483_629


def rand_poly(rng, deg):
    a = np.array([rng.randrange(P) for _ in range(deg + 1)], dtype=np.int64)
    a[-1] = max(1, a[-1])
    return a


def bench(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_suite(repeat):
    rng = random.Random(1)
    a = rand_poly(rng, 64)
    b = rand_poly(rng, 48)
    f = rand_poly(rng, 24)
    A = np.array([[rng.randrange(P) for _ in range(33)] for _ in range(17)],
                 dtype=np.int64)
    B = np.array([[rng.randrange(P) for _ in range(33)] for _ in range(9)],
                 dtype=np.int64)
    cases = {
        "mul deg 64 x 48": lambda impl: impl.mul(a, b, P),
        "divmod deg 64 / 24": lambda impl: impl.divmod_(a, f, P),
        "gcd deg 64, 48": lambda impl: impl.gcd(a, b, P),
        "powmod x^p mod f (deg 24)": lambda impl: impl.powmod(
            np.array([0, 1], dtype=np.int64), P, f, P),
        "mul_trunc2 17x33 * 9x33": lambda impl: impl.mul_trunc2(A, B, 33, P),
    }
    rows = []
    for label, call in cases.items():
        timings = {}
        for name, impl in IMPLS:
            call(impl)                      # warm the JIT before timing
            timings[name] = bench(lambda: call(impl), repeat)
        rows.append((label, timings))
    return rows


FACTOR_SNIPPET = """
import random, time
from idealdec.arith import GF, UniPoly
from idealdec.factor import factor_univariate_fp
from idealdec import _kernels
rng = random.Random(2)
p = 2_147_483_629
polys = [UniPoly([rng.randrange(p) for _ in range(20)] + [1], GF(p))
         for _ in range(40)]
factor_univariate_fp(polys[0])            # JIT warmup outside the clock
t0 = time.perf_counter()
for f in polys:
    factor_univariate_fp(f, seed=7)
print(f"{_kernels.BACKEND} {time.perf_counter() - t0:.3f}")
"""


def end_to_end():
    rows = []
    for name, _ in IMPLS:
        env = dict(os.environ, IDEALDEC_KERNEL=name,
                   PYTHONPATH=os.path.join(os.path.dirname(__file__), "..", "src"))
        out = subprocess.run([sys.executable, "-c", FACTOR_SNIPPET], env=env,
                             capture_output=True, text=True, check=True)
        backend, secs = out.stdout.split()
        assert backend == name
        rows.append((name, float(secs)))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=25)
    args = ap.parse_args()
    print(f"prime p = {P} (kernels stay in int64)\n")
    print(f"{'kernel':<28}" + "".join(f"{name:>12}" for name, _ in IMPLS) + "   speedup")
    for label, timings in kernel_suite(args.repeat):
        base = timings.get("numpy")
        cells = "".join(f"{timings[name] * 1e6:>10.1f}us" for name, _ in IMPLS)
        speed = (f"{base / timings['numba']:.1f}x"
                 if "numba" in timings and base else "-")
        print(f"{label:<28}{cells}   {speed}")
    print("\nend-to-end: 40 degree-20 factorizations over F_p")
    for name, secs in end_to_end():
        print(f"  {name:<8} {secs:.3f}s")


if __name__ == "__main__":
    main()
