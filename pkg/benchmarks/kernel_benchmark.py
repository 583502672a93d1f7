"""Timing comparison of the compiled and pure-Python 1D TV prox kernels.

Runs the batched prox over row matrices of increasing size with both
implementations and reports per-call wall times and the speedup.  The
two outputs are also compared bitwise, so the benchmark doubles as a
parity smoke test on large inputs.

Usage:
    python3 benchmarks/kernel_benchmark.py [--reps 5] [--gamma 0.5]
"""

import argparse
import time

import numpy as np

from spheretv.kernels import HAVE_COMPILED, tv1d_batch

SIZES = ((64, 64), (250, 250), (100, 2000), (2000, 100), (512, 512))


def time_impl(z, gamma, impl, reps):
    out = np.empty_like(z)
    best = np.inf
    for _ in range(reps):
        t0 = time.perf_counter()
        tv1d_batch(z, gamma, out=out, impl=impl)
        best = min(best, time.perf_counter() - t0)
    return best, out.copy()


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--reps", type=int, default=5, help="repetitions per size (best wins)")
    parser.add_argument("--gamma", type=float, default=0.5, help="prox weight")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if not HAVE_COMPILED:
        print("compiled kernel not available; nothing to compare")
        return 1

    rng = np.random.default_rng(args.seed)
    print(f"{'rows x cols':>12} {'python':>12} {'compiled':>12} {'speedup':>9}  parity")
    for rows, cols in SIZES:
        z = rng.normal(0.0, 1.0, (rows, cols))
        t_py, out_py = time_impl(z, args.gamma, "python", args.reps)
        t_c, out_c = time_impl(z, args.gamma, "compiled", args.reps)
        parity = "ok" if np.array_equal(out_py, out_c) else "MISMATCH"
        print(
            f"{rows:>5} x{cols:>5} {t_py * 1e3:>10.2f}ms {t_c * 1e3:>10.2f}ms "
            f"{t_py / t_c:>8.1f}x  {parity}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
