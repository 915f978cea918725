"""Benchmark the compiled RK4 kernel against the pure-Python fallback.

Both kernels share the same calling contract, so we time them on identical
workloads and report steps per second and the max deviation between their
final states (which should be at machine precision).

Usage: python benchmarks/bench_integrate.py [--steps N] [--repeat R]
"""

import argparse
import time

import numpy as np

from spinorflow import CauchyPair, KERNEL_BACKEND
from spinorflow import _kernel_py

try:
    from spinorflow import _kernel
except ImportError:
    _kernel = None


def _workload():
    pair = CauchyPair.from_components(uu=-2.0, ul=1.0, un=1.0,
                                      ll=1.0, ln=1.0, nn=1.0)
    return np.concatenate([pair.theta.as_array(), np.eye(3).ravel()])


def run(kernel, y0, n_steps, dt):
    out_t = np.empty(4)
    out_y = np.empty((4, 15))
    start = time.perf_counter()
    nrec, done, truncated = kernel.rk4_path(
        np.ascontiguousarray(y0), 1.0, 0.0, dt, n_steps, n_steps, out_t, out_y)
    elapsed = time.perf_counter() - start
    return elapsed, out_y[nrec - 1].copy()


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=200_000,
                        help="RK4 steps per run (default 200000)")
    parser.add_argument("--repeat", type=int, default=3,
                        help="repetitions, best time reported (default 3)")
    args = parser.parse_args()

    y0 = _workload()
    dt = 0.4 / args.steps
    print(f"active backend: {KERNEL_BACKEND}")

    results = {}
    for name, kernel in (("python", _kernel_py), ("cython", _kernel)):
        if kernel is None:
            print(f"{name:>7s}: not built, skipped")
            continue
        best, final = min(
            (run(kernel, y0, args.steps, dt) for _ in range(args.repeat)),
            key=lambda r: r[0],
        )
        results[name] = (best, final)
        print(f"{name:>7s}: {best:8.4f} s  ({args.steps / best:12.0f} steps/s)")

    if len(results) == 2:
        dev = float(np.max(np.abs(results["python"][1] - results["cython"][1])))
        speedup = results["python"][0] / results["cython"][0]
        print(f"speedup: {speedup:.1f}x, final-state deviation {dev:.3e}")


if __name__ == "__main__":
    main()
