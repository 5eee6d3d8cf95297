#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Usage: python benchmarks/bench_backends.py [--trials N] [--repeats R]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from isacrom._kernels import poisson_cdf_table, pure

try:
    from isacrom._kernels import _native as native
except ImportError:
    native = None

GLX, GLW = np.polynomial.legendre.leggauss(15)


def best_of(repeats, fn, *args):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_mc(backend, trials):
    table = poisson_cdf_table(1.3080919268028501)
    return best_of(5, backend.mc_count_hits, table, 0.0328, 8.283894e-14,
                   1e-13, 0.0, 0.0, 42, trials, 0)


def bench_panels(backend, repeats=5):
    # Representative inversion workload: 2048 half-period panels.
    widths = np.full(2048, np.pi / 3.0)
    starts = 1e-3 + np.concatenate([[0.0], np.cumsum(widths)[:-1]])
    return best_of(repeats, backend.cp_panel_block, 1.3, 3.0, starts, widths,
                   GLX, GLW)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--trials", type=int, default=1_000_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rows = []
    for name, backend in (("native", native), ("pure", pure)):
        if backend is None:
            print("native backend not built; showing pure only")
            continue
        mc = bench_mc(backend, args.trials)
        panels = bench_panels(backend, args.repeats)
        rows.append((name, mc, panels))

    print(f"{'backend':<8} {'mc 1e6 trials':>15} {'2048 panels':>14}")
    for name, mc, panels in rows:
        print(f"{name:<8} {mc * 1e3:>12.2f} ms {panels * 1e3:>11.2f} ms")
    if len(rows) == 2:
        print(f"{'speedup':<8} {rows[1][1] / rows[0][1]:>14.1f}x "
              f"{rows[1][2] / rows[0][2]:>13.1f}x")


if __name__ == "__main__":
    main()
