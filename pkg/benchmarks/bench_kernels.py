#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the three grid kernels that every quadrature oracle leans on:
the normalized associated-Legendre recurrence, the Hermite recurrence,
and the basis Fourier sum. The first numba call includes JIT
compilation and is reported separately.

Usage:
    python benchmarks/bench_kernels.py [--points N] [--repeats R]
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from lzphi import _kernels  # noqa: E402


def timed(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=200_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    if not _kernels.HAS_NUMBA:
        print("numba is not importable; only the numpy path can run")
        return 1

    rng = np.random.default_rng(0)
    x = rng.uniform(-1.0, 1.0, args.points)
    xi = rng.uniform(-6.0, 6.0, args.points)
    phi = rng.uniform(0.0, 2 * np.pi, args.points)
    ms = np.arange(-8, 9, dtype=np.int64)
    coeffs = rng.normal(size=ms.size) + 1j * rng.normal(size=ms.size)
    coeffs /= np.linalg.norm(coeffs)

    cases = [
        ("legendre l=12 m=3", lambda f: f(12, 3, x),
         _kernels.legendre_grid_numba, _kernels.legendre_grid_numpy),
        ("hermite n=24", lambda f: f(24, xi),
         _kernels.hermite_grid_numba, _kernels.hermite_grid_numpy),
        ("fourier 17 modes", lambda f: f(ms, coeffs, phi),
         _kernels.fourier_sum_numba, _kernels.fourier_sum_numpy),
    ]

    print(f"grid points: {args.points}, repeats: {args.repeats} (best-of shown)")
    print(f"{'kernel':<20} {'jit warmup':>11} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for label, call, jit_fn, np_fn in cases:
        start = time.perf_counter()
        call(jit_fn)
        warmup = time.perf_counter() - start
        got_jit = call(jit_fn)
        got_np = call(np_fn)
        worst = float(np.max(np.abs(got_jit - got_np)))
        if worst > 1e-9 * max(1.0, float(np.max(np.abs(got_np)))):
            print(f"{label}: paths disagree by {worst}")
            return 1
        t_jit = timed(lambda: call(jit_fn), args.repeats)
        t_np = timed(lambda: call(np_fn), args.repeats)
        print(
            f"{label:<20} {warmup:>10.3f}s {t_jit * 1e3:>8.2f}ms {t_np * 1e3:>8.2f}ms "
            f"{t_np / t_jit:>7.2f}x"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
