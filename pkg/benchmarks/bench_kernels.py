#!/usr/bin/env python3
"""Time the hot kernels: numba-jitted vs pure-numpy implementations.

Run directly (numba warm-up excluded from the timings):

    python benchmarks/bench_kernels.py [--n-points 4096] [--repeats 5]

The same comparison can be forced package-wide with WEINSTEIN_NO_NUMBA=1.
"""

import argparse
import time

import numpy as np

from weinstein import _accel


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-points", type=int, default=4096)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    n = args.n_points
    alpha = 1.0

    xs = rng.uniform(-80, 80, size=n * 16)
    pts_in = rng.normal(scale=2.0, size=(n, 2))
    pts_in[:, 1] = np.abs(pts_in[:, 1]) + 0.05
    pts_out = rng.normal(scale=2.0, size=(n, 2))
    pts_out[:, 1] = np.abs(pts_out[:, 1]) + 0.05
    vals = rng.normal(size=n) + 1j * rng.normal(size=n)
    w = rng.uniform(0.1, 1.0, size=n)

    m = max(n // 8, 64)
    lam_m = pts_out[:m]

    cases = []
    cases.append((
        f"j_alpha on {len(xs)} args",
        lambda: _accel._j_alpha_array_numpy(alpha, xs, 200, 12.0),
        (lambda: _accel._j_alpha_array_numba(alpha, xs, 200, 12.0))
        if _accel.HAVE_NUMBA else None,
    ))
    cases.append((
        f"kernel_matrix {m}x{n}",
        lambda: _accel._kernel_matrix_numpy(lam_m, pts_in, alpha, -1.0, 200, 12.0),
        (lambda: _accel._kernel_matrix_numba(lam_m, pts_in, alpha, -1.0, 200, 12.0))
        if _accel.HAVE_NUMBA else None,
    ))
    cases.append((
        f"direct_transform {n}x{n}",
        lambda: _accel._direct_transform_numpy(vals, w, pts_in, pts_out,
                                               alpha, -1.0, 200, 12.0),
        (lambda: _accel._direct_transform_numba(vals, w, pts_in, pts_out,
                                                alpha, -1.0, 200, 12.0))
        if _accel.HAVE_NUMBA else None,
    ))

    print(f"numba available: {_accel.HAVE_NUMBA}; package dispatch uses "
          f"{'numba' if _accel.USE_NUMBA else 'numpy'}")
    print(f"{'kernel':<28} {'numpy':>10} {'numba':>10} {'speedup':>9}")
    for name, numpy_fn, numba_fn in cases:
        t_np = timeit(numpy_fn, args.repeats)
        if numba_fn is None:
            print(f"{name:<28} {t_np:>9.4f}s {'-':>10} {'-':>9}")
            continue
        numba_fn()  # warm-up / JIT compile
        t_nb = timeit(numba_fn, args.repeats)
        print(f"{name:<28} {t_np:>9.4f}s {t_nb:>9.4f}s {t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
