#!/usr/bin/env python3
"""Benchmark the numba-compiled hot kernels against their pure-Python paths.

Each kernel decorated with ``maybe_njit`` keeps its original function as
``.py_func``, so both implementations can be timed in one process.  Run with
``SIMFARM_NO_NUMBA=1`` to check the fallback selection itself.

Usage: python benchmarks/bench_kernels.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from simfarm._accel import USING_NUMBA
from simfarm.analysis.pareto import _non_dominated_mask
from simfarm.analysis.special import betainc, gammainc_p, norm_ppf_vec
from simfarm.models.tree import _scan_splits_gini, _scan_splits_sse


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _bench(name: str, jitted, pure, repeat: int) -> None:
    jitted()  # warm the JIT cache before timing
    t_jit = _time(jitted, repeat)
    t_pure = _time(pure, repeat)
    speedup = t_pure / t_jit if t_jit > 0 else float("inf")
    print(f"{name:28s} jit {t_jit * 1e3:9.2f} ms   pure {t_pure * 1e3:9.2f} ms   x{speedup:6.1f}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    print(f"numba acceleration: {'on' if USING_NUMBA else 'off (pure path only)'}")
    rng = np.random.default_rng(0)

    a_grid = rng.uniform(0.5, 50.0, 4000)
    x_grid = rng.uniform(0.0, 60.0, 4000)
    _bench(
        "gammainc_p (4k scalars)",
        lambda: [gammainc_p(a, x) for a, x in zip(a_grid, x_grid)],
        lambda: [gammainc_p.py_func(a, x) for a, x in zip(a_grid, x_grid)],
        args.repeat,
    )

    ab_grid = rng.uniform(0.5, 30.0, 2000)
    u_grid = rng.uniform(0.01, 0.99, 2000)
    _bench(
        "betainc (2k scalars)",
        lambda: [betainc(a, b, u) for a, b, u in zip(ab_grid, ab_grid[::-1], u_grid)],
        lambda: [betainc.py_func(a, b, u) for a, b, u in zip(ab_grid, ab_grid[::-1], u_grid)],
        args.repeat,
    )

    probs = rng.uniform(1e-9, 1 - 1e-9, 200_000)
    _bench(
        "norm_ppf_vec (200k)",
        lambda: norm_ppf_vec(probs),
        lambda: norm_ppf_vec.py_func(probs),
        args.repeat,
    )

    pts = np.ascontiguousarray(rng.random((3000, 3)))
    _bench(
        "pareto mask (3000x3)",
        lambda: _non_dominated_mask(pts),
        lambda: _non_dominated_mask.py_func(pts),
        args.repeat,
    )

    xs = np.sort(rng.random(200_000))
    ys = np.ascontiguousarray(rng.random(200_000))
    _bench(
        "tree split scan sse (200k)",
        lambda: _scan_splits_sse(xs, ys, 1),
        lambda: _scan_splits_sse.py_func(xs, ys, 1),
        args.repeat,
    )

    codes = np.ascontiguousarray(rng.integers(0, 4, 200_000).astype(np.int64))
    _bench(
        "tree split scan gini (200k)",
        lambda: _scan_splits_gini(xs, codes, 4, 1),
        lambda: _scan_splits_gini.py_func(xs, codes, 4, 1),
        args.repeat,
    )


if __name__ == "__main__":
    main()
