#!/usr/bin/env python3
"""Benchmark the numba kernels against their pure-numpy fallbacks.

Run from the repo root:

    python benchmarks/bench_kernels.py

The numba rows appear only when the numba backend is active (default when
numba is installed; force the comparison off with SPHERE_SEARCH_BACKEND=numpy).
"""

import time

import numpy as np

from sphere_search import _kernels
from sphere_search.geometry import sample_unit_directions
from sphere_search.tour import build_inspection_tour


def timeit(fn, *args, repeats=5):
    fn(*args)  # warmup (and JIT compile)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def workloads():
    rng = np.random.default_rng(0)
    d = 8
    tour = build_inspection_tour(d)
    samples = sample_unit_directions(rng, d, 100_000)
    verts = tour.vertices

    path_verts = np.ascontiguousarray(
        np.vstack([np.zeros((1, d)), verts, verts[:1], np.zeros((1, d))]))
    normal = sample_unit_directions(rng, d, 1)[0]

    dirs = sample_unit_directions(rng, d, 100_000)
    big_verts = np.ascontiguousarray(rng.standard_normal((128, d)))

    poles = sample_unit_directions(rng, d, d)
    starts = sample_unit_directions(rng, d, 32)

    def first_hit_many(fn):
        def run(verts_, normal_):
            for rho in np.linspace(0.1, 3.0, 2000):
                fn(verts_, False, normal_, float(rho), 1e-9)
        return run

    return [
        ("sees_any 1e5 x 16, d=8",
         lambda f: f(samples, verts, 1e-9),
         _kernels.sees_any_numpy, _kernels.sees_any_numba),
        ("first_hit_scan x 2000 planes",
         lambda f: first_hit_many(f)(path_verts, normal),
         _kernels.first_hit_scan_numpy, _kernels.first_hit_scan_numba),
        ("support_max 1e5 x 128, d=8",
         lambda f: f(dirs, big_verts),
         _kernels.support_max_numpy, _kernels.support_max_numba),
        ("minimax_descent 32 starts x 500 iters",
         lambda f: f(poles, starts, 0.1, 500, 1e-12, 500, -np.inf),
         _kernels.minimax_descent_numpy, _kernels.minimax_descent_numba),
    ]


def main():
    print(f"active backend: {_kernels.BACKEND}")
    header = f"{'kernel':40s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for name, call, np_impl, nb_impl in workloads():
        t_np = timeit(lambda: call(np_impl))
        if nb_impl is None:
            print(f"{name:40s} {t_np * 1e3:9.2f}ms {'n/a':>10s} {'':>8s}")
            continue
        t_nb = timeit(lambda: call(nb_impl))
        print(f"{name:40s} {t_np * 1e3:9.2f}ms {t_nb * 1e3:9.2f}ms "
              f"{t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
