"""Benchmark the compiled lattice-sum kernels against the pure-numpy
fallback on representative 2D workloads.

Run:  python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from dipcrystal import kernels
from dipcrystal.homogeneous import DEFAULT_CUTOFF, _tri_sites
from dipcrystal.kernels import reference_impl


def timeit(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = np.random.default_rng(7)
    sites = _tri_sites(DEFAULT_CUTOFF)
    qs = rng.uniform(-np.pi, np.pi, size=(512, 2))
    print(f"active backend: {kernels.BACKEND}")
    print(f"lattice sites: {len(sites)}, wavevectors: {len(qs)}\n")
    print(f"{'kernel':<10} {'active [ms]':>12} {'numpy [ms]':>12} {'speedup':>9}")
    extra = {"cos_sum": (3.0,)}
    for name in ("cos_sum", "dyn_mat", "sin_vec"):
        args = extra.get(name, ())
        active = lambda q, s, _f=getattr(kernels, name), _a=args: _f(q, s, *_a)
        fallback = lambda q, s, _f=getattr(reference_impl, name), _a=args: _f(q, s, *_a)
        # agreement check before timing
        ref = fallback(qs[:8], sites)
        got = active(qs[:8], sites)
        assert np.allclose(ref, got, rtol=1e-12, atol=1e-12), name
        t_active = timeit(active, qs, sites)
        t_ref = timeit(fallback, qs, sites)
        print(f"{name:<10} {t_active*1e3:>12.2f} {t_ref*1e3:>12.2f} "
              f"{t_ref/t_active:>8.2f}x")


if __name__ == "__main__":
    main()
