"""Benchmark the compiled scan kernel against the pure-numpy fallback.

Run: python3 benchmarks/bench_kernels.py
"""

import math
import time

import numpy as np

from sphere3body import _gscan_py, kernels
from sphere3body.meridian import count_rotators_grid


def bench(fn, *args, repeat=5):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    a, nu1, nu2 = math.pi / 6, 3.0, 2.0
    xs = np.linspace(1e-6, 2 * math.pi - 1e-6, 200_000)

    backends = {"python": _gscan_py}
    if kernels.BACKEND == "cython":
        from sphere3body import _gscan

        backends["cython"] = _gscan
    else:
        print("compiled kernel unavailable; benchmarking the fallback only")

    print(f"active backend: {kernels.BACKEND}")
    print(f"\ng_array over {xs.size} samples:")
    times = {}
    for name, mod in backends.items():
        times[name] = bench(mod.g_array, xs, a, nu1, nu2)
        print(f"  {name:7s} {times[name] * 1e3:8.3f} ms")
    if len(times) == 2:
        print(f"  speedup (cython vs python): {times['python'] / times['cython']:.2f}x")
        ref = backends["python"].g_array(xs, a, nu1, nu2)
        alt = backends["cython"].g_array(xs, a, nu1, nu2)
        print(f"  max |difference|: {np.max(np.abs(ref - alt)):.3e}")

    print("\ng_scalar, 100k calls:")
    for name, mod in backends.items():
        t0 = time.perf_counter()
        for x in xs[:100_000:1]:
            mod.g_scalar(float(x), a, nu1, nu2)
        print(f"  {name:7s} {(time.perf_counter() - t0) * 1e3:8.3f} ms")

    nus = np.linspace(0.1, 10.0, 50)
    t = bench(count_rotators_grid, a, nus, nus, 400, repeat=3)
    print(f"\n50x50 count grid (400 samples/region, numpy decomposition): "
          f"{t * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
