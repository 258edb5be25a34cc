"""Timing comparison of the JIT kernels against the pure-numpy fallback.

Run as a script:

    python3 benchmarks/bench_kernels.py

The dispatched kernels (numba-compiled unless SUSYCDR_DISABLE_NUMBA=1)
are timed against the ``*_py`` fallbacks on the workloads that dominate
package runtime: Laguerre recurrences over grids and the Crank-Nicolson
time loop.
"""

import time

import numpy as np

from susycdr import _kernels


def _time(fn, *args, repeat=5):
    fn(*args)  # warm-up (JIT compile on the dispatched path)
    best = np.inf
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_laguerre():
    y = np.linspace(0.0, 40.0, 200_000)
    rows = []
    for n in (2, 6, 10):
        t_fast = _time(_kernels.laguerre_values, n, 2.5, y)
        t_py = _time(_kernels.laguerre_values_py, n, 2.5, y)
        rows.append((f"laguerre n={n} (200k pts)", t_fast, t_py))
    return rows


def bench_cn():
    rng = np.random.default_rng(1234)
    nx, nt = 400, 200
    p0 = np.exp(-np.linspace(-3, 3, nx) ** 2)
    d = 0.5 + 0.1 * rng.random((nt + 1, nx))
    c = 0.3 * rng.standard_normal((nt + 1, nx))
    r = 0.01 * rng.standard_normal((nt, nx))
    bc = np.zeros(nt + 1)
    args = (p0, d, c, r, bc, bc, 1e-3, 6.0 / (nx - 1))
    t_fast = _time(_kernels.cn_evolve, *args)
    t_py = _time(_kernels.cn_evolve_py, *args)
    return [(f"cn_evolve ({nx}x{nt})", t_fast, t_py)]


def main():
    label = "numba" if _kernels.NUMBA_ENABLED else "fallback (numba disabled)"
    print(f"dispatched path: {label}")
    print(f"{'kernel':<28} {'dispatched':>12} {'pure numpy':>12} {'speedup':>9}")
    for name, t_fast, t_py in bench_laguerre() + bench_cn():
        print(f"{name:<28} {t_fast * 1e3:>10.2f}ms {t_py * 1e3:>10.2f}ms "
              f"{t_py / t_fast:>8.1f}x")


if __name__ == "__main__":
    main()
