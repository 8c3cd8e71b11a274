"""Time the numba kernels against their pure-numpy counterparts.

Run with ``python3 benchmarks/bench_kernels.py``.  Both variants are always
importable, so one process can compare them regardless of MORSEKIT_BACKEND.
Compilation happens in a warm-up call that is not timed.
"""
import argparse
import json
import time

import numpy as np

from morsekit import kernels
from morsekit._accel import HAVE_NUMBA


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(size):
    rng = np.random.default_rng(0)
    n = 2 ** size
    omega = 2 * np.pi * np.fft.fftfreq(n)
    scales = np.geomspace(1.0, n / 8, 128)
    y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    centers = np.arange(0, n, 4, dtype=np.int64)
    nodes, weights = np.polynomial.legendre.leggauss(24)
    ys = np.linspace(-40, 40, 4096)
    return {
        "morse_bank": ((omega, scales, 3.0, 3.0, 0.5), f"{scales.size} scales x {n} bins"),
        "wvd_lag_products": ((y, centers), f"{centers.size} centers x {n} lags"),
        "scorer_quadrature": ((ys, 4, 6.5, 64, nodes, weights), f"{ys.size} points x 64 panels"),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=13, help="log2 of the signal length")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true", help="print results as JSON")
    args = ap.parse_args()
    if not HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    results = []
    for name, (call_args, desc) in cases(args.size).items():
        fast = getattr(kernels, f"{name}_numba")
        slow = getattr(kernels, f"{name}_numpy")
        a = fast(*call_args)  # compile + warm up
        b = slow(*call_args)
        err = float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300))
        t_fast = best_of(lambda: fast(*call_args), args.repeat)
        t_slow = best_of(lambda: slow(*call_args), args.repeat)
        results.append({"kernel": name, "shape": desc, "numba_s": t_fast, "numpy_s": t_slow,
                        "speedup": t_slow / t_fast, "max_rel_diff": err})
    if args.json:
        print(json.dumps(results, indent=2))
        return
    print(f"{'kernel':<20}{'shape':<30}{'numba [ms]':>12}{'numpy [ms]':>12}{'speedup':>9}"
          f"{'max rel diff':>14}")
    for r in results:
        print(f"{r['kernel']:<20}{r['shape']:<30}{1e3 * r['numba_s']:>12.2f}"
              f"{1e3 * r['numpy_s']:>12.2f}{r['speedup']:>8.1f}x{r['max_rel_diff']:>14.1e}")


if __name__ == "__main__":
    main()
