#!/usr/bin/env python3
"""Benchmark the numpy and numba backends of the hot kernels.

Runs each kernel on a representative workload with both implementations and
prints a timing table. The numba functions are called once before timing so
compilation cost is not mixed into the numbers.

Usage::

    python3 benchmarks/bench_kernels.py [--repeats N]

Requires numba to be importable; otherwise only the numpy column is filled.
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from jpta import _kernels


def _time_best(fn, args, repeats: int) -> float:
    """Best-of-N wall time in seconds for ``fn(*args)``."""
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def _pattern_args():
    rng = np.random.default_rng(1)
    num_el = 16
    cos_angles = np.cos(np.linspace(0.02, math.pi - 0.02, 721))
    freqs = 28e9 + 120e3 * 12.0 * (np.arange(264) - 131.5)
    phases = rng.uniform(-math.pi, math.pi, num_el)
    delays = rng.integers(0, 64, num_el) * 2.5e-9
    spacing = 299_792_458.0 / 28e9 / 2.0  # half wavelength at 28 GHz
    slope_scale = 2.0 * math.pi * spacing / 299_792_458.0
    return cos_angles, freqs, phases, delays, slope_scale


def _delay_args():
    rng = np.random.default_rng(2)
    freqs = 28e9 + 120e3 * 12.0 * (np.arange(264) - 131.5)
    slopes = rng.uniform(-math.pi, math.pi, freqs.size)
    taus = np.arange(64) * 2.5e-9
    return slopes, freqs, taus, 16


def _rate_args():
    rng = np.random.default_rng(3)
    snr = np.sort(rng.uniform(0.5, 50.0, 264))[::-1].copy()
    thr_db = np.linspace(-7.5, 24.3, 15)
    thr_lin = 10.0 ** (thr_db / 10.0)
    se = np.linspace(0.1523, 7.4063, 15)
    unique_betas = np.array([1.0])
    beta_idx = np.zeros(15, dtype=np.int64)
    return snr, thr_lin, se, unique_betas, beta_idx, 4


BENCHES = [
    ("pattern_corr (721 angles x 264 freqs, 16 el)",
     _kernels.pattern_corr_numpy, _kernels.pattern_corr_jit, _pattern_args),
    ("delay_scan   (64 taus x 264 freqs, 16 el)",
     _kernels.delay_scan_numpy, _kernels.delay_scan_jit, _delay_args),
    ("rate_scan    (264 RBs x 15 MCS)",
     _kernels.rate_scan_numpy, _kernels.rate_scan_jit, _rate_args),
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=7,
                        help="timing repeats per kernel (best is reported)")
    args = parser.parse_args()

    print("active backend: %s" % _kernels.backend())
    header = "%-46s %12s %12s %9s" % ("kernel", "numpy", "numba", "speedup")
    print(header)
    print("-" * len(header))
    for name, np_fn, jit_fn, make_args in BENCHES:
        call_args = make_args()
        t_np = _time_best(np_fn, call_args, args.repeats)
        if jit_fn is None:
            print("%-46s %10.3f ms %12s %9s" % (name, t_np * 1e3, "n/a", "n/a"))
            continue
        jit_fn(*call_args)  # compile outside the timed region
        t_jit = _time_best(jit_fn, call_args, args.repeats)
        print("%-46s %10.3f ms %10.3f ms %8.1fx"
              % (name, t_np * 1e3, t_jit * 1e3, t_np / t_jit))


if __name__ == "__main__":
    main()
