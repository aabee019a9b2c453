#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

The kernel module selects its implementation at import time from the
PALEYZYG_NO_NUMBA environment variable, so this script re-executes itself
once with the flag set and prints a side-by-side table.

Usage:
    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def bench_one(fn, *args, repeat=5):
    fn(*args)  # warm-up (and JIT compile on the numba path)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def run_suite(repeat):
    from paleyzyg import _kernels

    rng = np.random.default_rng(0)
    results = {"using_numba": _kernels.USING_NUMBA}

    M, F = 4096, 896
    values = rng.standard_normal(M) + 1j * rng.standard_normal(M)
    points = np.linspace(-4, 4, M)
    freqs = rng.uniform(-100, 100, F)
    results["nudft_4096x896"] = bench_one(_kernels.nudft, values, points, freqs,
                                          repeat=repeat)

    coeffs = rng.standard_normal(F) + 1j * rng.standard_normal(F)
    results["eval_trig_896x4096"] = bench_one(_kernels.eval_trig, freqs, coeffs, points,
                                              repeat=repeat)

    G = 16384
    base = rng.standard_normal(G) + 1j * rng.standard_normal(G)
    char = np.exp(2j * np.pi * np.arange(G) * 7 / G)
    phases = np.exp(2j * np.pi * np.arange(16) / 16)
    results["best_phase_pow_p8_16x16384"] = bench_one(
        _kernels.best_phase_pow, base, char, phases, 8, repeat=repeat)
    results["min_sup_phase_16x16384"] = bench_one(
        _kernels.min_sup_phase, base, char, phases, repeat=repeat)
    return results


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--emit-json", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()

    if args.emit_json:
        print(json.dumps(run_suite(args.repeat)))
        return

    here = run_suite(args.repeat)
    env = dict(os.environ)
    if here["using_numba"]:
        env["PALEYZYG_NO_NUMBA"] = "1"
    else:
        env.pop("PALEYZYG_NO_NUMBA", None)
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--repeat", str(args.repeat),
         "--emit-json"],
        capture_output=True, text=True, env=env, check=True)
    other = json.loads(out.stdout.strip().splitlines()[-1])
    numba_res, numpy_res = (here, other) if here["using_numba"] else (other, here)

    print(f"{'kernel':<32} {'numba (ms)':>12} {'numpy (ms)':>12} {'speedup':>9}")
    for key in numba_res:
        if key == "using_numba":
            continue
        a, b = numba_res[key] * 1e3, numpy_res[key] * 1e3
        print(f"{key:<32} {a:>12.3f} {b:>12.3f} {b / a:>8.2f}x")


if __name__ == "__main__":
    main()
