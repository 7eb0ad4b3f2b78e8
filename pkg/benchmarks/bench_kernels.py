#!/usr/bin/env python3
"""Benchmark the decision-kernel backends against each other.

Times raw batched decisions and an end-to-end Monte Carlo trial for every
importable backend (compiled extension and numpy fallback), and checks that
their decisions agree on the benchmark samples.

Usage: python benchmarks/bench_kernels.py [--samples N] [--repeats K]
"""

import argparse
import math
import time

import numpy as np

from noma_fusion._kernels import available_backends
from noma_fusion.decoder import decode_arrays
from noma_fusion.model import SystemParams
from noma_fusion.simulate import run_trial, trial_rng
import noma_fusion.simulate as simulate
import noma_fusion._kernels as kernels


def time_decide(impl, re, im, arrs, repeats):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        bits = impl.decide(re, im, *arrs)
        best = min(best, time.perf_counter() - t0)
    return bits, best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=2_000_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    params = SystemParams(0.05, 0.1, 2.0, 1.0, math.sqrt(2.0))
    theta = 0.7837
    arrs = decode_arrays(params, theta)
    rng = np.random.default_rng(0)
    scale = 2.0 * math.sqrt(params.p1 + params.p2)
    re = rng.uniform(-scale, scale, args.samples)
    im = rng.uniform(-scale, scale, args.samples)

    backends = available_backends()
    print(f"backends available: {', '.join(sorted(backends))}")
    print(f"\nbatched decide, {args.samples:,} samples (best of {args.repeats}):")
    results = {}
    for name in sorted(backends):
        bits, best = time_decide(backends[name], re, im, arrs, args.repeats)
        results[name] = bits
        print(f"  {name:>9}: {best * 1e3:8.1f} ms   {args.samples / best / 1e6:8.1f} M samples/s")

    names = sorted(results)
    if len(names) == 2:
        agree = np.mean(results[names[0]] == results[names[1]])
        print(f"  decision agreement {names[0]} vs {names[1]}: {agree:.9f}")

    print("\nend-to-end trial, 1,000,000 bits (RNG + channel + decode):")
    saved = kernels.decide
    try:
        for name in sorted(backends):
            kernels.decide = backends[name].decide
            simulate._kernels.decide = backends[name].decide
            t0 = time.perf_counter()
            rate = run_trial(params, theta, 1_000_000, trial_rng(1, 0, 0))
            dt = time.perf_counter() - t0
            print(f"  {name:>9}: {dt * 1e3:8.1f} ms   (error rate {rate:.5f})")
    finally:
        kernels.decide = saved
        simulate._kernels.decide = saved


if __name__ == "__main__":
    main()
