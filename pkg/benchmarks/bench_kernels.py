#!/usr/bin/env python3
"""Compare the compiled term kernels against the pure-Python fallback.

Runs each workload in two subprocesses (one per backend, so import-time
backend selection and the stratum cache start cold) and prints a table.

    python3 benchmarks/bench_kernels.py
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time


def dense_poly(space, rng, degree, terms):
    from zipchow.coeffpoly import MultiPoly
    from zipchow.rationals import QQ

    f = MultiPoly.zero(space)
    for _ in range(terms):
        expo = [0] * len(space)
        for _ in range(degree):
            expo[rng.randrange(len(space))] += 1
        f = f + MultiPoly.monomial(space, tuple(expo), QQ(rng.randrange(-9, 10)))
    return f


def bench_multiply(repeats=60):
    from zipchow.presets import build_preset

    Z = build_preset("siegel", (4,))
    rng = random.Random(20260816)
    f = dense_poly(Z.datum.space, rng, 8, 120)
    g = dense_poly(Z.datum.space, rng, 8, 120)
    t0 = time.perf_counter()
    for _ in range(repeats):
        f * g
    return time.perf_counter() - t0


def bench_cycle_classes():
    from zipchow.chowpipeline import cycle_classes
    from zipchow.presets import build_preset

    Z = build_preset("siegel", (4,))
    t0 = time.perf_counter()
    cycle_classes(Z)
    return time.perf_counter() - t0


def bench_model():
    from zipchow.chowpipeline import build_coinvariant_model
    from zipchow.presets import build_preset

    Z = build_preset("hilbert-blumenthal", (5,))
    t0 = time.perf_counter()
    build_coinvariant_model(Z, 3)
    return time.perf_counter() - t0


WORKLOADS = {
    "multiply-dense": bench_multiply,
    "cycle-classes-siegel4": bench_cycle_classes,
    "model-hb5-p3": bench_model,
}


def run_worker():
    from zipchow import kernels

    timings = {name: fn() for name, fn in WORKLOADS.items()}
    print(json.dumps({"backend": kernels.BACKEND, "timings": timings}))


def spawn(pure_python):
    env = dict(os.environ)
    if pure_python:
        env["ZIPCHOW_PURE_PYTHON"] = "1"
    else:
        env.pop("ZIPCHOW_PURE_PYTHON", None)
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--worker"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()
    if args.worker:
        run_worker()
        return

    compiled = spawn(pure_python=False)
    fallback = spawn(pure_python=True)
    if compiled["backend"] != "cython":
        print("note: compiled extension unavailable, comparing python to itself")

    width = max(len(n) for n in WORKLOADS)
    print(f"{'workload':<{width}}  {compiled['backend']:>10}  {fallback['backend']:>10}  speedup")
    for name in WORKLOADS:
        a = compiled["timings"][name]
        b = fallback["timings"][name]
        print(f"{name:<{width}}  {a:>9.3f}s  {b:>9.3f}s  {b / a:>6.2f}x")


if __name__ == "__main__":
    main()
