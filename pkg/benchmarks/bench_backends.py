#!/usr/bin/env python3
"""Benchmark the compiled (numba) backend against the pure-numpy fallback.

Each backend runs in its own subprocess so FRACCURV_BACKEND is fixed at
import time.  The numba timings exclude JIT compilation (one warmup call
per task before the clock starts).

Usage: python benchmarks/bench_backends.py [--repeats 3]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def task_pencil():
    from fraccurv import fbm_matrix, gen_eigen_spd, hadamard_power

    r = fbm_matrix(0.75, 96)
    spec = gen_eigen_spd(hadamard_power(r, 2), r)
    return float(spec.values[0])


def task_sequence():
    from fraccurv import kappa_sequence

    return kappa_sequence(1.5, 48)[-1].kappa


def task_zmatrix():
    from fraccurv import fbm_matrix, hadamard_power, inverse_times

    r = fbm_matrix(0.3, 96)
    return float(inverse_times(r, hadamard_power(r, 2)).max())


def task_cholesky():
    from fraccurv import cholesky, fbm_matrix

    return float(cholesky(fbm_matrix(0.4, 128)).sum())


TASKS = {
    "pencil-96 (eigensolve with vectors)": task_pencil,
    "kappa-sequence-48 (sweep of pencil solves)": task_sequence,
    "zmatrix-96 (cholesky + triangular solves)": task_zmatrix,
    "cholesky-128 (factorization alone)": task_cholesky,
}


def run_worker(repeats):
    import fraccurv

    out = {"backend": fraccurv.ACTIVE_BACKEND, "times": {}}
    for name, fn in TASKS.items():
        fn()  # warmup: JIT compilation on the numba path
        times = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            fn()
            times.append(time.perf_counter() - t0)
        out["times"][name] = min(times)
    print(json.dumps(out))


def run_parent(repeats):
    results = {}
    for backend in ("numba", "numpy"):
        env = dict(os.environ, FRACCURV_BACKEND=backend)
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--worker",
             "--repeats", str(repeats)],
            env=env, capture_output=True, text=True,
        )
        if proc.returncode != 0:
            sys.stderr.write(proc.stderr)
            raise SystemExit(1)
        payload = json.loads(proc.stdout.strip().splitlines()[-1])
        results[backend] = payload
        if payload["backend"] != backend:
            print(f"note: requested {backend}, ran {payload['backend']}")

    width = max(len(name) for name in TASKS)
    print(f"{'task':<{width}}  {'numba':>10}  {'numpy':>10}  {'speedup':>8}")
    print("-" * (width + 34))
    for name in TASKS:
        t_jit = results["numba"]["times"][name]
        t_np = results["numpy"]["times"][name]
        print(f"{name:<{width}}  {t_jit:>9.4f}s  {t_np:>9.4f}s  "
              f"{t_np / t_jit:>7.1f}x")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--worker", action="store_true")
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()
    if args.worker:
        run_worker(args.repeats)
    else:
        run_parent(args.repeats)


if __name__ == "__main__":
    main()
