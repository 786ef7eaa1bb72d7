"""Time the numba and pure-numpy kernels on the same inputs.

Usage:
    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --repeat 5 --output bench.json
"""

import argparse
import json
import time

import numpy as np

from lingames._accel import NUMBA_AVAILABLE
from lingames._kernels import (
    completion_search_numba,
    completion_search_numpy,
    power_iteration_numba,
    power_iteration_numpy,
)
from lingames.constructions import binary_game


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def completion_cases():
    rng = np.random.default_rng(0)
    yield "naive 3x3 d=32", rng.integers(0, 32, (3, 3)), 32
    yield "naive 3x4 d=64", rng.integers(0, 64, (3, 4)), 64
    b = binary_game(3, 4)
    yield "naive binary 3x4 d=128", b.array(), b.d
    yield "naive 4x4 d=23", rng.integers(0, 23, (4, 4)), 23


def power_cases():
    rng = np.random.default_rng(1)
    for n in (4, 16, 64):
        a = np.exp(2j * np.pi * rng.random((n, n)))
        yield f"power iteration gram {n}x{n}", a.conj().T @ a


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--output", help="write results as JSON")
    args = ap.parse_args()

    if not NUMBA_AVAILABLE:
        print("numba is not installed; only the numpy flavour can be timed")

    rows = []
    for name, k, d in completion_cases():
        t_np, a = best_of(lambda: completion_search_numpy(k, d, dense=True), args.repeat)
        row = {"case": name, "numpy_s": t_np}
        if NUMBA_AVAILABLE:
            completion_search_numba(k, d, dense=True)  # compile
            t_nb, b = best_of(lambda: completion_search_numba(k, d, dense=True), args.repeat)
            assert a[0] == b[0] and np.array_equal(a[1], b[1])
            row["numba_s"] = t_nb
        rows.append(row)

    for name, g in power_cases():
        v0 = np.ones(g.shape[0], dtype=complex)
        t_np, a = best_of(lambda: power_iteration_numpy(g, v0, 1e-12, 10**6), args.repeat)
        row = {"case": name, "numpy_s": t_np}
        if NUMBA_AVAILABLE:
            power_iteration_numba(g, v0, 1e-12, 10**6)
            t_nb, b = best_of(lambda: power_iteration_numba(g, v0, 1e-12, 10**6), args.repeat)
            assert abs(a[0] - b[0]) < 1e-9 * max(1.0, a[0])
            row["numba_s"] = t_nb
        rows.append(row)

    print(f"{'case':<32}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for row in rows:
        nb = row.get("numba_s")
        speed = f"{row['numpy_s'] / nb:9.1f}x" if nb else "        -"
        nb_txt = f"{nb:12.5f}" if nb else f"{'-':>12}"
        print(f"{row['case']:<32}{row['numpy_s']:12.5f}{nb_txt}{speed}")

    if args.output:
        with open(args.output, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
