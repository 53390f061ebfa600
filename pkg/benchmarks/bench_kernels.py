#!/usr/bin/env python
"""Benchmark the numba kernels against their numpy fallbacks.

Kernels:
    admissible_masks   subset enumeration behind the coproduct
    surjection_array   surjections {1..r} -> {1..i} behind the main expansion

Usage:
    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --letters 10 14 18 --depths 5 6 7
    python benchmarks/bench_kernels.py --output results.json
"""
from __future__ import annotations

import argparse
import json
import time

import numpy as np

from mzvren import _accel


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def warmup() -> None:
    if not _accel.NUMBA_AVAILABLE:
        return
    _accel.admissible_masks(np.array([0, 1], dtype=np.int64), use_numba=True)
    _accel.surjection_array(2, 1, use_numba=True)


def bench_admissible(letters: int, repeat: int, rng: np.random.Generator) -> dict:
    ybits = rng.integers(0, 2, size=letters).astype(np.int64)
    ybits[-1] = 1  # basis words end in y
    a = _accel.admissible_masks(ybits, use_numba=True)
    b = _accel.admissible_masks(ybits, use_numba=False)
    assert np.array_equal(a, b)
    return {
        "kernel": "admissible_masks",
        "size": letters,
        "numba_s": best_of(lambda: _accel.admissible_masks(ybits, use_numba=True), repeat),
        "numpy_s": best_of(lambda: _accel.admissible_masks(ybits, use_numba=False), repeat),
        "count": int(a.shape[0]),
    }


def bench_surjections(r: int, repeat: int) -> dict:
    numba_s = numpy_s = 0.0
    count = 0
    for i in range(1, r + 1):
        a = _accel.surjection_array(r, i, use_numba=True)
        assert np.array_equal(a, _accel.surjection_array(r, i, use_numba=False))
        count += a.shape[0]
        numba_s += best_of(lambda: _accel.surjection_array(r, i, use_numba=True), repeat)
        numpy_s += best_of(lambda: _accel.surjection_array(r, i, use_numba=False), repeat)
    return {"kernel": "surjection_array", "size": r, "numba_s": numba_s, "numpy_s": numpy_s, "count": count}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--letters", type=int, nargs="+", default=[8, 12, 16, 20])
    parser.add_argument("--depths", type=int, nargs="+", default=[4, 5, 6, 7])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--output", help="write results as JSON")
    args = parser.parse_args()

    if not _accel.NUMBA_AVAILABLE:
        parser.error("numba is not importable; nothing to compare")
    warmup()
    rng = np.random.default_rng(args.seed)
    results = [bench_admissible(n, args.repeat, rng) for n in args.letters]
    results += [bench_surjections(r, args.repeat) for r in args.depths]

    print(f"{'kernel':<18} {'size':>5} {'count':>9} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for row in results:
        speedup = row["numpy_s"] / row["numba_s"] if row["numba_s"] else float("inf")
        print(f"{row['kernel']:<18} {row['size']:>5} {row['count']:>9} "
              f"{1e3 * row['numba_s']:>10.3f} {1e3 * row['numpy_s']:>10.3f} {speedup:>7.1f}x")
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(results, fh, indent=2)


if __name__ == "__main__":
    main()
