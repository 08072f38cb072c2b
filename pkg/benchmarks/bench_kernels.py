#!/usr/bin/env python3
"""Compare the compiled hot kernels against the NumPy fallback.

Times non-dominated sorting, crowding distance, and rmnk evaluation on a
range of population shapes, checks that both backends agree on every
workload, and prints per-kernel speedups.

Usage: python3 benchmarks/bench_kernels.py [--repeats N] [--number N]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from driftmoo._kernels import _fallback
from driftmoo.problems import ProblemSpec, random_genomes

try:
    from driftmoo._kernels import _speedups
except ImportError:  # pragma: no cover - source-only installs
    _speedups = None

FRONT_SHAPES = ((100, 4), (500, 4), (1000, 4), (500, 10))
CROWD_SHAPES = ((100, 4), (1000, 4), (5000, 10))
RMNK_BATCHES = (100, 1000, 5000)


def front_workloads(rng):
    for n, m in FRONT_SHAPES:
        values = rng.random((n, m))
        yield f"front_ranks {n:>5}x{m:<2}", (values,)


def crowding_workloads(rng):
    for n, m in CROWD_SHAPES:
        values = rng.random((n, m))
        yield f"crowding    {n:>5}x{m:<2}", (values,)


def rmnk_workloads(rng):
    instance = ProblemSpec(kind="rmnk", m=4).build()
    objectives = np.arange(instance.m, dtype=np.int64)
    for batch in RMNK_BATCHES:
        genomes = random_genomes(instance, batch, rng)
        yield (f"rmnk_eval   {batch:>5}x{instance.n:<2}",
               (instance.tables, instance.links, genomes, objectives))


def best_time(func, args, repeats: int, number: int) -> float:
    timer = timeit.Timer(lambda: func(*args))
    return min(timer.repeat(repeat=repeats, number=number)) / number


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repetitions per workload (best is kept)")
    parser.add_argument("--number", type=int, default=3,
                        help="calls per repetition")
    args = parser.parse_args()

    if _speedups is None:
        raise SystemExit("compiled extension not built; nothing to compare "
                         "(pip install -e . builds it)")

    rng = np.random.default_rng(0)
    workloads = []
    for gen in (front_workloads, crowding_workloads, rmnk_workloads):
        workloads.extend(gen(rng))

    print(f"{'workload':<22} {'numpy':>10} {'cython':>10} {'speedup':>8}")
    for label, call_args in workloads:
        kernel = label.split()[0]
        fast = getattr(_speedups, kernel)
        slow = getattr(_fallback, kernel)
        if not np.allclose(fast(*call_args), slow(*call_args), equal_nan=True):
            raise SystemExit(f"backends disagree on {label}")
        t_slow = best_time(slow, call_args, args.repeats, args.number)
        t_fast = best_time(fast, call_args, args.repeats, args.number)
        print(f"{label:<22} {t_slow * 1e3:>8.2f}ms {t_fast * 1e3:>8.2f}ms "
              f"{t_slow / t_fast:>7.1f}x")


if __name__ == "__main__":
    main()
