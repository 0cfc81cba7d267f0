"""Compare the pure-Python and compiled simulation kernels.

Runs the same seeded configurations on every available kernel, reports
wall-clock time per run and the speedup, and cross-checks that both
kernels produced identical endpoint metrics.

Usage:  python3 benchmarks/bench_backends.py [--iterations N] [--repeats K]
"""

from __future__ import annotations

import argparse
import time

from kleenesim.backend import available_kernels
from kleenesim.consensus import BOOLEAN_STOCHASTIC, THREE_VALUED
from kleenesim.engine import (
    INIT_BOOLEAN,
    INIT_THREE_VALUED,
    PAYOFF_PROPORTIONATE,
    UNIFORM_RANDOM,
    RunConfig,
    run,
)


def cases(iterations: int) -> list[tuple[str, RunConfig]]:
    common = dict(population_size=100, iterations=iterations, seed=97, record_every=10_000)
    return [
        (
            "three-valued / uniform, n=5",
            RunConfig(n=5, gamma=0.6, operator=THREE_VALUED, selection=UNIFORM_RANDOM,
                      init=INIT_THREE_VALUED, **common),
        ),
        (
            "three-valued / payoff, n=5",
            RunConfig(n=5, gamma=0.6, operator=THREE_VALUED, selection=PAYOFF_PROPORTIONATE,
                      init=INIT_THREE_VALUED, **common),
        ),
        (
            "boolean / payoff, n=64",
            RunConfig(n=64, gamma=0.8, operator=BOOLEAN_STOCHASTIC,
                      selection=PAYOFF_PROPORTIONATE, init=INIT_BOOLEAN, **common),
        ),
    ]


def best_time(config: RunConfig, kernel: str, repeats: int) -> tuple[float, tuple]:
    best = float("inf")
    endpoint = None
    for _ in range(repeats):
        started = time.perf_counter()
        metrics = run(config, kernel=kernel)
        elapsed = time.perf_counter() - started
        best = min(best, elapsed)
        endpoint = metrics.endpoint
    return best, endpoint


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--iterations", type=int, default=100_000)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    kernels = available_kernels()
    print(f"kernels: {', '.join(kernels)}   iterations per run: {args.iterations}\n")
    header = f"{'case':34s}" + "".join(f"{k:>14s}" for k in kernels)
    if len(kernels) > 1:
        header += f"{'speedup':>10s}"
    print(header)
    print("-" * len(header))

    for name, config in cases(args.iterations):
        times = {}
        endpoints = {}
        for kernel in kernels:
            times[kernel], endpoints[kernel] = best_time(config, kernel, args.repeats)
        row = f"{name:34s}" + "".join(f"{times[k] * 1e3:>12.1f}ms" for k in kernels)
        if len(kernels) > 1:
            row += f"{times['pure'] / times['compiled']:>9.1f}x"
        print(row)
        if len(set(endpoints.values())) != 1:
            print(f"   !! kernels disagree on the endpoint for {name}: {endpoints}")
            return 1

    if len(kernels) > 1:
        print("\nendpoints identical across kernels for every case")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
