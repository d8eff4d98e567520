"""Benchmark the covering-system enumeration backends against each other.

Runs the numba DFS kernel and the pure-numpy scan on the same moduli
multisets, checks that they produce identical cover lists, and reports
the best wall time of each. Usage:

    python3 benchmarks/bench_cover_enumeration.py
    python3 benchmarks/bench_cover_enumeration.py --moduli 3,4,4,6,6 --repeat 5
"""

import argparse
import math
import time

import numpy as np

from sierpinski._cover_kernels import available_backends, enumerate_cover_tuples

DEFAULT_CASES = (
    "3,4,6,6,8,8",
    "3,4,4,6,6,8,8",
    "2,3,4,5,6,8,10,12",
)


def parse_moduli(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(",") if part.strip())


def bench_one(moduli: tuple[int, ...], repeat: int) -> None:
    space = math.prod(moduli)
    print(f"moduli {','.join(map(str, moduli))}  (assignment space {space})")
    results = {}
    for backend in available_backends():
        # one untimed call first so the numba path pays compilation up front
        rows = enumerate_cover_tuples(moduli, backend=backend)
        best = min(
            timed(lambda: enumerate_cover_tuples(moduli, backend=backend))
            for _ in range(repeat)
        )
        results[backend] = rows
        print(f"  {backend:>5}: {best * 1000:9.2f} ms   ({rows.shape[0]} covers)")
    if len(results) == 2:
        assert np.array_equal(results["numba"], results["numpy"]), "backends disagree"
        print("  backends agree")


def timed(fn) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--moduli",
        action="append",
        help="comma-separated multiset; may repeat (default: three stock cases)",
    )
    parser.add_argument("--repeat", type=int, default=3, help="timed runs per backend")
    args = parser.parse_args()
    cases = args.moduli or list(DEFAULT_CASES)
    print(f"backends: {', '.join(available_backends())}")
    for case in cases:
        bench_one(parse_moduli(case), max(1, args.repeat))


if __name__ == "__main__":
    main()
