"""Scaling benchmark: covered instances, timed coloring, CSV records.

Timing covers the coloring computation only; verification is excluded
(the uncovered path's constraint search carries no n log n guarantee, so
the benchmark sticks to covered instances, where sorting dominates).
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

from . import kernels
from .engine import solve_detailed
from .generate import GenSpec, generate


@dataclass
class BenchRecord:
    n: int
    seconds: float
    case_path: str
    attempts: int
    kernel: str

    def csv_row(self) -> str:
        return f"{self.n},{self.seconds:.6f},{self.case_path}"


def run_bench(
    sizes,
    seed: int = 0,
    repeats: int = 1,
    kernel: str = "auto",
    mode: str = "covered",
) -> list[BenchRecord]:
    previous = kernels.ACTIVE
    active = kernels.select(kernel)
    records = []
    try:
        for n in sizes:
            bound = max(64, 4 * n)
            inst = generate(GenSpec(n=n, mode=mode, seed=seed, bound=bound))
            for _ in range(repeats):
                t0 = time.perf_counter()
                result = solve_detailed(inst, check=False)
                dt = time.perf_counter() - t0
                records.append(
                    BenchRecord(
                        n, dt, "/".join(result.case_path), result.attempts, active
                    )
                )
    finally:
        kernels.select(previous)
    return records


def doubling_ratios(records) -> list[tuple[int, float]]:
    """Median time per size, then t(2n)/t(n) per consecutive doubling."""
    by_n: dict = {}
    for r in records:
        by_n.setdefault(r.n, []).append(r.seconds)
    sizes = sorted(by_n)
    medians = {n: statistics.median(by_n[n]) for n in sizes}
    out = []
    for a, b in zip(sizes, sizes[1:]):
        if b == 2 * a and medians[a] > 0:
            out.append((b, medians[b] / medians[a]))
    return out
