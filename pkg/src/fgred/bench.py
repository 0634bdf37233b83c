"""Benchmark harness: CSV rows per run plus a fitted log-log slope.

Wall times are measured on the fast k-cycle solver over a size schedule at
density m = n^(3/2); the least-squares slope of log(wall) against log(m) is
the soft empirical check against the m^(2-2/(k+1)) target.  Weights are
deterministic per seed; wall times of course are not.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .fast import min_weight_kcycle
from .generators import gen_digraph

CSV_COLUMNS = [
    "n", "m", "k", "seed", "wall_ns", "paths_enumerated", "heavy_nodes", "weight",
]


@dataclass
class BenchResult:
    rows: list[dict]
    slope: Optional[float]

    def csv_text(self) -> str:
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow(row)
        return out.getvalue()


def density_schedule(exponents: range, density_power: float = 1.5) -> list[tuple[int, int]]:
    """(n, m) pairs with m = 2^e and n = round(m^(1/density_power))."""
    schedule = []
    for e in exponents:
        m = 1 << e
        n = max(4, round(m ** (1.0 / density_power)))
        m = min(m, n * (n - 1))
        schedule.append((n, m))
    return schedule


def run_bench(
    schedule: list[tuple[int, int]],
    k: int,
    seed: int,
    wmin: int = -8,
    wmax: int = 8,
    heavy_trials: int = 1,
    rb_trials: int = 1,
    time_budget: Optional[float] = None,
) -> BenchResult:
    """Sequential timed runs; partial rows are kept when the budget runs out.

    Single-trial phases keep the measured work at the solver's asymptotic
    profile; correctness amplification is not what a scaling run measures.
    """
    rows = []
    started = time.monotonic()
    if schedule:
        warm_n, warm_m = schedule[0]
        min_weight_kcycle(
            gen_digraph(warm_n, warm_m, wmin, wmax, seed),
            k, seed=seed, heavy_trials=heavy_trials, rb_trials=rb_trials,
        )
    for n, m in schedule:
        if time_budget is not None and time.monotonic() - started > time_budget:
            break
        g = gen_digraph(n, m, wmin, wmax, seed)
        t0 = time.perf_counter_ns()
        result, stats = min_weight_kcycle(
            g, k, seed=seed, heavy_trials=heavy_trials, rb_trials=rb_trials
        )
        wall_ns = time.perf_counter_ns() - t0
        rows.append({
            "n": n,
            "m": m,
            "k": k,
            "seed": seed,
            "wall_ns": wall_ns,
            "paths_enumerated": stats.paths_enumerated,
            "heavy_nodes": stats.heavy_node_count,
            "weight": result.weight if result.found else "",
        })
    return BenchResult(rows, fitted_slope(rows))


def fitted_slope(rows: list[dict]) -> Optional[float]:
    """Least-squares slope of log(wall_ns) vs log(m); None below 2 points."""
    pts = [(row["m"], row["wall_ns"]) for row in rows if row["wall_ns"] > 0]
    if len(pts) < 2:
        return None
    xs = np.log([m for m, _ in pts])
    ys = np.log([w for _, w in pts])
    slope, _intercept = np.polyfit(xs, ys, 1)
    return float(slope)
