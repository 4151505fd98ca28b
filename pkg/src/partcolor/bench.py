"""Timing harness: solver wall time against lattice size."""

from __future__ import annotations

import json
import math
import statistics
import time
from collections.abc import Callable, Iterable, Sequence
from dataclasses import asdict, dataclass

import numpy as np

from partcolor.core import PcpInstance, Solution
from partcolor.generate import random_instance
from partcolor.lattice import LatticeShape


@dataclass(frozen=True)
class BenchRow:
    n: int
    p: int
    q: int
    k: int
    edge_prob: float
    seed: int


def parse_suite(text: str) -> list[BenchRow]:
    """A JSON list of row objects, or one ``n p q k edge_prob seed`` row per line."""
    stripped = text.strip()
    if stripped.startswith("["):
        return [BenchRow(**row) for row in json.loads(stripped)]
    rows = []
    for line in stripped.splitlines():
        tokens = line.split()
        if not tokens or tokens[0].startswith("#"):
            continue
        n, p, q, k, prob, seed = tokens
        rows.append(BenchRow(int(n), int(p), int(q), int(k), float(prob), int(seed)))
    return rows


def time_call(fn: Callable[[], Solution], runs: int = 3) -> tuple[float, Solution]:
    """Median monotonic wall time over ``runs`` calls, plus the last result."""
    times = []
    result = None
    for _ in range(runs):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return statistics.median(times), result


def loglog_slope(sizes: Sequence[float], times: Sequence[float]) -> float | None:
    if len(set(sizes)) < 2:
        return None
    slope, _ = np.polyfit(np.log(sizes), np.log(times), 1)
    return float(slope)


def run_bench(
    rows: Iterable[BenchRow],
    solver: Callable[[PcpInstance], Solution],
    runs: int = 3,
) -> dict:
    """Run every row; a failing row is recorded and the run continues."""
    records = []
    for row in rows:
        record = asdict(row)
        try:
            inst = random_instance(row.n, row.p, row.q, row.edge_prob, row.k, row.seed)
            record["lattice_size"] = LatticeShape.from_instance(inst).size
            wall, solution = time_call(lambda: solver(inst), runs)
            record.update(verdict="yes" if solution.verdict else "no", solver=solution.solver_tag, wall_time=wall)
        except Exception as err:  # noqa: BLE001 - rows are isolated
            record["error"] = f"{type(err).__name__}: {err}"
        records.append(record)
    ok = [r for r in records if "wall_time" in r and r["wall_time"] > 0]
    slope = loglog_slope([r["lattice_size"] for r in ok], [r["wall_time"] for r in ok])
    return {"rows": records, "loglog_slope": slope, "runs_per_row": runs}


def format_table(report: dict) -> str:
    header = f"{'n':>4} {'p':>3} {'q':>3} {'k':>3} {'prob':>5} {'lattice':>10} {'verdict':>7} {'time_s':>9}"
    lines = [header]
    for r in report["rows"]:
        if "error" in r:
            tail = f"  error: {r['error']}"
            lines.append(f"{r['n']:>4} {r['p']:>3} {r['q']:>3} {r['k']:>3} {r['edge_prob']:>5}{tail}")
            continue
        lines.append(
            f"{r['n']:>4} {r['p']:>3} {r['q']:>3} {r['k']:>3} {r['edge_prob']:>5} "
            f"{r['lattice_size']:>10} {r['verdict']:>7} {r['wall_time']:>9.4f}"
        )
    slope = report["loglog_slope"]
    lines.append("log-log slope: " + ("n/a" if slope is None or math.isnan(slope) else f"{slope:.3f}"))
    return "\n".join(lines)
