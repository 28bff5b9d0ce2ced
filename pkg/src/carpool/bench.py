"""Benchmark harness: run solvers over a directory of instances, optionally
against the brute-force optimum, and emit CSV rows."""

from __future__ import annotations

import csv
import io as _io
import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from carpool.core import Instance, Matching, matching_weight
from carpool.io import format_weight, parse_instance
from carpool.local_search import solve_local_search
from carpool.oracle import exact_optimum
from carpool.supermatching import solve_approx3

log = logging.getLogger(__name__)

COLUMNS = ["instance", "algorithm", "weight", "optimum", "ratio", "micros"]
BOUNDS = {"local": 2, "approx3": 3, "exact": 1}
SOLVERS = {
    "exact": lambda inst: exact_optimum(inst).best_matching,
    "local": solve_local_search,
    "approx3": solve_approx3,
}


@dataclass
class BenchRow:
    instance: str
    algorithm: str
    weight: int
    optimum: int | None
    ratio: float | None
    micros: int
    checked: bool = False

    def as_csv(self) -> list[str]:
        return [
            self.instance,
            self.algorithm,
            format_weight(self.weight),
            "" if self.optimum is None else format_weight(self.optimum),
            "" if self.ratio is None else _format_ratio(self.ratio),
            str(self.micros),
        ]


def _format_ratio(r: float) -> str:
    return "inf" if r == float("inf") else f"{r:.6f}"


def ratio(optimum: int, weight: int) -> float:
    """optimum / weight, with 0/0 read as 1."""
    if weight == 0:
        return 1.0 if optimum == 0 else float("inf")
    return float(Fraction(optimum, weight))


def uniform_weights(inst: Instance) -> bool:
    return len({a.weight for a in inst.arcs}) <= 1 and all(a.weight > 0 for a in inst.arcs)


def run_cell(name: str, inst: Instance, algorithm: str, optimum: int | None) -> BenchRow:
    start = time.perf_counter()
    m: Matching = SOLVERS[algorithm](inst)
    micros = int((time.perf_counter() - start) * 1e6)
    weight = matching_weight(inst, m)
    row = BenchRow(name, algorithm, weight, optimum, None, micros)
    if optimum is not None:
        row.ratio = ratio(optimum, weight)
        # the local search bound holds for cardinality, i.e. uniform weights only
        row.checked = algorithm != "local" or uniform_weights(inst)
    return row


def run_bench(
    directory: Path, algorithms: list[str], with_oracle: bool
) -> tuple[list[BenchRow], list[str]]:
    """Returns (rows, failures); failures name every broken ratio bound."""
    rows: list[BenchRow] = []
    failures: list[str] = []
    for path in sorted(p for p in Path(directory).iterdir() if p.is_file()):
        try:
            inst = parse_instance(path.read_text(encoding="utf-8"))
            optimum = exact_optimum(inst).best_weight if with_oracle else None
        except Exception as exc:  # per-file errors must not stop the run
            log.error("%s: %s", path.name, exc)
            continue
        for algorithm in algorithms:
            try:
                row = run_cell(path.name, inst, algorithm, optimum)
            except Exception as exc:
                log.error("%s/%s: %s", path.name, algorithm, exc)
                continue
            rows.append(row)
            if row.checked and optimum is not None and optimum > BOUNDS[algorithm] * row.weight:
                failures.append(f"{path.name} {algorithm}: ratio {_format_ratio(row.ratio)}")
    rows.sort(key=lambda r: (r.instance, r.algorithm))
    return rows, failures


def rows_to_csv(rows: list[BenchRow]) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow(row.as_csv())
    return buf.getvalue()
