"""Local search for the unweighted (maximum cardinality) problem.

Starting from the empty matching, repeatedly try promoting one vertex that
currently has no passengers to driver, keep the current drivers, and
re-solve the fixed-role problem. The first strictly larger matching is
accepted and the sweep restarts. Returns a 2-approximation.

Each sweep first re-solves with the current drivers alone, so a vertex
left without passengers by an accepted step can become a passenger again.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from carpool.core import Instance, Matching, classify, unit_weights
from carpool.fixed import roles_from_drivers, solve_fixed


@dataclass(frozen=True)
class SearchResult:
    matching: Matching
    improvements: int
    fixed_calls: int


def _check_order(n: int, scan_order: Sequence[int] | None) -> list[int]:
    if scan_order is None:
        return list(range(n))
    order = list(scan_order)
    if sorted(order) != list(range(n)):
        raise ValueError("scan_order must be a permutation of the vertex ids")
    return order


def _candidates(drivers: frozenset[int], order: list[int], reoptimize: bool):
    if reoptimize:
        yield drivers
    for v in order:
        if v not in drivers:
            yield drivers | {v}


def run_local_search(
    inst: Instance, scan_order: Sequence[int] | None = None, reoptimize: bool = True
) -> SearchResult:
    """``reoptimize=False`` gives the bare single-switch neighbourhood."""
    order = _check_order(inst.n, scan_order)
    unit = unit_weights(inst)
    current = Matching.empty(inst.n)
    improvements = 0
    calls = 0
    done = False
    while not done:
        done = True
        drivers = classify(unit, current).drivers
        for ds in _candidates(drivers, order, reoptimize):
            candidate = solve_fixed(unit, roles_from_drivers(inst.n, ds))
            calls += 1
            if candidate.size > current.size:
                current = candidate
                improvements += 1
                done = False
                break
    return SearchResult(current, improvements, calls)


def solve_local_search(
    inst: Instance, scan_order: Sequence[int] | None = None, reoptimize: bool = True
) -> Matching:
    """Locally optimal matching; arc weights are ignored.

    ``scan_order`` fixes the order in which candidate vertices are tried
    (ascending ids by default).
    """
    return run_local_search(inst, scan_order, reoptimize).matching


def is_local_optimum(inst: Instance, m: Matching, reoptimize: bool = True) -> bool:
    """True when no candidate driver set of the search beats ``m``."""
    unit = unit_weights(inst)
    drivers = classify(unit, m).drivers
    for ds in _candidates(drivers, list(range(inst.n)), reoptimize):
        if solve_fixed(unit, roles_from_drivers(inst.n, ds)).size > m.size:
            return False
    return True
