"""Brute-force exact solvers used as ground truth.

Nothing here touches the flow engine: fixed-role optima come from plain
include/exclude backtracking over the candidate arcs, and the unrestricted
optimum enumerates every driver subset.
"""

from __future__ import annotations

import os
from collections.abc import Sequence
from dataclasses import dataclass

from carpool.core import D, Instance, Matching, P, Role

MAX_VERTICES = 16
MAX_CROSS_ARCS = 24
MAX_SUPER_VERTICES = 12
MAX_SUPER_CHOICES = 10**7


class LimitExceeded(ValueError):
    pass


def vertex_limit() -> int:
    """The n guard for :func:`exact_optimum`; ``CARPOOL_ORACLE_LIMIT`` may only lower it."""
    raw = os.environ.get("CARPOOL_ORACLE_LIMIT")
    if raw is None:
        return MAX_VERTICES
    try:
        value = int(raw)
    except ValueError:
        return MAX_VERTICES
    return max(0, min(value, MAX_VERTICES))


@dataclass(frozen=True)
class OracleResult:
    best_weight: int
    best_matching: Matching
    explored: int


def _best_subset(inst: Instance, roles: Sequence[Role], limit: int) -> tuple[int, list[int]]:
    cross = [
        i for i, a in enumerate(inst.arcs) if roles[a.tail] is P and roles[a.head] is D
    ]
    if len(cross) > limit:
        raise LimitExceeded(f"{len(cross)} candidate arcs exceed the limit of {limit}")
    load = [0] * inst.n
    used = [False] * inst.n
    chosen: list[int] = []
    best = [0, []]

    def go(k: int, total: int) -> None:
        if k == len(cross):
            if total > best[0]:
                best[0] = total
                best[1] = list(chosen)
            return
        i = cross[k]
        a = inst.arcs[i]
        if not used[a.tail] and load[a.head] < inst.capacities[a.head]:
            used[a.tail] = True
            load[a.head] += 1
            chosen.append(i)
            go(k + 1, total + a.weight)
            chosen.pop()
            load[a.head] -= 1
            used[a.tail] = False
        go(k + 1, total)

    go(0, 0)
    return best[0], best[1]


def exact_fixed_optimum(
    inst: Instance, roles: Sequence[Role], limit: int = MAX_CROSS_ARCS
) -> Matching:
    """Optimal matching for fixed roles by exhaustive arc subset search."""
    if len(roles) != inst.n:
        raise ValueError(f"expected {inst.n} roles, got {len(roles)}")
    _, arcs = _best_subset(inst, roles, limit)
    return Matching(tuple(roles), frozenset(arcs))


def exact_optimum(inst: Instance) -> OracleResult:
    """Best matching over all 2^n driver sets.

    Ties go to the lexicographically smallest sorted driver set.
    """
    limit = vertex_limit()
    if inst.n > limit:
        raise LimitExceeded(f"n={inst.n} exceeds the oracle limit of {limit}")
    best_weight = 0
    best_key: tuple[int, ...] | None = None
    best_roles: tuple[Role, ...] = (P,) * inst.n
    best_arcs: list[int] = []
    explored = 0
    for mask in range(1 << inst.n):
        explored += 1
        roles = tuple(D if mask >> v & 1 else P for v in range(inst.n))
        weight, arcs = _best_subset(inst, roles, MAX_CROSS_ARCS)
        key = tuple(v for v in range(inst.n) if mask >> v & 1)
        if best_key is None or weight > best_weight or (weight == best_weight and key < best_key):
            best_weight, best_key, best_roles, best_arcs = weight, key, roles, arcs
    return OracleResult(best_weight, Matching(best_roles, frozenset(best_arcs)), explored)


def exact_super_optimum(inst: Instance) -> int:
    """Maximum super-matching weight by enumerating each vertex's out-arc (or none)."""
    if inst.n > MAX_SUPER_VERTICES:
        raise LimitExceeded(f"n={inst.n} exceeds the super oracle limit of {MAX_SUPER_VERTICES}")
    options: list[list[int]] = [[] for _ in range(inst.n)]
    for i, a in enumerate(inst.arcs):
        options[a.tail].append(i)
    space = 1
    for opts in options:
        space *= len(opts) + 1
    if space > MAX_SUPER_CHOICES:
        raise LimitExceeded(f"{space} out-arc combinations exceed {MAX_SUPER_CHOICES}")

    load = [0] * inst.n
    best = 0

    def go(v: int, total: int) -> None:
        nonlocal best
        if v == inst.n:
            best = max(best, total)
            return
        go(v + 1, total)
        for i in options[v]:
            a = inst.arcs[i]
            if load[a.head] < inst.capacities[a.head]:
                load[a.head] += 1
                go(v + 1, total + a.weight)
                load[a.head] -= 1

    go(0, 0)
    return best
