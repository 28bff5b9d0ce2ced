"""Exact solver for carpool matching when every vertex's role is given."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from carpool.core import D, Instance, Matching, P, Role
from carpool.flow import FlowNetwork, max_weight_flow


@dataclass(frozen=True)
class FixedReduction:
    """Flow network for a role assignment.

    Nodes: 0 is the source, 1 the target, then one node per passenger and
    one per driver. ``arc_map[k]`` is the instance arc carried by network
    arc ``k``, or ``None`` for source/target arcs.
    """

    network: FlowNetwork
    arc_map: tuple[int | None, ...]
    node_of: dict[int, int]


SOURCE = 0
TARGET = 1


def build_fixed_network(inst: Instance, roles: Sequence[Role]) -> FixedReduction:
    if len(roles) != inst.n:
        raise ValueError(f"expected {inst.n} roles, got {len(roles)}")
    node_of = {v: 2 + v for v in range(inst.n)}
    arcs: list[tuple[int, int, int, int]] = []
    arc_map: list[int | None] = []
    for v in range(inst.n):
        if roles[v] is P:
            arcs.append((SOURCE, node_of[v], 1, 0))
            arc_map.append(None)
    for i, a in enumerate(inst.arcs):
        if roles[a.tail] is P and roles[a.head] is D:
            arcs.append((node_of[a.tail], node_of[a.head], 1, a.weight))
            arc_map.append(i)
    for v in range(inst.n):
        if roles[v] is D:
            arcs.append((node_of[v], TARGET, inst.capacities[v], 0))
            arc_map.append(None)
    net = FlowNetwork.build(inst.n + 2, SOURCE, TARGET, arcs)
    return FixedReduction(net, tuple(arc_map), node_of)


def solve_fixed(inst: Instance, roles: Sequence[Role]) -> Matching:
    """Maximum-weight matching with the given passenger/driver split.

    Arcs of negative weight never carry flow in an optimum, so no pruning
    pass is needed here. Unmatched vertices keep their assigned role.
    """
    red = build_fixed_network(inst, roles)
    flow = max_weight_flow(red.network)
    chosen = frozenset(i for i, f in zip(red.arc_map, flow) if i is not None and f == 1)
    return Matching(tuple(roles), chosen)


def roles_from_drivers(n: int, drivers: Sequence[int] | frozenset[int] | set[int]) -> tuple[Role, ...]:
    ds = set(drivers)
    return tuple(D if v in ds else P for v in range(n))
