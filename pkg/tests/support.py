"""Shared test helpers: fixtures, random instances and independent checkers."""

from __future__ import annotations

import itertools
import random
from importlib import resources

from carpool.core import D, Instance, P, classify, new_instance
from carpool.flow import FlowNetwork
from carpool.io import parse_instance


def fixture_text(name: str) -> str:
    return resources.files("carpool").joinpath("fixtures", name).read_text(encoding="utf-8")


def load_fixture(name: str) -> Instance:
    return parse_instance(fixture_text(name))


def arc_id(inst: Instance, tail_label: int, head_label: int) -> int:
    idx = inst.label_index()
    return inst.arc_index()[(idx[tail_label], idx[head_label])]


def arc_labels(inst: Instance, arcs) -> set[tuple[int, int]]:
    lab = inst.labels
    return {(lab[inst.arcs[i].tail], lab[inst.arcs[i].head]) for i in arcs}


def ids(inst: Instance, labels) -> set[int]:
    idx = inst.label_index()
    return {idx[x] for x in labels}


def random_instance(
    rng: random.Random,
    max_n: int = 8,
    max_arcs: int = 14,
    max_capacity: int = 3,
    weights: tuple[int, int] = (0, 9),
    unweighted: bool = False,
) -> Instance:
    n = rng.randint(1, max_n)
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    m = rng.randint(0, min(max_arcs, len(pairs)))
    arcs = [
        (u, v, 1 if unweighted else rng.randint(*weights)) for u, v in rng.sample(pairs, m)
    ]
    return new_instance(n, [rng.randint(0, max_capacity) for _ in range(n)], arcs)


def random_roles(rng: random.Random, n: int):
    return tuple(D if rng.random() < 0.5 else P for _ in range(n))


def random_network(rng: random.Random, max_arcs: int = 8, max_capacity: int = 2) -> FlowNetwork:
    """Small general network: cycles, arcs into s and out of t, negative weights."""
    k = rng.randint(2, 5)
    arcs = []
    for _ in range(rng.randint(0, max_arcs)):
        u, v = rng.sample(range(k), 2)
        arcs.append((u, v, rng.randint(0, max_capacity), rng.randint(-3, 5)))
    return FlowNetwork.build(k, 0, 1, arcs)


def brute_force_flow(net: FlowNetwork) -> int:
    """Best weight over every integral flow with non-negative net s->t value."""
    best = None
    ranges = [range(a.capacity + 1) for a in net.arcs]
    for values in itertools.product(*ranges):
        bal = [0] * net.node_count
        for a, f in zip(net.arcs, values):
            bal[a.tail] -= f
            bal[a.head] += f
        if any(bal[v] for v in range(net.node_count) if v not in (net.source, net.target)):
            continue
        if bal[net.target] < 0:
            continue
        w = sum(a.weight * f for a, f in zip(net.arcs, values))
        best = w if best is None else max(best, w)
    return best


def has_improving_residual_cycle(net: FlowNetwork, flow) -> bool:
    """Bellman-Ford on the residual graph with an uncapacitated t->s return arc.

    A negative cycle (cost = -weight) exists exactly when the flow is not of
    maximum weight: it covers both improving cycles and improving s-t paths.
    """
    edges = []
    for a, f in zip(net.arcs, flow):
        if f < a.capacity:
            edges.append((a.tail, a.head, -a.weight))
        if f > 0:
            edges.append((a.head, a.tail, a.weight))
    value = sum(f for a, f in zip(net.arcs, flow) if a.tail == net.source) - sum(
        f for a, f in zip(net.arcs, flow) if a.head == net.source
    )
    edges.append((net.target, net.source, 0))
    if value > 0:
        edges.append((net.source, net.target, 0))
    dist = [0] * net.node_count
    for _ in range(net.node_count):
        changed = False
        for u, v, c in edges:
            if dist[u] + c < dist[v]:
                dist[v] = dist[u] + c
                changed = True
        if not changed:
            return False
    return True


def feasible_by_counting(inst: Instance, roles, arcs) -> bool:
    """Independent restatement of the three matching constraints."""
    for i in arcs:
        a = inst.arcs[i]
        if roles[a.tail] is not P or roles[a.head] is not D:
            return False
    for v in range(inst.n):
        outgoing = sum(1 for i in arcs if inst.arcs[i].tail == v)
        incoming = sum(1 for i in arcs if inst.arcs[i].head == v)
        if roles[v] is D and incoming > inst.capacities[v]:
            return False
        if roles[v] is P and outgoing > 1:
            return False
    return True


def structural_violations(inst: Instance, m) -> list[str]:
    """Local-optimum invariants (a)-(c) checked against the raw arc set."""
    rs = classify(inst, m)
    out = []
    for a in inst.arcs:
        if a.tail in rs.free and a.head in rs.free and inst.capacities[a.head] >= 1:
            out.append(f"(a) free arc {a.tail}->{a.head}")
        if a.tail in rs.free and a.head in rs.drivers - rs.saturated:
            out.append(f"(b) free {a.tail} -> unsaturated driver {a.head}")
    for i in m.arcs:
        p = inst.arcs[i].tail
        free_in = sum(1 for a in inst.arcs if a.head == p and a.tail in rs.free)
        if min(free_in, inst.capacities[p]) > 1:
            out.append(f"(c) passenger {p} has {free_in} free in-neighbours")
    return out
