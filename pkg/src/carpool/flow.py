"""Maximum-weight integral flow.

The solver works on the residual network with costs equal to negated
weights. Any negative-cost cycle present at zero flow is cancelled first;
after that, successive shortest s-t paths are augmented (Dijkstra on
reduced costs with node potentials) for as long as the cheapest path has
strictly negative cost. The amount shipped is therefore not maximised,
only the weight.

Flows are those of the circulation obtained by adding an uncapacitated,
zero-weight return arc t->s: conservation holds everywhere but at s and
t, and the net amount moved from s to t is never negative.
"""

from __future__ import annotations

import heapq
from collections.abc import Sequence
from dataclasses import dataclass

CAPACITY_LIMIT = 2**63 - 1
_INF = float("inf")


class MalformedNetwork(ValueError):
    pass


@dataclass(frozen=True)
class FlowArc:
    tail: int
    head: int
    capacity: int
    weight: int


@dataclass(frozen=True)
class FlowNetwork:
    node_count: int
    source: int
    target: int
    arcs: tuple[FlowArc, ...]

    @classmethod
    def build(
        cls, node_count: int, source: int, target: int, arcs: Sequence[tuple[int, int, int, int]]
    ) -> FlowNetwork:
        return cls(node_count, source, target, tuple(FlowArc(*a) for a in arcs))


@dataclass(frozen=True)
class CapacityViolation:
    arc: int
    value: int
    capacity: int


@dataclass(frozen=True)
class ConservationViolation:
    node: int
    inflow: int
    outflow: int


def _check(net: FlowNetwork) -> None:
    if net.source == net.target:
        raise MalformedNetwork("source and target coincide")
    for v in (net.source, net.target):
        if not 0 <= v < net.node_count:
            raise MalformedNetwork(f"terminal {v} outside [0, {net.node_count})")
    for i, a in enumerate(net.arcs):
        if not (0 <= a.tail < net.node_count and 0 <= a.head < net.node_count):
            raise MalformedNetwork(f"arc {i} has an endpoint outside the network")
        if not isinstance(a.capacity, int) or a.capacity < 0:
            raise MalformedNetwork(f"arc {i} capacity {a.capacity!r} is not a non-negative integer")
        if a.capacity > CAPACITY_LIMIT:
            raise MalformedNetwork(f"arc {i} capacity {a.capacity} overflows 64 bits")


class _Residual:
    """Paired forward/backward residual edges; edge ``2i`` is network arc ``i``."""

    def __init__(self, net: FlowNetwork):
        self.n = net.node_count
        self.head: list[int] = []
        self.cost: list[int] = []
        self.cap: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(self.n)]
        for a in net.arcs:
            self._add(a.tail, a.head, a.capacity, -a.weight)
            self._add(a.head, a.tail, 0, a.weight)

    def _add(self, u: int, v: int, cap: int, cost: int) -> None:
        self.adj[u].append(len(self.head))
        self.head.append(v)
        self.cost.append(cost)
        self.cap.append(cap)

    def tail(self, e: int) -> int:
        return self.head[e ^ 1]

    def push(self, e: int, amount: int) -> None:
        self.cap[e] -= amount
        self.cap[e ^ 1] += amount

    def bellman_ford(self) -> tuple[list[int], list[int], int | None]:
        """Distances from a virtual root joined to every node at cost 0.

        Returns (dist, pred_edge, node_on_negative_cycle_or_None).
        """
        dist = [0] * self.n
        pred = [-1] * self.n
        last = None
        for _ in range(self.n):
            last = None
            for u in range(self.n):
                du = dist[u]
                for e in self.adj[u]:
                    if self.cap[e] > 0 and du + self.cost[e] < dist[self.head[e]]:
                        v = self.head[e]
                        dist[v] = du + self.cost[e]
                        pred[v] = e
                        last = v
            if last is None:
                return dist, pred, None
        return dist, pred, last

    def cancel_negative_cycles(self) -> None:
        while True:
            _, pred, x = self.bellman_ford()
            if x is None:
                return
            for _ in range(self.n):
                x = self.tail(pred[x])
            cycle = []
            v = x
            while True:
                e = pred[v]
                cycle.append(e)
                v = self.tail(e)
                if v == x:
                    break
            amount = min(self.cap[e] for e in cycle)
            for e in cycle:
                self.push(e, amount)


def max_weight_flow(net: FlowNetwork) -> list[int]:
    """Integral flow maximising ``sum(w(e) * f(e))``; one value per network arc."""
    _check(net)
    res = _Residual(net)
    res.cancel_negative_cycles()
    potential, _, _ = res.bellman_ford()
    s, t = net.source, net.target

    while True:
        dist: list[float] = [_INF] * res.n
        pred = [-1] * res.n
        dist[s] = 0
        heap = [(0, s)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for e in res.adj[u]:
                if res.cap[e] <= 0:
                    continue
                v = res.head[e]
                nd = d + res.cost[e] + potential[u] - potential[v]
                if nd < dist[v]:
                    dist[v] = nd
                    pred[v] = e
                    heapq.heappush(heap, (nd, v))
        if dist[t] == _INF:
            break
        path_cost = dist[t] - potential[s] + potential[t]
        if path_cost >= 0:
            break

        far = max(d for d in dist if d != _INF)
        for v in range(res.n):
            potential[v] += int(dist[v]) if dist[v] != _INF else int(far)

        path = []
        v = t
        while v != s:
            e = pred[v]
            path.append(e)
            v = res.tail(e)
        amount = min(res.cap[e] for e in path)
        for e in path:
            res.push(e, amount)

    return [res.cap[2 * i + 1] for i in range(len(net.arcs))]


def flow_weight(net: FlowNetwork, flow: Sequence[int]) -> int:
    return sum(a.weight * f for a, f in zip(net.arcs, flow))


def validate_flow(
    net: FlowNetwork, flow: Sequence[int]
) -> list[CapacityViolation | ConservationViolation]:
    if len(flow) != len(net.arcs):
        raise ValueError(f"flow has {len(flow)} values for {len(net.arcs)} arcs")
    out: list[CapacityViolation | ConservationViolation] = []
    inflow = [0] * net.node_count
    outflow = [0] * net.node_count
    for i, (a, f) in enumerate(zip(net.arcs, flow)):
        if f < 0 or f > a.capacity:
            out.append(CapacityViolation(i, f, a.capacity))
        outflow[a.tail] += f
        inflow[a.head] += f
    for v in range(net.node_count):
        if v not in (net.source, net.target) and inflow[v] != outflow[v]:
            out.append(ConservationViolation(v, inflow[v], outflow[v]))
    return out
