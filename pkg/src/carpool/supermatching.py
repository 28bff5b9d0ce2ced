"""Super-matching relaxation and the best-of-three 3-approximation.

A super-matching lets every vertex drive and ride at once, so the only
constraints left are in-degree <= capacity and out-degree <= 1. Its maximum
weight bounds the carpool optimum from above and is found exactly by a flow
on a doubled bipartite network. Because out-degrees are at most one, the
arcs form a pseudoforest; breaking the single cycle of each component
leaves anti-arborescences, whose arcs split by depth parity into two
feasible carpool matchings.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from carpool.core import Instance, Matching, arcs_weight, degrees
from carpool.flow import FlowNetwork, max_weight_flow


class InternalInvariant(RuntimeError):
    pass


class CycleDetected(ValueError):
    pass


@dataclass(frozen=True)
class SuperMatching:
    arcs: frozenset[int]


def is_super_matching(inst: Instance, arcs: Iterable[int]) -> bool:
    din, dout = degrees(inst, arcs)
    return all(din[v] <= inst.capacities[v] and dout[v] <= 1 for v in range(inst.n))


def solve_super_matching(inst: Instance) -> SuperMatching:
    """Maximum-weight super-matching; negative arcs are left out up front."""
    # nodes: 0 source, 1 target, 2+v passenger copy of v, 2+n+v driver copy
    n = inst.n
    net_arcs: list[tuple[int, int, int, int]] = [(0, 2 + v, 1, 0) for v in range(n)]
    arc_map: list[int | None] = [None] * n
    for i, a in enumerate(inst.arcs):
        if a.weight < 0:
            continue
        net_arcs.append((2 + a.tail, 2 + n + a.head, 1, a.weight))
        arc_map.append(i)
    for v in range(n):
        net_arcs.append((2 + n + v, 1, inst.capacities[v], 0))
        arc_map.append(None)
    flow = max_weight_flow(FlowNetwork.build(2 * n + 2, 0, 1, net_arcs))
    return SuperMatching(frozenset(i for i, f in zip(arc_map, flow) if i is not None and f == 1))


@dataclass(frozen=True)
class Component:
    vertices: frozenset[int]
    arcs: frozenset[int]
    cycle: tuple[int, ...] | None


def _successors(inst: Instance, arcs: Iterable[int]) -> dict[int, int]:
    """Map tail -> arc index; raises if some vertex has two out-arcs."""
    succ: dict[int, int] = {}
    for i in arcs:
        t = inst.arcs[i].tail
        if t in succ:
            raise InternalInvariant(f"vertex {t} has out-degree > 1")
        succ[t] = i
    return succ


def components(inst: Instance, sm: SuperMatching) -> list[Component]:
    """Weakly connected components of the super-matching, ordered by smallest vertex.

    Each cycle is reported as an ordered arc list starting at its smallest vertex.
    """
    succ = _successors(inst, sm.arcs)
    parent = list(range(inst.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in sm.arcs:
        a = inst.arcs[i]
        ra, rb = find(a.tail), find(a.head)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    groups: dict[int, list[int]] = {}
    for v in range(inst.n):
        groups.setdefault(find(v), []).append(v)

    out = []
    for root in sorted(groups):
        verts = groups[root]
        comp_arcs = frozenset(succ[v] for v in verts if v in succ)
        out.append(Component(frozenset(verts), comp_arcs, _find_cycle(inst, succ, verts[0])))
    return out


def _find_cycle(inst: Instance, succ: dict[int, int], start: int) -> tuple[int, ...] | None:
    # With out-degree <= 1, walking forward from any vertex either stops at
    # the component's root or enters its only cycle.
    seen: dict[int, int] = {}
    v = start
    while v in succ and v not in seen:
        seen[v] = len(seen)
        v = inst.arcs[succ[v]].head
    if v not in succ:
        return None
    cyc_vertices = [v]
    u = inst.arcs[succ[v]].head
    while u != v:
        cyc_vertices.append(u)
        u = inst.arcs[succ[u]].head
    first = cyc_vertices.index(min(cyc_vertices))
    cyc_vertices = cyc_vertices[first:] + cyc_vertices[:first]
    return tuple(succ[x] for x in cyc_vertices)


def eliminate_cycle(inst: Instance, comp: Component) -> tuple[int | None, frozenset[int]]:
    """Remove the lightest cycle arc (lowest index on ties); pass acyclic components through."""
    if comp.cycle is None:
        return None, comp.arcs
    removed = min(comp.cycle, key=lambda i: (inst.arcs[i].weight, i))
    return removed, comp.arcs - {removed}


def two_color_decompose(inst: Instance, forest: Iterable[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Split an anti-arborescence forest by the depth parity of each arc's tail.

    Returns (even-tail arcs, odd-tail arcs); roots have depth 0. Tails and
    heads of either half are disjoint, so each half is a carpool matching.
    """
    forest = frozenset(forest)
    succ = _successors(inst, forest)
    depth: dict[int, int] = {}

    def depth_of(v: int) -> int:
        path = []
        on_path = set()
        while v not in depth:
            if v not in succ:
                depth[v] = 0
                break
            if v in on_path:
                raise CycleDetected(f"cycle through vertex {v}")
            path.append(v)
            on_path.add(v)
            v = inst.arcs[succ[v]].head
        d = depth[v]
        for u in reversed(path):
            d += 1
            depth[u] = d
        return depth[path[0]] if path else depth[v]

    even, odd = [], []
    for i in sorted(forest):
        (even if depth_of(inst.arcs[i].tail) % 2 == 0 else odd).append(i)
    return frozenset(even), frozenset(odd)


@dataclass(frozen=True)
class Decomposition:
    component: Component
    removed: int | None
    m1: frozenset[int]
    m2: frozenset[int]

    def candidates(self) -> list[frozenset[int]]:
        removed = frozenset() if self.removed is None else frozenset({self.removed})
        return [removed, self.m1, self.m2]

    def best(self, inst: Instance) -> frozenset[int]:
        # max() keeps the first of equally heavy candidates
        return max(self.candidates(), key=lambda s: arcs_weight(inst, s))


def decompose(inst: Instance, sm: SuperMatching) -> list[Decomposition]:
    """Cycle elimination and two-colouring for every component that has arcs."""
    out = []
    for comp in components(inst, sm):
        if not comp.arcs:
            continue
        removed, forest = eliminate_cycle(inst, comp)
        m1, m2 = two_color_decompose(inst, forest)
        out.append(Decomposition(comp, removed, m1, m2))
    return out


def matching_from_super(inst: Instance, sm: SuperMatching) -> Matching:
    """Best-of-three selection per component, unioned into one matching.

    Drivers are the heads of selected arcs; every other vertex is a passenger.
    """
    chosen: set[int] = set()
    for dec in decompose(inst, sm):
        chosen |= dec.best(inst)
    return Matching.from_arcs(inst, chosen)


def solve_approx3(inst: Instance) -> Matching:
    return matching_from_super(inst, solve_super_matching(inst))
