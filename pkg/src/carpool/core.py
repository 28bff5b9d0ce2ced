"""Problem data model: instances, carpool matchings and feasibility checks.

Weights are plain integers. The text format in :mod:`carpool.io` stores
decimal weights scaled to micro-units, but the solvers never care about the
unit, only that arithmetic is exact.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

# Keeps any sum over the arc set inside the exactly representable doubles.
WEIGHT_BOUND = 2**53


class InstanceError(ValueError):
    """Raised when instance data violates the input contract."""


class SelfLoopError(InstanceError):
    def __init__(self, arc: int, vertex: int):
        super().__init__(f"arc {arc} is a self-loop on vertex {vertex}")
        self.arc = arc
        self.vertex = vertex


class DuplicateArcError(InstanceError):
    def __init__(self, tail: int, head: int):
        super().__init__(f"duplicate arc ({tail}, {head})")
        self.tail = tail
        self.head = head


class NegativeCapacityError(InstanceError):
    def __init__(self, vertex: int, capacity: int):
        super().__init__(f"vertex {vertex} has negative capacity {capacity}")
        self.vertex = vertex
        self.capacity = capacity


class BadLengthError(InstanceError):
    pass


class WeightRangeError(InstanceError):
    pass


class Role(enum.Enum):
    PASSENGER = "P"
    DRIVER = "D"


P = Role.PASSENGER
D = Role.DRIVER


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    weight: int


@dataclass(frozen=True)
class Instance:
    """A directed graph with vertex capacities and integer arc weights.

    ``labels`` holds the external vertex names (used only for I/O); by
    default vertex ``i`` is labelled ``i``.
    """

    n: int
    capacities: tuple[int, ...]
    arcs: tuple[Arc, ...]
    labels: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(self.n)))

    @property
    def m(self) -> int:
        return len(self.arcs)

    def arc_index(self) -> dict[tuple[int, int], int]:
        return {(a.tail, a.head): i for i, a in enumerate(self.arcs)}

    def out_arcs(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for i, a in enumerate(self.arcs):
            out[a.tail].append(i)
        return out

    def label_index(self) -> dict[int, int]:
        return {label: v for v, label in enumerate(self.labels)}


def new_instance(
    n: int,
    capacities: Sequence[int],
    arcs: Iterable[tuple[int, int, int] | Arc],
    labels: Sequence[int] | None = None,
) -> Instance:
    """Validate raw data and build an :class:`Instance`.

    ``arcs`` are ``(tail, head, weight)`` triples over dense ids ``0..n-1``.
    """
    if n < 0:
        raise BadLengthError(f"negative vertex count {n}")
    caps = tuple(int(c) for c in capacities)
    if len(caps) != n:
        raise BadLengthError(f"expected {n} capacities, got {len(caps)}")
    for v, c in enumerate(caps):
        if c < 0:
            raise NegativeCapacityError(v, c)

    built: list[Arc] = []
    seen: set[tuple[int, int]] = set()
    for i, raw in enumerate(arcs):
        a = raw if isinstance(raw, Arc) else Arc(int(raw[0]), int(raw[1]), int(raw[2]))
        if not (0 <= a.tail < n and 0 <= a.head < n):
            raise BadLengthError(f"arc {i} ({a.tail}, {a.head}) has an endpoint outside [0, {n})")
        if a.tail == a.head:
            raise SelfLoopError(i, a.tail)
        if (a.tail, a.head) in seen:
            raise DuplicateArcError(a.tail, a.head)
        seen.add((a.tail, a.head))
        built.append(a)

    if built:
        bound = WEIGHT_BOUND // len(built)
        for i, a in enumerate(built):
            if abs(a.weight) >= bound:
                raise WeightRangeError(f"arc {i} weight {a.weight} exceeds +-{bound}")

    if labels is None:
        labs: tuple[int, ...] = tuple(range(n))
    else:
        labs = tuple(int(x) for x in labels)
        if len(labs) != n:
            raise BadLengthError(f"expected {n} labels, got {len(labs)}")
        if len(set(labs)) != n:
            raise InstanceError("vertex labels must be distinct")
        if any(x < 0 for x in labs):
            raise InstanceError("vertex labels must be non-negative")
    return Instance(n, caps, tuple(built), labs)


def prune_negative_arcs(inst: Instance) -> Instance:
    """Drop every arc of negative weight; vertices are unchanged."""
    return Instance(inst.n, inst.capacities, tuple(a for a in inst.arcs if a.weight >= 0), inst.labels)


def unit_weights(inst: Instance) -> Instance:
    """Same graph with every arc weight set to 1 (cardinality objective)."""
    return Instance(
        inst.n, inst.capacities, tuple(Arc(a.tail, a.head, 1) for a in inst.arcs), inst.labels
    )


@dataclass(frozen=True)
class Matching:
    """Role per vertex plus the matched arcs, as indices into ``Instance.arcs``."""

    roles: tuple[Role, ...]
    arcs: frozenset[int]

    @classmethod
    def empty(cls, n: int) -> Matching:
        return cls((P,) * n, frozenset())

    @classmethod
    def from_arcs(cls, inst: Instance, arcs: Iterable[int]) -> Matching:
        """Matching whose drivers are exactly the heads of ``arcs``."""
        chosen = frozenset(arcs)
        roles = [P] * inst.n
        for i in chosen:
            roles[inst.arcs[i].head] = D
        return cls(tuple(roles), chosen)

    @property
    def size(self) -> int:
        return len(self.arcs)

    def drivers(self) -> frozenset[int]:
        return frozenset(v for v, r in enumerate(self.roles) if r is D)


@dataclass(frozen=True)
class RoleMismatch:
    arc: int
    tail: int
    head: int

    def describe(self, inst: Instance) -> str:
        lab = inst.labels
        return f"RoleMismatch arc=({lab[self.tail]},{lab[self.head]})"


@dataclass(frozen=True)
class CapacityExceeded:
    vertex: int
    in_degree: int
    capacity: int

    def describe(self, inst: Instance) -> str:
        return (
            f"CapacityExceeded vertex={inst.labels[self.vertex]} "
            f"in_degree={self.in_degree} capacity={self.capacity}"
        )


@dataclass(frozen=True)
class OutDegreeExceeded:
    vertex: int
    out_degree: int

    def describe(self, inst: Instance) -> str:
        return f"OutDegreeExceeded vertex={inst.labels[self.vertex]} out_degree={self.out_degree}"


Violation = RoleMismatch | CapacityExceeded | OutDegreeExceeded


def degrees(inst: Instance, arcs: Iterable[int]) -> tuple[list[int], list[int]]:
    """In- and out-degree of every vertex within the given arc subset."""
    din = [0] * inst.n
    dout = [0] * inst.n
    for i in arcs:
        a = inst.arcs[i]
        dout[a.tail] += 1
        din[a.head] += 1
    return din, dout


def validate_matching(inst: Instance, m: Matching) -> list[Violation]:
    """Return every violated constraint of ``m``; an empty list means feasible.

    Raises IndexError when ``m`` does not fit the instance at all.
    """
    if len(m.roles) != inst.n:
        raise IndexError(f"matching has {len(m.roles)} roles for {inst.n} vertices")
    for i in m.arcs:
        if not 0 <= i < inst.m:
            raise IndexError(f"arc index {i} out of range [0, {inst.m})")

    out: list[Violation] = []
    for i in sorted(m.arcs):
        a = inst.arcs[i]
        if m.roles[a.tail] is not P or m.roles[a.head] is not D:
            out.append(RoleMismatch(i, a.tail, a.head))
    din, dout = degrees(inst, m.arcs)
    for v in range(inst.n):
        if m.roles[v] is D and din[v] > inst.capacities[v]:
            out.append(CapacityExceeded(v, din[v], inst.capacities[v]))
        if m.roles[v] is P and dout[v] > 1:
            out.append(OutDegreeExceeded(v, dout[v]))
    return out


def arcs_weight(inst: Instance, arcs: Iterable[int]) -> int:
    return sum(inst.arcs[i].weight for i in arcs)


def matching_weight(inst: Instance, m: Matching) -> int:
    return arcs_weight(inst, m.arcs)


@dataclass(frozen=True)
class RoleSets:
    passengers: frozenset[int]
    drivers: frozenset[int]
    saturated: frozenset[int]
    free: frozenset[int]


def classify(inst: Instance, m: Matching) -> RoleSets:
    """Split vertices by their matched degrees.

    A vertex with capacity 0 and no matched arcs is free, not a saturated
    driver: saturation is only tested on vertices that actually drive.
    """
    din, dout = degrees(inst, m.arcs)
    passengers = frozenset(v for v in range(inst.n) if dout[v] == 1)
    drivers = frozenset(v for v in range(inst.n) if din[v] > 0)
    saturated = frozenset(v for v in drivers if din[v] == inst.capacities[v])
    free = frozenset(v for v in range(inst.n) if din[v] == 0 and dout[v] == 0)
    return RoleSets(passengers, drivers, saturated, free)
