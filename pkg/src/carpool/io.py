"""Text instance format, JSON matching reports and DOT export.

Instance grammar (``#`` comments and blank lines are ignored anywhere)::

    p carpool <n> <m>
    v <label> <capacity>        # n lines
    a <tail> <head> <weight>    # m lines, weight is a decimal

Weights are stored as integers in micro-units (decimal value * 10**6).
"""

from __future__ import annotations

import json
from decimal import Decimal, InvalidOperation

from carpool.core import (
    Arc,
    D,
    Instance,
    InstanceError,
    Matching,
    P,
    matching_weight,
    new_instance,
)

SCALE = 10**6
_FRACTION_DIGITS = 6


class ParseError(ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


def parse_weight(text: str) -> int:
    """Decimal string to micro-units; at most six fractional digits."""
    try:
        value = Decimal(text)
    except InvalidOperation:
        raise ValueError(f"not a decimal: {text!r}") from None
    if not value.is_finite():
        raise ValueError(f"weight must be finite: {text!r}")
    exponent = value.as_tuple().exponent
    assert isinstance(exponent, int)
    if -exponent > _FRACTION_DIGITS:
        raise ValueError(f"more than {_FRACTION_DIGITS} fractional digits: {text!r}")
    return int(value.scaleb(_FRACTION_DIGITS))


def format_weight(micro: int) -> str:
    """Micro-units to the shortest decimal string, e.g. 2500000 -> '2.5'."""
    value = (Decimal(micro) / SCALE).normalize()
    text = format(value, "f")
    return "0" if text in ("-0", "0") else text


def _parse_int(token: str, what: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line, f"{what} {token!r} is not an integer") from None


def parse_instance(text: str) -> Instance:
    header: tuple[int, int] | None = None
    labels: list[int] = []
    capacities: list[int] = []
    index: dict[int, int] = {}
    arcs: list[Arc] = []
    seen: set[tuple[int, int]] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "p":
            if header is not None:
                raise ParseError(lineno, "second problem line")
            if len(tokens) != 4 or tokens[1] != "carpool":
                raise ParseError(lineno, "expected 'p carpool <n> <m>'")
            n, m = _parse_int(tokens[2], "n", lineno), _parse_int(tokens[3], "m", lineno)
            if n < 0 or m < 0:
                raise ParseError(lineno, "negative count")
            header = (n, m)
        elif header is None:
            raise ParseError(lineno, "data before the problem line")
        elif kind == "v":
            if len(tokens) != 3:
                raise ParseError(lineno, "expected 'v <label> <capacity>'")
            if arcs:
                raise ParseError(lineno, "vertex line after arc lines")
            if len(labels) == header[0]:
                raise ParseError(lineno, f"more than {header[0]} vertex lines")
            label = _parse_int(tokens[1], "label", lineno)
            cap = _parse_int(tokens[2], "capacity", lineno)
            if label < 0:
                raise ParseError(lineno, f"negative label {label}")
            if label in index:
                raise ParseError(lineno, f"duplicate label {label}")
            if cap < 0:
                raise ParseError(lineno, f"negative capacity {cap}")
            index[label] = len(labels)
            labels.append(label)
            capacities.append(cap)
        elif kind == "a":
            if len(tokens) != 4:
                raise ParseError(lineno, "expected 'a <tail> <head> <weight>'")
            if len(labels) != header[0]:
                raise ParseError(lineno, f"arc line before all {header[0]} vertices were declared")
            if len(arcs) == header[1]:
                raise ParseError(lineno, f"more than {header[1]} arc lines")
            ends = []
            for token in tokens[1:3]:
                label = _parse_int(token, "label", lineno)
                if label not in index:
                    raise ParseError(lineno, f"unknown label {label}")
                ends.append(index[label])
            tail, head = ends
            if tail == head:
                raise ParseError(lineno, f"self-loop on {tokens[1]}")
            if (tail, head) in seen:
                raise ParseError(lineno, f"duplicate arc {tokens[1]} {tokens[2]}")
            try:
                weight = parse_weight(tokens[3])
            except ValueError as exc:
                raise ParseError(lineno, str(exc)) from None
            seen.add((tail, head))
            arcs.append(Arc(tail, head, weight))
        else:
            raise ParseError(lineno, f"unknown line type {kind!r}")

    if header is None:
        raise ParseError(0, "missing problem line")
    if len(labels) != header[0]:
        raise ParseError(0, f"expected {header[0]} vertex lines, got {len(labels)}")
    if len(arcs) != header[1]:
        raise ParseError(0, f"expected {header[1]} arc lines, got {len(arcs)}")
    try:
        return new_instance(header[0], capacities, arcs, labels)
    except InstanceError as exc:
        raise ParseError(0, str(exc)) from None


def write_instance(inst: Instance) -> str:
    """Canonical text: vertices in id order, arcs in stored order."""
    lab = inst.labels
    lines = [f"p carpool {inst.n} {inst.m}"]
    lines += [f"v {lab[v]} {inst.capacities[v]}" for v in range(inst.n)]
    lines += [f"a {lab[a.tail]} {lab[a.head]} {format_weight(a.weight)}" for a in inst.arcs]
    return "\n".join(lines) + "\n"


def matching_report(inst: Instance, m: Matching) -> dict:
    lab = inst.labels
    return {
        "drivers": sorted(lab[v] for v in range(inst.n) if m.roles[v] is D),
        "passengers": sorted(lab[v] for v in range(inst.n) if m.roles[v] is P),
        "arcs": sorted([lab[inst.arcs[i].tail], lab[inst.arcs[i].head]] for i in m.arcs),
        "weight": format_weight(matching_weight(inst, m)),
    }


def matching_to_json(inst: Instance, m: Matching) -> str:
    return json.dumps(matching_report(inst, m), separators=(",", ":"))


class ReportError(ValueError):
    pass


def parse_matching_json(inst: Instance, text: str) -> tuple[Matching, str | None]:
    """Rebuild a Matching from a report; also returns the report's weight string."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ReportError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ReportError("report must be a JSON object")
    index = inst.label_index()
    roles = [None] * inst.n
    for key, role in (("drivers", D), ("passengers", P)):
        for label in data.get(key, []):
            if label not in index:
                raise ReportError(f"unknown vertex label {label!r} in {key}")
            if roles[index[label]] is not None:
                raise ReportError(f"vertex {label} listed twice")
            roles[index[label]] = role
    missing = [inst.labels[v] for v, r in enumerate(roles) if r is None]
    if missing:
        raise ReportError(f"vertices without a role: {missing}")
    arc_of = inst.arc_index()
    arcs = set()
    for pair in data.get("arcs", []):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ReportError(f"bad arc entry {pair!r}")
        t, h = pair
        if t not in index or h not in index or (index[t], index[h]) not in arc_of:
            raise ReportError(f"arc {pair} is not in the instance")
        arcs.add(arc_of[(index[t], index[h])])
    weight = data.get("weight")
    return Matching(tuple(roles), frozenset(arcs)), None if weight is None else str(weight)


def to_dot(inst: Instance, m: Matching | None = None) -> str:
    """Graphviz digraph; drivers are red and dashed, matched arcs bold."""
    lab = inst.labels
    lines = ["digraph carpool {"]
    for v in range(inst.n):
        attrs = [f'label="{lab[v]} (c={inst.capacities[v]})"']
        if m is not None and m.roles[v] is D:
            attrs.append('color=red style=dashed')
        lines.append(f"  v{lab[v]} [{' '.join(attrs)}];")
    for i, a in enumerate(inst.arcs):
        attrs = [f'label="{format_weight(a.weight)}"']
        if m is not None and i in m.arcs:
            attrs.append("style=bold")
        lines.append(f"  v{lab[a.tail]} -> v{lab[a.head]} [{' '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
