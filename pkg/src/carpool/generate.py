"""Seeded random instances."""

from __future__ import annotations

import random
from dataclasses import dataclass

from carpool.core import Instance, new_instance
from carpool.io import SCALE


@dataclass(frozen=True)
class GenConfig:
    n: int
    m: int
    max_capacity: int = 3
    min_weight: int = 1
    max_weight: int = 10
    seed: int = 0
    unweighted: bool = False

    def check(self) -> None:
        if self.n < 0 or self.m < 0:
            raise ValueError("n and m must be non-negative")
        if self.m > self.n * (self.n - 1):
            raise ValueError(f"m={self.m} exceeds n(n-1)={self.n * (self.n - 1)}")
        if self.max_capacity < 0:
            raise ValueError("max_capacity must be non-negative")
        if self.min_weight > self.max_weight:
            raise ValueError("empty weight range")


def generate_instance(cfg: GenConfig, scale: int = SCALE) -> Instance:
    """Uniform simple digraph without self-loops.

    Capacities are uniform in [0, max_capacity]; weights are whole numbers
    uniform in [min_weight, max_weight] (all 1 when ``unweighted``),
    multiplied by ``scale``.
    """
    cfg.check()
    rng = random.Random(cfg.seed)
    caps = [rng.randint(0, cfg.max_capacity) for _ in range(cfg.n)]
    pairs = [(u, v) for u in range(cfg.n) for v in range(cfg.n) if u != v]
    chosen = rng.sample(pairs, cfg.m)
    arcs = []
    for u, v in chosen:
        w = 1 if cfg.unweighted else rng.randint(cfg.min_weight, cfg.max_weight)
        arcs.append((u, v, w * scale))
    return new_instance(cfg.n, caps, arcs)
