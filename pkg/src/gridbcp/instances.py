"""Seeded instance families for audits: a fixed number of heavy nodes, or one dominant node."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bcp_approx import dominant_node, heavy_nodes
from .grid import GridGraph

DOMINANT = "dominant"


@dataclass(frozen=True)
class Family:
    """``heavy`` is 0..4 for an exact heavy-node count, or ``DOMINANT``."""

    m: int
    n: int
    heavy: object
    light_max: int = 9


# heavy weights are drawn from [lo * L, hi * L] where L is the light total
_RANGES = {1: (0.3, 0.95), 2: (0.4, 1.5), 3: (0.55, 2.0), 4: (1.05, 1.3), DOMINANT: (1.0, 3.0)}


def _fits(g: GridGraph, heavy) -> bool:
    if heavy == DOMINANT:
        return dominant_node(g) is not None
    return dominant_node(g) is None and len(heavy_nodes(g)) == heavy


def sample(family: Family, rng: np.random.Generator, max_tries: int = 1000) -> GridGraph:
    """Rejection-sample a grid of the family; the light nodes get weights 1..light_max."""
    m, n, k = family.m, family.n, family.heavy
    for _ in range(max_tries):
        w = rng.integers(1, family.light_max + 1, size=(m, n))
        count = 1 if k == DOMINANT else k
        if count:
            cells = rng.choice(m * n, size=count, replace=False)
            light = int(w.sum() - w.ravel()[cells].sum())
            lo, hi = _RANGES[k]
            vals = rng.integers(max(1, int(lo * light)), int(hi * light) + 2, size=count)
            w.ravel()[cells] = vals
        g = GridGraph(w)
        if _fits(g, k):
            return g
    raise RuntimeError(f"could not sample {family} in {max_tries} tries")


def audit_families(rows=(3, 4, 5), max_cols: int = 8) -> list[Family]:
    out = []
    for m in rows:
        for n in range(3, max_cols + 1):
            for k in (0, 1, 2, 3, 4, DOMINANT):
                out.append(Family(m, n, k))
    return out
