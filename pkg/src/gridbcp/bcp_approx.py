"""5/4-approximation for the balanced connected bipartition of a grid."""

from __future__ import annotations

from itertools import combinations

from .bcp_exact import exact_bcp2
from .grid import Bipartition, GridGraph, Node
from .nsp import NspResult, min_nsc
from .stnum import contract, grid_to_general, stn_bipartition


def heavy_nodes(g: GridGraph) -> list[Node]:
    """Nodes heavier than W/5, heaviest first (ties by position)."""
    W = g.total
    heavy = [v for v in g.nodes() if 5 * g.w(v) > W]
    return sorted(heavy, key=lambda v: (-g.w(v), v))


def dominant_node(g: GridGraph):
    """The heaviest node if it weighs at least W/2, else None."""
    v = min(g.nodes(), key=lambda v: (-g.w(v), v))
    return v if 2 * g.w(v) >= g.total else None


def approx_bcp2(g: GridGraph) -> Bipartition:
    """Connected bipartition with balance at least 4/5 of the optimum."""
    if g.size < 2:
        raise ValueError("a bipartition needs at least two nodes")
    if min(g.m, g.n) < 3:
        return exact_bcp2(g).bipartition
    v = dominant_node(g)
    if v is not None:
        return Bipartition.from_nodes(g, [v])
    heavy = heavy_nodes(g)
    if len(heavy) == 3:
        return three_heavy(g, heavy)
    return _stn_on_grid(g)


def _stn_on_grid(g: GridGraph) -> Bipartition:
    G = grid_to_general(g)
    res = stn_bipartition(G)
    return Bipartition.from_nodes(g, G.lift(res.part))


def lightest_heavy_pair_nsc(g: GridGraph, heavy) -> tuple[tuple[Node, Node], NspResult]:
    best = None
    for a, b in combinations(heavy, 2):
        res = min_nsc(g, a, b)
        if best is None or res.weight < best[1].weight:
            best = ((a, b), res)
    return best


def three_heavy(g: GridGraph, heavy) -> Bipartition:
    """Exactly three nodes above W/5 and none at W/2 or more."""
    heavy = [Node(*v) for v in heavy]
    W = g.total
    if len(heavy) != 3 or any(5 * g.w(v) <= W for v in heavy):
        raise ValueError("three_heavy needs exactly three nodes heavier than W/5")
    if any(2 * g.w(v) >= W for v in g.nodes()):
        raise ValueError("three_heavy assumes no node weighs W/2 or more")
    _, connector = lightest_heavy_pair_nsc(g, heavy)
    if 2 * connector.weight >= W:
        return Bipartition.from_nodes(g, connector.nodes)
    G = grid_to_general(g)
    ids = [(v.row - 1) * g.n + (v.col - 1) for v in connector.nodes]
    H = contract(G, ids)
    res = stn_bipartition(H)
    return Bipartition.from_nodes(g, H.lift(res.part))
