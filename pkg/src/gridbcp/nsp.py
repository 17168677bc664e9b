"""Minimum non-separating st-paths and st-connectors on grid graphs.

A path is non-separating when the grid minus its nodes is non-empty and
connected. Outside the 2-cut case (``s`` and ``t`` are the two neighbours
of a corner) the minimum connector is a non-separating induced path with at
most one boundary subpath, which is what the case analysis below searches.
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .grid import GridGraph, GridPath, Node, adjacent, remainder_connected, two_cut_corner
from .pathcost import (
    INF,
    BoundaryIndexing,
    RmqTable,
    arc_nodes,
    boundary_arc_weights,
    boundary_indexing,
    interior_distances,
)

PATH = "path"
WHOLE_MINUS_CORNER = "whole-minus-corner"


@dataclass(frozen=True)
class NspResult:
    kind: str
    weight: int
    path: Optional[GridPath] = None
    node_set: Optional[frozenset] = None

    @property
    def nodes(self) -> frozenset:
        if self.kind == PATH:
            return frozenset(self.path.nodes)
        return self.node_set


_BOUNDARY: "weakref.WeakKeyDictionary[GridGraph, BoundaryIndexing]" = weakref.WeakKeyDictionary()


def _indexing(g: GridGraph) -> BoundaryIndexing:
    bi = _BOUNDARY.get(g)
    if bi is None:
        bi = _BOUNDARY[g] = boundary_indexing(g)
    return bi


def _check_query(g: GridGraph, s: Node, t: Node) -> None:
    for v in (s, t):
        if not g.contains(v):
            raise ValueError(f"node {tuple(v)} outside the {g.m}x{g.n} grid")
    if s == t:
        raise ValueError("source and target must differ")
    if min(g.m, g.n) < 3:
        raise ValueError("grid has fewer than 3 rows or columns; use oracle for degenerate grids")


def _path_result(g: GridGraph, nodes) -> NspResult:
    path = GridPath.from_nodes(g, nodes)
    return NspResult(PATH, path.weight, path=path)


def min_nonseparating_path(g: GridGraph, s: Sequence[int], t: Sequence[int]) -> NspResult:
    """Minimum-weight st-path whose removal leaves the grid connected."""
    s, t = Node(*s), Node(*t)
    _check_query(g, s, t)
    x = two_cut_corner(g, s, t)
    if x is not None:
        return two_cut_nsp(g, s, t, x)
    sb, tb = g.is_boundary(s), g.is_boundary(t)
    if sb and tb:
        nodes = _boundary_pair(g, s, t)
    elif sb:
        nodes = _boundary_interior(g, s, t)
    elif tb:
        nodes = _boundary_interior(g, t, s)[::-1]
    else:
        nodes = _interior_pair(g, s, t)
    return _path_result(g, nodes)


def _boundary_pair(g: GridGraph, s: Node, t: Node) -> list[Node]:
    bi = _indexing(g)
    i, j = bi.index[s], bi.index[t]
    cw, ccw = boundary_arc_weights(bi, i, j)
    return arc_nodes(bi, i, j, clockwise=cw <= ccw)


def boundary_distances(bi: BoundaryIndexing, a: int) -> tuple[list[int], list[bool]]:
    """Cheapest boundary-arc weight from position ``a`` to every position, and its direction."""
    size, prefix, total = bi.size, bi.prefix, bi.total
    dist, clockwise = [0] * size, [True] * size
    wa = bi.weights[a]
    for k in range(size):
        if k == a:
            dist[k] = wa
            continue
        kk = k if k > a else k + size
        cw = prefix[kk + 1] - prefix[a]
        ccw = total - cw + wa + bi.weights[k]
        dist[k], clockwise[k] = (cw, True) if cw <= ccw else (ccw, False)
    return dist, clockwise


def _boundary_interior(g: GridGraph, s: Node, t: Node) -> list[Node]:
    """``s`` on the boundary, ``t`` interior: a boundary arc followed by an interior path."""
    bi = _indexing(g)
    a = bi.index[s]
    dt = interior_distances(g, t)
    d_b, clockwise = boundary_distances(bi, a)
    best, best_k = INF, -1
    for k, v in enumerate(bi.order):
        d_i = dt.dist[v.row - 1, v.col - 1]
        if not math.isfinite(d_i):
            continue
        val = d_b[k] + int(d_i) - bi.weights[k]
        if val < best:
            best, best_k = val, k
    if best_k < 0:
        raise RuntimeError("no boundary node reaches the interior target")
    head = arc_nodes(bi, a, best_k, clockwise[best_k])
    tail = dt.path_to(bi.order[best_k])[::-1]
    return head + tail[1:]


def right_indices(bi: BoundaryIndexing) -> list[int]:
    """For each start ``i``, the largest ``j`` in ``[i+1, i+|B|-1]`` whose cheapest arc is clockwise.

    Indices live in the doubled sequence. The clockwise condition is
    ``2 * inner(i, j) <= W_B - w(i) - w(j)``; it is monotone in ``j`` and
    ``right`` is nondecreasing in ``i``, so one forward pointer suffices.
    """
    size, total, w = bi.size, bi.total, bi.weights
    prefix = bi.prefix

    def clockwise(i: int, j: int) -> bool:
        return 2 * (prefix[j] - prefix[i + 1]) <= total - w[i] - w[j % size]

    rights = []
    j = 1
    for i in range(size):
        j = max(j, i + 1)
        while j + 1 <= i + size - 1 and clockwise(i, j + 1):
            j += 1
        rights.append(j)
    return rights


def _sweep_round(bi: BoundaryIndexing, head, tail):
    """Best ``head[i] + inner(i, j) + tail[j]`` over clockwise-cheapest pairs ``i < j``.

    ``head`` and ``tail`` are per-position interior distances (``inf`` allowed).
    Returns ``(value, i, j)`` with ``j`` in doubled-index form.
    """
    size, prefix = bi.size, bi.prefix
    sigma = np.array([prefix[j] + tail[j % size] for j in range(2 * size)], dtype=np.float64)
    rmq = RmqTable(sigma)
    best = (INF, -1, -1)
    for i, right in enumerate(right_indices(bi)):
        if not math.isfinite(head[i]):
            continue
        j = rmq.query(i + 1, right)
        val = head[i] - prefix[i + 1] + sigma[j]
        if val < best[0]:
            best = (val, i, j)
    return best


def _boundary_profile(bi: BoundaryIndexing, field) -> list:
    return [float(field.dist[v.row - 1, v.col - 1]) for v in bi.order]


def mixed_objective_sweep(g: GridGraph, s: Sequence[int], t: Sequence[int]):
    """Cheapest interior-boundary-interior route via the right/sigma/RMQ reduction.

    Returns ``(value, i, j, s_first)``: boundary positions entered first
    and left last along the clockwise arc, and whether ``s`` hangs off ``i``.
    ``value`` is ``inf`` when no such route exists.
    """
    bi = _indexing(g)
    ps = _boundary_profile(bi, interior_distances(g, s))
    pt = _boundary_profile(bi, interior_distances(g, t))
    v1, i1, j1 = _sweep_round(bi, ps, pt)
    v2, i2, j2 = _sweep_round(bi, pt, ps)
    if v1 <= v2:
        return _as_int(v1), i1, j1, True
    return _as_int(v2), i2, j2, False


def mixed_objective_direct(g: GridGraph, s: Sequence[int], t: Sequence[int]):
    """Evaluation over all boundary pairs ``i != j`` of
    ``d_I(s,i) + d_B(i,j) + d_I(j,t) - w(i) - w(j)``, without the sweep."""
    bi = _indexing(g)
    ps = np.array(_boundary_profile(bi, interior_distances(g, s)))
    pt = np.array(_boundary_profile(bi, interior_distances(g, t)))
    size = bi.size
    prefix = np.array(bi.prefix, dtype=np.float64)
    w = np.array(bi.weights, dtype=np.float64)
    i, j = np.meshgrid(np.arange(size), np.arange(size), indexing="ij")
    jj = np.where(j > i, j, j + size)
    cw = prefix[jj + 1] - prefix[i]
    ccw = bi.total - cw + w[i] + w[j]
    table = ps[:, None] + np.minimum(cw, ccw) + pt[None, :] - w[:, None] - w[None, :]
    np.fill_diagonal(table, INF)
    return _as_int(float(table.min()))


def _as_int(v):
    return int(v) if math.isfinite(v) else INF


def _interior_pair(g: GridGraph, s: Node, t: Node) -> list[Node]:
    bi = _indexing(g)
    ds = interior_distances(g, s)
    dt = interior_distances(g, t)
    direct = ds.distance(t)
    val, i, j, s_first = mixed_objective_sweep(g, s, t)
    # a route revisiting an interior node is beaten by a purely interior one
    if direct <= val:
        return ds.path_to(t)
    first, last = (ds, dt) if s_first else (dt, ds)
    route = (
        first.path_to(bi.node(i))
        + arc_nodes(bi, i, j % bi.size, clockwise=True)[1:]
        + last.path_to(bi.node(j))[::-1][1:]
    )
    return route if s_first else route[::-1]


def hamiltonian_st_path_minus_corner(
    m: int, n: int, corner: Sequence[int], g: Optional[GridGraph] = None
) -> GridPath:
    """Path through every node except ``corner``, between the corner's two neighbours.

    Exists iff ``m`` or ``n`` is even. Built as a snake for corner (1, 1) and
    reflected onto the requested corner. Weighted by ``g`` if given,
    otherwise by node count.
    """
    if m < 3 or n < 3:
        raise ValueError("need at least 3 rows and 3 columns")
    corner = Node(*corner)
    if corner.row not in (1, m) or corner.col not in (1, n):
        raise ValueError(f"{tuple(corner)} is not a corner of a {m}x{n} grid")
    if m % 2 == 1 and n % 2 == 1:
        raise ValueError("nonexistent (parity): both dimensions are odd")

    if n % 2 == 0:
        base = _snake_even_cols(m, n)
    else:
        base = [Node(c, r) for r, c in _snake_even_cols(n, m)]
    flip_r = corner.row == m
    flip_c = corner.col == n
    nodes = [
        Node(m + 1 - r if flip_r else r, n + 1 - c if flip_c else c) for r, c in base
    ]
    if g is not None:
        return GridPath.from_nodes(g, nodes)
    return GridPath(tuple(nodes), len(nodes))


def _snake_even_cols(m: int, n: int) -> list[Node]:
    # (1,2) .. (1,n), then columns n..2 over rows 2..m alternating, then column 1 upward
    out = [Node(1, c) for c in range(2, n + 1)]
    for k, col in enumerate(range(n, 1, -1)):
        rows = range(2, m + 1) if k % 2 == 0 else range(m, 1, -1)
        out.extend(Node(r, col) for r in rows)
    out.extend(Node(r, 1) for r in range(m, 1, -1))
    return out


def two_cut_nsp(g: GridGraph, s: Sequence[int], t: Sequence[int], x: Sequence[int]) -> NspResult:
    s, t, x = Node(*s), Node(*t), Node(*x)
    if not g.is_corner(x) or set(g.neighbors(x)) != {s, t}:
        raise ValueError(f"{tuple(s)}, {tuple(t)} are not the two neighbours of corner {tuple(x)}")
    short = GridPath.from_nodes(g, (s, x, t))
    if g.m % 2 == 1 and g.n % 2 == 1:
        return NspResult(PATH, short.weight, path=short)
    ham = hamiltonian_st_path_minus_corner(g.m, g.n, x, g)
    if ham.nodes[0] != s:
        ham = ham.reversed()
    best = short if short.weight <= ham.weight else ham
    return NspResult(PATH, best.weight, path=best)


def min_nsc(g: GridGraph, s: Sequence[int], t: Sequence[int]) -> NspResult:
    """Minimum non-separating connector: a path, or everything but a corner."""
    s, t = Node(*s), Node(*t)
    _check_query(g, s, t)
    x = two_cut_corner(g, s, t)
    if x is None:
        return min_nonseparating_path(g, s, t)
    short = GridPath.from_nodes(g, (s, x, t))
    rest = g.total - g.w(x)
    if short.weight <= rest:
        return NspResult(PATH, short.weight, path=short)
    return NspResult(
        WHOLE_MINUS_CORNER, rest, node_set=frozenset(v for v in g.nodes() if v != x)
    )


def is_induced_path(nodes: Sequence[Sequence[int]]) -> bool:
    pos = {Node(*v): k for k, v in enumerate(nodes)}
    for k, (r, c) in enumerate(nodes):
        for nb in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            other = pos.get(nb)
            if other is not None and abs(other - k) != 1:
                return False
    return True


def boundary_subpath_count(g: GridGraph, nodes: Sequence[Sequence[int]]) -> int:
    runs, inside = 0, False
    for v in nodes:
        on = g.is_boundary(v)
        if on and not inside:
            runs += 1
        inside = on
    return runs


def check_nsp_result(g: GridGraph, s, t, res: NspResult) -> list[str]:
    """Problems with a returned path or connector; empty when it is valid."""
    problems = []
    s, t = Node(*s), Node(*t)
    if res.kind == WHOLE_MINUS_CORNER:
        nodes = res.node_set
        if s not in nodes or t not in nodes:
            problems.append("connector misses an endpoint")
        if len(nodes) != g.size - 1:
            problems.append("connector is not the grid minus one node")
        if g.weight_of(nodes) != res.weight:
            problems.append("weight mismatch")
        return problems
    nodes = res.path.nodes
    if nodes[0] != s or nodes[-1] != t:
        problems.append("wrong endpoints")
    if len(set(nodes)) != len(nodes):
        problems.append("repeated node")
    if any(not adjacent(u, v) for u, v in zip(nodes, nodes[1:])):
        problems.append("non-adjacent consecutive nodes")
    if g.weight_of(nodes) != res.weight:
        problems.append("weight mismatch")
    if not remainder_connected(g, nodes):
        problems.append("separating")
    if two_cut_corner(g, s, t) is None:
        if not is_induced_path(nodes):
            problems.append("not induced")
        if boundary_subpath_count(g, nodes) > 1:
            problems.append("more than one boundary subpath")
    return problems
