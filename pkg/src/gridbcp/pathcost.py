"""Distance primitives: boundary arcs, interior shortest paths, range-minimum queries.

All path weights include both endpoints.
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numba import njit

from .grid import GridGraph, Node, boundary_cycle

INF = math.inf

# float64 represents every integer below this exactly
_EXACT_LIMIT = 1 << 53


@dataclass(frozen=True)
class BoundaryIndexing:
    """Clockwise boundary numbering with prefix sums over the doubled sequence.

    Positions are 0-based; position ``k + size`` denotes the same node as ``k``.
    ``prefix[k]`` is the weight of positions ``0 .. k-1`` of the doubled sequence.
    """

    order: tuple[Node, ...]
    weights: tuple[int, ...]
    prefix: tuple[int, ...]
    index: dict

    @property
    def size(self) -> int:
        return len(self.order)

    @property
    def total(self) -> int:
        return self.prefix[self.size]

    def node(self, pos: int) -> Node:
        return self.order[pos % self.size]

    def inner(self, i: int, j: int) -> int:
        """Weight strictly between positions ``i < j`` going clockwise."""
        return self.prefix[j] - self.prefix[i + 1]


def boundary_indexing(g: GridGraph) -> BoundaryIndexing:
    order = tuple(boundary_cycle(g))
    weights = tuple(g.w(v) for v in order)
    prefix = [0]
    for w in weights + weights:
        prefix.append(prefix[-1] + w)
    return BoundaryIndexing(order, weights, tuple(prefix), {v: k for k, v in enumerate(order)})


def boundary_arc_weights(bi: BoundaryIndexing, i: int, j: int) -> tuple[int, int]:
    """(clockwise, counterclockwise) weights of the two boundary arcs from ``i`` to ``j``."""
    size = bi.size
    if not (0 <= i < size and 0 <= j < size):
        raise IndexError("boundary position out of range")
    if i == j:
        raise ValueError("arc endpoints must differ")
    jj = j if j > i else j + size
    cw = bi.prefix[jj + 1] - bi.prefix[i]
    ccw = bi.total - cw + bi.weights[i] + bi.weights[j]
    return cw, ccw


def arc_nodes(bi: BoundaryIndexing, i: int, j: int, clockwise: bool = True) -> list[Node]:
    """Boundary nodes from position ``i`` to ``j`` inclusive, walking in one direction."""
    size = bi.size
    step = 1 if clockwise else -1
    out = [bi.order[i]]
    k = i
    while k != j:
        k = (k + step) % size
        out.append(bi.order[k])
    return out


@njit(cache=True)
def _heap_dijkstra(w, inner, start, start_dist):
    """Node-weighted Dijkstra on the 4-neighbour grid restricted to ``inner``.

    Binary heap with lazy deletion keyed on ``(dist, flat index)``, so ties
    settle in row-major order and predecessors are deterministic.
    """
    m, n = w.shape
    size_n = m * n
    unreached = np.iinfo(np.int64).max
    dist = np.full(size_n, unreached, np.int64)
    pred = np.full(size_n, -1, np.int64)
    done = np.zeros(size_n, np.bool_)
    hd = np.empty(4 * size_n + 1, np.int64)
    hi = np.empty(4 * size_n + 1, np.int64)
    wf = w.ravel()
    ok = inner.ravel()
    dist[start] = start_dist
    hd[0] = start_dist
    hi[0] = start
    size = 1
    while size > 0:
        d = hd[0]
        v = hi[0]
        size -= 1
        ld = hd[size]
        li = hi[size]
        k = 0
        while True:
            c = 2 * k + 1
            if c >= size:
                break
            if c + 1 < size and (hd[c + 1] < hd[c] or (hd[c + 1] == hd[c] and hi[c + 1] < hi[c])):
                c += 1
            if hd[c] < ld or (hd[c] == ld and hi[c] < li):
                hd[k] = hd[c]
                hi[k] = hi[c]
                k = c
            else:
                break
        hd[k] = ld
        hi[k] = li
        if done[v]:
            continue
        done[v] = True
        r = v // n
        col = v % n
        for side in range(4):
            if side == 0:
                if r == 0:
                    continue
                u = v - n
            elif side == 1:
                if col == n - 1:
                    continue
                u = v + 1
            elif side == 2:
                if r == m - 1:
                    continue
                u = v + n
            else:
                if col == 0:
                    continue
                u = v - 1
            if not ok[u] or done[u]:
                continue
            nd = d + wf[u]
            if nd < dist[u] or (nd == dist[u] and v < pred[u]):
                dist[u] = nd
                pred[u] = v
                k = size
                size += 1
                while k > 0:
                    p = (k - 1) // 2
                    if hd[p] > nd or (hd[p] == nd and hi[p] > u):
                        hd[k] = hd[p]
                        hi[k] = hi[p]
                        k = p
                    else:
                        break
                hd[k] = nd
                hi[k] = u
    return dist, pred


class InteriorGraph:
    """Interior mask of a grid plus the boundary-to-interior attachment."""

    def __init__(self, g: GridGraph):
        m, n = g.m, g.n
        if m < 3 or n < 3:
            raise ValueError("no interior: grid needs at least 3 rows and 3 columns")
        if g.total >= _EXACT_LIMIT:
            raise ValueError("total weight too large for exact shortest-path arithmetic")
        idx = np.arange(m * n).reshape(m, n)
        inner = np.zeros((m, n), dtype=bool)
        inner[1:-1, 1:-1] = True
        self.inner = inner

        # each non-corner boundary node hangs off exactly one interior node
        cols = np.arange(1, n - 1)
        rows = np.arange(1, m - 1)
        self.hang = np.concatenate(
            [idx[0, cols], idx[m - 1, cols], idx[rows, 0], idx[rows, n - 1]]
        )
        self.anchor = np.concatenate(
            [idx[1, cols], idx[m - 2, cols], idx[rows, 1], idx[rows, n - 2]]
        )
        self._anchor_of = dict(zip(self.hang.tolist(), self.anchor.tolist()))

    def anchor_of(self, flat: int) -> int | None:
        return self._anchor_of.get(flat)


_GRAPHS: "weakref.WeakKeyDictionary[GridGraph, InteriorGraph]" = weakref.WeakKeyDictionary()
_FIELDS: "weakref.WeakKeyDictionary[GridGraph, dict]" = weakref.WeakKeyDictionary()


def interior_graph(g: GridGraph) -> InteriorGraph:
    ig = _GRAPHS.get(g)
    if ig is None:
        ig = _GRAPHS[g] = InteriorGraph(g)
    return ig


@dataclass(frozen=True, eq=False)
class InteriorDistanceField:
    """Minimum weights of paths from ``source`` whose internal nodes are all interior.

    ``dist`` is an ``(m, n)`` float array (``inf`` where unreachable, always at
    corners for an interior source); ``pred`` holds flat predecessor indices,
    ``-1`` at the source and at unreachable nodes.
    """

    source: Node
    dist: np.ndarray
    pred: np.ndarray

    def distance(self, node: Sequence[int]):
        d = self.dist[node[0] - 1, node[1] - 1]
        return int(d) if math.isfinite(d) else INF

    def path_to(self, node: Sequence[int]) -> list[Node]:
        """Witness path ``source .. node``."""
        n = self.dist.shape[1]
        r, c = node
        if not math.isfinite(self.dist[r - 1, c - 1]):
            raise ValueError(f"{tuple(node)} is unreachable from {tuple(self.source)}")
        flat = (r - 1) * n + (c - 1)
        src = (self.source[0] - 1) * n + (self.source[1] - 1)
        out = []
        pred = self.pred.ravel()
        while flat != src:
            out.append(Node(flat // n + 1, flat % n + 1))
            flat = int(pred[flat])
            if flat < 0:
                raise RuntimeError("broken predecessor chain")
        out.append(Node(*self.source))
        return out[::-1]


def interior_distances(g: GridGraph, src: Sequence[int]) -> InteriorDistanceField:
    """Node-weighted Dijkstra over the interior, extended one step to the boundary.

    For a boundary ``src`` the search starts from its interior neighbour, so
    only the path's internal nodes are required to be interior.
    """
    src = Node(*src)
    if not g.contains(src):
        raise ValueError(f"source {tuple(src)} outside the grid")
    cache = _FIELDS.setdefault(g, {})
    hit = cache.get(src)
    if hit is not None:
        return hit

    ig = interior_graph(g)
    m, n = g.m, g.n
    flat_w = g.weights.ravel()
    flat_src = (src.row - 1) * n + (src.col - 1)
    dist = np.full(m * n, np.inf)
    pred = np.full(m * n, -1, dtype=np.intp)

    if ig.inner.ravel()[flat_src]:
        start, offset = flat_src, 0
    else:
        start = ig.anchor_of(flat_src)
        offset = int(flat_w[flat_src])
    if start is not None:
        d, p = _heap_dijkstra(g.weights, ig.inner, start, int(flat_w[start]) + offset)
        reached = ig.inner.ravel() & (p >= 0)
        reached[start] = True
        dist[reached] = d[reached]
        pred[reached] = p[reached]
        pred[start] = flat_src if start != flat_src else -1
        hang, anchor = ig.hang, ig.anchor
        dist[hang] = dist[anchor] + flat_w[hang]
        pred[hang] = np.where(np.isfinite(dist[anchor]), anchor, -1)
    dist[flat_src] = float(flat_w[flat_src])
    pred[flat_src] = -1

    dist = dist.reshape(m, n)
    pred = pred.reshape(m, n)
    dist.setflags(write=False)
    pred.setflags(write=False)
    field = InteriorDistanceField(src, dist, pred)
    if len(cache) > 4 * (m + n):
        cache.clear()
    cache[src] = field
    return field


class RmqTable:
    """Sparse table answering argmin over an inclusive index range in O(1).

    Ties resolve to the smallest index.
    """

    def __init__(self, values):
        vals = np.asarray(values)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("RMQ needs a non-empty 1-D array")
        self.values = vals
        length = vals.size
        level = np.arange(length)
        self.levels = [level]
        span = 1
        while 2 * span <= length:
            left = level[: length - 2 * span + 1]
            right = level[span : length - span + 1]
            level = np.where(vals[left] <= vals[right], left, right)
            self.levels.append(level)
            span *= 2

    def __len__(self) -> int:
        return self.values.size

    def query(self, lo: int, hi: int) -> int:
        lo, hi = int(lo), int(hi)
        if lo > hi:
            raise ValueError(f"empty range [{lo}, {hi}]")
        if lo < 0 or hi >= self.values.size:
            raise IndexError(f"range [{lo}, {hi}] out of bounds")
        k = (hi - lo + 1).bit_length() - 1
        a = self.levels[k][lo]
        b = self.levels[k][hi - (1 << k) + 1]
        return int(a if self.values[a] <= self.values[b] else b)


def rmq_build(values) -> RmqTable:
    return RmqTable(values)


def rmq_query(table: RmqTable, lo: int, hi: int) -> int:
    return table.query(lo, hi)
