"""Exhaustive ground truth for small instances.

Nothing here touches the shortest-path, sweep or DP code. Node sets are
bitmasks over flat indices ``(row-1)*n + (col-1)``; connectivity is decided
by vectorised bit-shift flood fill.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .grid import Bipartition, GridGraph, GridPath, Node

MAX_PATH_NODES = 25
MAX_SUBSET_NODES = 20
MAX_TOPOLOGY_ROWS = 6
MAX_TOPOLOGY_STEPS = 6


class OracleTooLarge(ValueError):
    pass


def _guard(g: GridGraph, limit: int) -> None:
    if g.size > limit:
        raise OracleTooLarge(f"instance too large for oracle: {g.size} nodes > {limit}")


def _shift_masks(m: int, n: int):
    full = (1 << (m * n)) - 1
    not_first = 0
    not_last = 0
    for r in range(m):
        for c in range(n):
            if c > 0:
                not_first |= 1 << (r * n + c)
            if c < n - 1:
                not_last |= 1 << (r * n + c)
    return full, not_first, not_last


def _grow(reach, n, full, not_first, not_last):
    return (
        reach
        | ((reach & not_last) << 1)
        | ((reach & not_first) >> 1)
        | ((reach << n) & full)
        | (reach >> n)
    )


@lru_cache(maxsize=8)
def connected_table(m: int, n: int) -> np.ndarray:
    """``table[mask]`` is True iff ``mask`` is a non-empty connected node set."""
    size = m * n
    if size > MAX_SUBSET_NODES:
        raise OracleTooLarge(f"instance too large for oracle: {size} nodes > {MAX_SUBSET_NODES}")
    dtype = np.uint32 if size <= 31 else np.uint64
    full, not_first, not_last = (dtype(v) for v in _shift_masks(m, n))
    masks = np.arange(1 << size, dtype=dtype)
    reach = masks & (~masks + dtype(1))
    one = dtype(1)
    nn = dtype(n)
    for _ in range(size):
        grown = (
            reach
            | ((reach & not_last) << one)
            | ((reach & not_first) >> one)
            | ((reach << nn) & full)
            | (reach >> nn)
        ) & masks
        if np.array_equal(grown, reach):
            break
        reach = grown
    table = (reach == masks) & (masks != 0)
    table.setflags(write=False)
    return table


def _is_connected(mask: int, m: int, n: int) -> bool:
    if mask == 0:
        return False
    full, not_first, not_last = _shift_masks(m, n)
    reach = mask & -mask
    while True:
        grown = _grow(reach, n, full, not_first, not_last) & mask
        if grown == reach:
            return reach == mask
        reach = grown


@lru_cache(maxsize=8)
def connected_bipartition_masks(m: int, n: int) -> np.ndarray:
    """Node sets ``A`` containing node (1,1) such that ``(A, V-A)`` is a connected bipartition."""
    table = connected_table(m, n)
    size = m * n
    full = (1 << size) - 1
    masks = np.nonzero(table)[0].astype(np.int64)
    masks = masks[(masks & 1) == 1]
    masks = masks[masks != full]
    ok = table[full ^ masks]
    out = masks[ok]
    out.setflags(write=False)
    return out


def _mask_weights(g: GridGraph, masks: np.ndarray) -> np.ndarray:
    flat = g.weights.ravel().astype(np.int64)
    total = np.zeros(masks.shape, dtype=np.int64)
    for k, w in enumerate(flat):
        total += ((masks >> k) & 1) * w
    return total


def _nodes_of(mask: int, n: int) -> list[Node]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(Node(k // n + 1, k % n + 1))
        mask >>= 1
        k += 1
    return out


def _flat(node: Sequence[int], n: int) -> int:
    return (node[0] - 1) * n + (node[1] - 1)


def brute_bcp2(g: GridGraph) -> tuple[int, Bipartition]:
    """Best balance over every connected bipartition."""
    _guard(g, MAX_SUBSET_NODES)
    if g.size < 2:
        raise ValueError("a bipartition needs at least two nodes")
    masks = connected_bipartition_masks(g.m, g.n)
    if masks.size == 0:
        raise ValueError("grid has no connected bipartition")
    wa = _mask_weights(g, masks)
    bal = np.minimum(wa, g.total - wa)
    k = int(np.argmax(bal))
    part = Bipartition.from_nodes(g, _nodes_of(int(masks[k]), g.n))
    return int(bal[k]), part


def brute_min_nsc(g: GridGraph, s: Sequence[int], t: Sequence[int]) -> tuple[int, frozenset]:
    """Lightest connected set holding ``s`` and ``t`` whose complement is non-empty and connected."""
    _guard(g, MAX_SUBSET_NODES)
    n = g.n
    bs, bt = 1 << _flat(s, n), 1 << _flat(t, n)
    full = (1 << g.size) - 1
    masks = connected_bipartition_masks(g.m, g.n)
    both = np.concatenate([masks, full ^ masks])
    hit = both[((both & bs) != 0) & ((both & bt) != 0)]
    if hit.size == 0:
        raise ValueError("no non-separating connector exists")
    wts = _mask_weights(g, hit)
    k = int(np.argmin(wts))
    return int(wts[k]), frozenset(_nodes_of(int(hit[k]), n))


@lru_cache(maxsize=64)
def _simple_paths_from(m: int, n: int, src: int) -> dict:
    """target -> {node mask: one path (flat indices) with that node set}."""
    nbrs = []
    for k in range(m * n):
        r, c = divmod(k, n)
        nbrs.append(
            [r2 * n + c2 for r2, c2 in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1))
             if 0 <= r2 < m and 0 <= c2 < n]
        )
    found: dict = {}
    path = [src]

    def walk(v: int, mask: int) -> None:
        per = found.setdefault(v, {})
        if mask not in per:
            per[mask] = tuple(path)
        for u in nbrs[v]:
            if not mask >> u & 1:
                path.append(u)
                walk(u, mask | (1 << u))
                path.pop()

    walk(src, 1 << src)
    found.pop(src, None)
    return found


def brute_min_nonseparating_path(
    g: GridGraph, s: Sequence[int], t: Sequence[int]
) -> Optional[tuple[int, GridPath]]:
    """Minimum over all simple st-paths whose removal leaves a non-empty connected graph."""
    _guard(g, MAX_PATH_NODES)
    m, n = g.m, g.n
    a, b = _flat(s, n), _flat(t, n)
    if a == b:
        raise ValueError("source and target must differ")
    per = _simple_paths_from(m, n, a).get(b, {})
    if not per:
        return None
    full = (1 << g.size) - 1
    masks = np.fromiter(per.keys(), dtype=np.int64, count=len(per))
    if g.size <= MAX_SUBSET_NODES:
        ok = connected_table(m, n)[full ^ masks]
    else:
        ok = np.array([_is_connected(full ^ int(x), m, n) for x in masks], dtype=bool)
    masks = masks[ok]
    if masks.size == 0:
        return None
    wts = _mask_weights(g, masks)
    k = int(np.argmin(wts))
    flat_path = per[int(masks[k])]
    return int(wts[k]), GridPath.from_nodes(g, [Node(v // n + 1, v % n + 1) for v in flat_path])


def _column_runs(m: int, z: int) -> tuple[int, ...]:
    tau = []
    for i in range(m):
        if i > 0 and (z >> i & 1) == (z >> (i - 1) & 1):
            tau.append(tau[-1])
        else:
            tau.append(i)
    return tuple(tau)


def _advance(m: int, z: int, tau: tuple, z_new: int) -> Optional[tuple]:
    """Next topology by BFS on (previous components + new column); None if a component closes."""
    adj: dict = {("p", c): set() for c in set(tau)}
    for i in range(m):
        adj[("n", i)] = set()
    for i in range(m):
        if i + 1 < m and (z_new >> i & 1) == (z_new >> (i + 1) & 1):
            adj[("n", i)].add(("n", i + 1))
            adj[("n", i + 1)].add(("n", i))
        if (z >> i & 1) == (z_new >> i & 1):
            adj[("n", i)].add(("p", tau[i]))
            adj[("p", tau[i])].add(("n", i))
    if any(not adj[("p", c)] for c in set(tau)):
        return None
    label = [None] * m
    for i in range(m):
        if label[i] is not None:
            continue
        seen = {("n", i)}
        queue = deque([("n", i)])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        rows = sorted(k for kind, k in seen if kind == "n")
        for k in rows:
            label[k] = rows[0]
    return tuple(label)


def enumerate_reachable_topologies(m: int, steps: int) -> set:
    """All (column mask, topology) pairs a column sweep can hold after ``steps`` columns."""
    if not (1 <= m <= MAX_TOPOLOGY_ROWS and 1 <= steps <= MAX_TOPOLOGY_STEPS):
        raise OracleTooLarge(
            f"topology enumeration limited to m <= {MAX_TOPOLOGY_ROWS}, steps <= {MAX_TOPOLOGY_STEPS}"
        )
    states = {(z, _column_runs(m, z)) for z in range(1 << m)}
    for _ in range(steps - 1):
        nxt = set()
        for z, tau in states:
            for z_new in range(1 << m):
                tau_new = _advance(m, z, tau, z_new)
                if tau_new is not None:
                    nxt.add((z_new, tau_new))
        states = nxt
    return states
