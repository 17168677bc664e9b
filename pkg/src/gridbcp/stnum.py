"""General weighted graphs: st-numbering, prefix bipartitions, contraction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Optional, Sequence

from .grid import GridGraph, Node


class NotBiconnected(ValueError):
    pass


@dataclass(frozen=True)
class GeneralGraph:
    """Simple undirected node-weighted graph on ids ``0 .. n-1``.

    ``members[v]`` lists the original objects (grid nodes, say) that ``v``
    stands for; contraction unions them.
    """

    weights: tuple[int, ...]
    adj: tuple[tuple[int, ...], ...]
    members: Optional[tuple[frozenset, ...]] = None

    def __post_init__(self):
        if len(self.weights) != len(self.adj):
            raise ValueError("weights and adjacency disagree on node count")
        for v, nbrs in enumerate(self.adj):
            if v in nbrs or len(set(nbrs)) != len(nbrs):
                raise ValueError(f"node {v} has a loop or a repeated neighbour")
            for u in nbrs:
                if v not in self.adj[u]:
                    raise ValueError(f"edge ({v}, {u}) is not symmetric")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive")

    @classmethod
    def from_edges(cls, weights: Sequence[int], edges: Iterable[tuple[int, int]], members=None):
        nbrs = [set() for _ in weights]
        for u, v in edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(tuple(int(w) for w in weights), tuple(tuple(sorted(s)) for s in nbrs), members)

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def total(self) -> int:
        return sum(self.weights)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nbrs in enumerate(self.adj) for v in nbrs if u < v]

    def lift(self, nodes: Iterable[int]) -> frozenset:
        """Original objects represented by ``nodes``."""
        if self.members is None:
            return frozenset(nodes)
        out = set()
        for v in nodes:
            out |= self.members[v]
        return frozenset(out)


def grid_to_general(g: GridGraph) -> GeneralGraph:
    m, n = g.m, g.n
    edges = []
    for r in range(m):
        for c in range(n):
            k = r * n + c
            if c + 1 < n:
                edges.append((k, k + 1))
            if r + 1 < m:
                edges.append((k, k + n))
    members = tuple(frozenset({Node(k // n + 1, k % n + 1)}) for k in range(m * n))
    return GeneralGraph.from_edges(g.weights.ravel().tolist(), edges, members)


def is_connected_subset(G: GeneralGraph, nodes: Iterable[int]) -> bool:
    nodes = set(nodes)
    if not nodes:
        return False
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in G.adj[v]:
            if u in nodes and u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(nodes)


def articulation_points(G: GeneralGraph) -> set[int]:
    """Cut vertices of the component containing node 0 (iterative Hopcroft-Tarjan)."""
    n = G.n
    pre = [-1] * n
    low = [0] * n
    cuts = set()
    if n == 0:
        return cuts
    counter = 0
    pre[0] = low[0] = counter
    root_children = 0
    stack = [(0, -1, iter(G.adj[0]))]
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for u in it:
            if pre[u] < 0:
                counter += 1
                pre[u] = low[u] = counter
                stack.append((u, v, iter(G.adj[u])))
                advanced = True
                break
            if u != parent:
                low[v] = min(low[v], pre[u])
        if advanced:
            continue
        stack.pop()
        if parent >= 0:
            low[parent] = min(low[parent], low[v])
            if parent == 0:
                root_children += 1
            elif low[v] >= pre[parent]:
                cuts.add(parent)
    if root_children > 1:
        cuts.add(0)
    return cuts


def is_biconnected(G: GeneralGraph) -> bool:
    if G.n < 2:
        return False
    if G.n == 2:
        return 1 in G.adj[0]
    return is_connected_subset(G, range(G.n)) and not articulation_points(G)


@dataclass(frozen=True)
class StNumbering:
    """``label[v]`` in ``1..n``; ``order[k-1]`` is the node labelled ``k``."""

    s: int
    t: int
    label: tuple[int, ...]
    order: tuple[int, ...]


def is_valid_st_numbering(G: GeneralGraph, s: int, t: int, label: Sequence[int]) -> bool:
    n = G.n
    if sorted(label) != list(range(1, n + 1)):
        return False
    if label[s] != 1 or label[t] != n:
        return False
    for v in range(n):
        if v in (s, t):
            continue
        lv = label[v]
        nb = [label[u] for u in G.adj[v]]
        if not (any(x < lv for x in nb) and any(x > lv for x in nb)):
            return False
    return True


def st_numbering(G: GeneralGraph, s: int, t: int) -> StNumbering:
    """st-numbering by DFS lowpoints and an ordered insertion list.

    The DFS is rooted at ``s`` with ``(s, t)`` as the first tree edge; the
    edge is added virtually when absent. Each later vertex ``v`` goes just
    before or just after its DFS parent depending on the sign of ``low(v)``.
    """
    n = G.n
    if n < 2 or s == t or not (0 <= s < n and 0 <= t < n):
        raise ValueError("need two distinct nodes of a graph with at least 2 nodes")
    if not is_biconnected(G):
        raise NotBiconnected("st-numbering requires a biconnected graph")
    if n == 2:
        label = [0, 0]
        label[s], label[t] = 1, 2
        return StNumbering(s, t, tuple(label), (s, t))

    adj = [list(nbrs) for nbrs in G.adj]
    if t not in adj[s]:
        adj[s].append(t)
        adj[t].append(s)
    adj[s].remove(t)
    adj[s].insert(0, t)

    pre = [-1] * n
    parent = [-1] * n
    low = list(range(n))  # a vertex, compared by preorder
    preorder = []
    pre[s] = 0
    preorder.append(s)
    stack = [(s, iter(adj[s]))]
    while stack:
        v, it = stack[-1]
        advanced = False
        for u in it:
            if pre[u] < 0:
                pre[u] = len(preorder)
                preorder.append(u)
                parent[u] = v
                stack.append((u, iter(adj[u])))
                advanced = True
                break
            if u != parent[v] and pre[u] < pre[low[v]]:
                low[v] = u
        if advanced:
            continue
        stack.pop()
        p = parent[v]
        if p >= 0 and pre[low[v]] < pre[low[p]]:
            low[p] = low[v]

    # doubly linked list seeded with s -> t
    nxt = [-1] * n
    prv = [-1] * n
    nxt[s], prv[t] = t, s
    minus = [False] * n
    minus[s] = True
    for v in preorder[2:]:
        p = parent[v]
        if minus[low[v]]:
            a, b = prv[p], p
            minus[p] = False
        else:
            a, b = p, nxt[p]
            minus[p] = True
        nxt[v], prv[v] = b, a
        if a >= 0:
            nxt[a] = v
        if b >= 0:
            prv[b] = v

    order = []
    v = s
    while v >= 0:
        order.append(v)
        v = nxt[v]
    label = [0] * n
    for k, v in enumerate(order, start=1):
        label[v] = k
    if not is_valid_st_numbering(G, s, t, label):
        raise AssertionError("st-numbering construction produced an invalid labelling")
    return StNumbering(s, t, tuple(label), tuple(order))


@dataclass(frozen=True)
class StnResult:
    """Prefix ``order[:k]`` of an st-numbering and its weight."""

    part: frozenset
    weight: int
    total: int
    k: int
    numbering: StNumbering

    @property
    def balance(self) -> int:
        return min(self.weight, self.total - self.weight)


def two_heaviest(G: GeneralGraph) -> tuple[int, int]:
    ranked = sorted(range(G.n), key=lambda v: (-G.weights[v], v))
    return ranked[0], ranked[1]


def stn_bipartition(G: GeneralGraph) -> StnResult:
    """Best prefix split of an st-numbering between the two heaviest nodes."""
    if G.n < 2:
        raise ValueError("need at least 2 nodes")
    s, t = two_heaviest(G)
    num = st_numbering(G, s, t)
    total = G.total
    prefix = [0]
    for v in num.order:
        prefix.append(prefix[-1] + G.weights[v])
    # largest i with w(V_i) <= W/2; the optimum is V_i or V_{i+1}
    i = 0
    while i + 1 <= G.n and 2 * prefix[i + 1] <= total:
        i += 1
    if i == 0:
        k = 1
    elif i >= G.n - 1:
        k = G.n - 1
    elif prefix[i] >= total - prefix[i + 1]:
        k = i
    else:
        k = i + 1
    return StnResult(frozenset(num.order[:k]), prefix[k], total, k, num)


def contract(G: GeneralGraph, U: Iterable[int]) -> GeneralGraph:
    """Merge ``U`` into one new node (the last id); other nodes keep their relative order."""
    U = set(U)
    if not U:
        raise ValueError("cannot contract an empty set")
    if not U <= set(range(G.n)):
        raise ValueError("contraction set has unknown nodes")
    if not is_connected_subset(G, U):
        raise ValueError("contraction set must induce a connected subgraph")
    keep = [v for v in range(G.n) if v not in U]
    new_id = {v: k for k, v in enumerate(keep)}
    u = len(keep)
    edges = set()
    for v in keep:
        for x in G.adj[v]:
            a, b = new_id[v], new_id.get(x, u)
            edges.add((min(a, b), max(a, b)))
    weights = [G.weights[v] for v in keep] + [sum(G.weights[v] for v in U)]
    members = None
    if G.members is not None:
        members = tuple(G.members[v] for v in keep) + (G.lift(U),)
    return GeneralGraph.from_edges(weights, sorted(edges), members)
