"""Exact balanced connected bipartition by a column sweep over connection topologies.

State after column ``j``: the side mask ``z`` of column ``j`` (bit ``i`` is
the side of row ``i``), the side-1 weight ``theta`` of columns ``1..j``, and
the topology ``tau``: ``tau[i]`` is the smallest row of column ``j`` lying
in the same side-component of the processed prefix as row ``i``.

The sweep groups states by ``(z, tau)`` and keeps each group's reachable
``theta`` values as one integer bitset, because legality and the successor
topology do not depend on ``theta``. Witnesses are recovered by walking the
per-column predecessor lists backwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

from .grid import Bipartition, GridGraph

DEFAULT_MAX_ROWS = 12


class TooManyRows(ValueError):
    pass


@dataclass(frozen=True)
class Configuration:
    z: int
    theta: int
    tau: tuple[int, ...]
    parent: Optional["Configuration"] = field(default=None, repr=False, compare=False)


@dataclass(frozen=True)
class FeasibleCandidate:
    """Complete the closed side's lone component; every later node joins the other side."""

    closed_side: int
    theta: int
    balance: int


def canonical_tau(tau: Sequence[int]) -> tuple[int, ...]:
    """Relabel components by their smallest member row."""
    first: dict = {}
    return tuple(first.setdefault(c, i) for i, c in enumerate(tau))


def column_topology(m: int, z: int) -> tuple[int, ...]:
    """Topology of a lone column: vertical runs of equal side."""
    tau = []
    for i in range(m):
        if i and (z >> i & 1) == (z >> (i - 1) & 1):
            tau.append(tau[-1])
        else:
            tau.append(i)
    return tuple(tau)


def components_per_side(z: int, tau: Sequence[int]) -> tuple[int, int]:
    counts = [0, 0]
    for i, c in enumerate(tau):
        if c == i:
            counts[z >> i & 1] += 1
    return counts[0], counts[1]


@lru_cache(maxsize=1 << 18)
def _step(m: int, z: int, tau: tuple, z_new: int):
    """``("new", tau')``, ``("close", q)`` or None (illegal). Independent of weights."""
    survivors = set()
    for i in range(m):
        if (z >> i & 1) == (z_new >> i & 1):
            survivors.add(tau[i])
    closed = [i for i in range(m) if tau[i] == i and i not in survivors]
    if closed:
        if len(closed) == 1:
            q = z >> closed[0] & 1
            everything_other = 0 if q == 1 else (1 << m) - 1
            if components_per_side(z, tau)[q] == 1 and z_new == everything_other:
                return ("close", q)
        return None

    parent = list(range(2 * m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for i in range(m - 1):
        if (z_new >> i & 1) == (z_new >> (i + 1) & 1):
            union(i, i + 1)
    for i in range(m):
        if (z >> i & 1) == (z_new >> i & 1):
            union(i, m + tau[i])
    # roots of new rows are new rows: union keeps the smaller index as root
    return ("new", tuple(find(i) for i in range(m)))


def extend(
    prev: Configuration,
    z_new: int,
    col_weights: Sequence[int],
    total: int,
    processed: int,
) -> Union[Configuration, FeasibleCandidate, None]:
    """Append a column with side mask ``z_new`` to ``prev``.

    ``processed`` is the weight of all columns up to and including ``prev``'s;
    ``total`` is the whole grid's weight. Returns None for an illegal move.
    """
    m = len(col_weights)
    out = _step(m, prev.z, prev.tau, z_new)
    if out is None:
        return None
    kind, val = out
    if kind == "close":
        theta = prev.theta if val == 1 else prev.theta + total - processed
        return FeasibleCandidate(val, theta, min(theta, total - theta))
    gain = sum(int(col_weights[i]) for i in range(m) if z_new >> i & 1)
    return Configuration(z_new, prev.theta + gain, val, prev)


def _nearest_bits(bits: int, lo: int, hi: int):
    """Largest set bit ``<= lo`` and smallest set bit ``>= hi`` (None when absent)."""
    below = above = None
    if lo >= 0:
        part = bits & ((1 << (lo + 1)) - 1)
        if part:
            below = part.bit_length() - 1
    rest = bits >> max(hi, 0)
    if rest:
        above = (rest & -rest).bit_length() - 1 + max(hi, 0)
    return below, above


class ProfileSweep:
    """Column sweep over a weight matrix; zero weights are allowed."""

    def __init__(self, weights: np.ndarray, max_rows: int = DEFAULT_MAX_ROWS):
        w = np.asarray(weights, dtype=np.int64)
        if w.ndim != 2 or w.size < 2:
            raise ValueError("need a 2-D weight matrix with at least two nodes")
        if (w < 0).any():
            raise ValueError("weights must be non-negative")
        m, n = w.shape
        if m > max_rows:
            raise TooManyRows(
                f"{m} rows exceeds the exact-DP cap of {max_rows}; use the fptas or approx algorithm"
            )
        self.weights = w
        self.m, self.n = m, n
        self.total = int(w.sum())
        bits = (np.arange(1 << m)[:, None] >> np.arange(m)[None, :]) & 1
        # col_gain[j][z] = side-1 weight of column j under mask z
        self.col_gain = [(bits @ w[:, j]).astype(np.int64).tolist() for j in range(n)]
        self.layers: list[dict] = []
        self.preds: list[dict] = [{}]
        self.best = None  # (balance, column, group, theta, fill side or None)
        self._run()

    def _offer(self, balance, column, group, theta, fill):
        if self.best is None or balance > self.best[0]:
            self.best = (balance, column, group, theta, fill)

    def _best_theta(self, bits: int, offset: int):
        """Pick theta in ``bits`` maximizing min(theta + offset, W - theta - offset)."""
        W = self.total
        below, above = _nearest_bits(bits, W // 2 - offset, (W + 1) // 2 - offset)
        best = None
        for th in (below, above):
            if th is None:
                continue
            tf = th + offset
            bal = min(tf, W - tf)
            if best is None or bal > best[0]:
                best = (bal, th)
        return best

    def _run(self) -> None:
        m, n = self.m, self.n
        first = {}
        for z in range(1 << m):
            first[(z, column_topology(m, z))] = 1 << self.col_gain[0][z]
        self.layers.append(first)
        processed = int(self.weights[:, 0].sum())
        for j in range(1, n):
            gain = self.col_gain[j]
            layer, preds = {}, {}
            for group, bits in self.layers[-1].items():
                z, tau = group
                for z_new in range(1 << m):
                    out = _step(m, z, tau, z_new)
                    if out is None:
                        continue
                    if out[0] == "close":
                        q = out[1]
                        offset = 0 if q == 1 else self.total - processed
                        hit = self._best_theta(bits, offset)
                        if hit is not None:
                            self._offer(hit[0], j - 1, group, hit[1], 1 - q)
                        continue
                    key = (z_new, out[1])
                    layer[key] = layer.get(key, 0) | (bits << gain[z_new])
                    preds.setdefault(key, []).append((group, gain[z_new]))
            self.layers.append(layer)
            self.preds.append(preds)
            processed += int(self.weights[:, j].sum())
        for group, bits in self.layers[-1].items():
            z, tau = group
            if components_per_side(z, tau) == (1, 1):
                hit = self._best_theta(bits, 0)
                if hit is not None:
                    self._offer(hit[0], n - 1, group, hit[1], None)

    @property
    def max_topologies(self) -> int:
        """Largest number of distinct ``(z, tau)`` groups held for any column."""
        return max(len(layer) for layer in self.layers)

    @property
    def state_count(self) -> int:
        return sum(bin(bits).count("1") for layer in self.layers for bits in layer.values())

    def prefix_sides(self, column: int, group, theta: int) -> np.ndarray:
        """Side matrix of columns ``0..column`` for one stored state."""
        if not (self.layers[column].get(group, 0) >> theta) & 1:
            raise KeyError("state not present in this column")
        out = np.zeros((self.m, column + 1), dtype=np.uint8)
        for j in range(column, 0, -1):
            z = group[0]
            out[:, j] = [(z >> i) & 1 for i in range(self.m)]
            for src, shift in self.preds[j][group]:
                th = theta - shift
                if th >= 0 and (self.layers[j - 1][src] >> th) & 1:
                    group, theta = src, th
                    break
            else:
                raise RuntimeError("no predecessor found during reconstruction")
        z = group[0]
        out[:, 0] = [(z >> i) & 1 for i in range(self.m)]
        if self.col_gain[0][z] != theta:
            raise RuntimeError("reconstruction ended on an inconsistent first column")
        return out

    def solution(self) -> tuple[int, np.ndarray]:
        if self.best is None:
            raise ValueError("no connected bipartition exists")
        balance, column, group, theta, fill = self.best
        prefix = self.prefix_sides(column, group, theta)
        side = np.empty((self.m, self.n), dtype=np.uint8)
        side[:, : column + 1] = prefix
        if fill is not None:
            side[:, column + 1 :] = fill
        return balance, side


@dataclass(frozen=True)
class DpResult:
    balance: int
    bipartition: Bipartition
    max_topologies: int
    state_count: int


def solve_weights(weights: np.ndarray, max_rows: int = DEFAULT_MAX_ROWS):
    """Optimal split of a non-negative weight matrix, any orientation.

    Returns ``(balance, side matrix, sweep)``; the sweep runs on the
    orientation with fewer rows.
    """
    w = np.asarray(weights, dtype=np.int64)
    flip = w.shape[0] > w.shape[1]
    sweep = ProfileSweep(w.T if flip else w, max_rows=max_rows)
    balance, side = sweep.solution()
    return balance, (side.T if flip else side), sweep


def exact_bcp2(g: GridGraph, max_rows: int = DEFAULT_MAX_ROWS) -> DpResult:
    if g.size < 2:
        raise ValueError("a bipartition needs at least two nodes")
    balance, side, sweep = solve_weights(g.weights, max_rows=max_rows)
    part = Bipartition.from_side(g, side)
    if part.balance != balance:
        raise AssertionError("reconstructed witness disagrees with the DP balance")
    return DpResult(balance, part, sweep.max_topologies, sweep.state_count)


def alpha(i: int, j: int) -> int:
    """Number of 0-topologies on ``i`` segments with ``j`` uncovered subsets."""
    if i < 1 or not 0 <= j <= i:
        raise ValueError("alpha(i, j) needs 0 <= j <= i and i >= 1")
    return _alpha_row(i)[j]


@lru_cache(maxsize=None)
def _alpha_row(i: int) -> tuple[int, ...]:
    if i == 1:
        return (0, 1)
    prev = _alpha_row(i - 1)
    row = [0] * (i + 1)
    row[i] = 1
    for j in range(1, i):
        row[j] = sum(prev[j - 1 : i])
    return tuple(row)


class TopologyCount(NamedTuple):
    count: int
    bound: int


def topology_bound(p: int) -> TopologyCount:
    """``t(p) = sum_j 2^j alpha(p, j)`` alongside the closed bound ``4^p - C(2p, p)``."""
    if p < 1:
        raise ValueError("p must be positive")
    t = sum((1 << j) * alpha(p, j) for j in range(1, p + 1))
    bound = 4**p - comb(2 * p, p)
    if t > bound:
        raise AssertionError(f"t({p}) = {t} exceeds {bound}")
    return TopologyCount(t, bound)
