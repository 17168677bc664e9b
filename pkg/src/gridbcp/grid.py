"""Node-weighted rectangular grid graphs.

Nodes are addressed by 1-based ``(row, col)`` pairs at the API surface;
weights are stored row-major in a 0-based numpy array.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

import numpy as np
from scipy import ndimage

# weight sums are accumulated in int64
MAX_TOTAL_WEIGHT = (1 << 63) - 1


class Node(NamedTuple):
    row: int
    col: int


class GridParseError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GridGraph:
    """An ``m x n`` grid with a positive integer weight on every node."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.int64, copy=True)
        if w.ndim != 2 or w.shape[0] < 1 or w.shape[1] < 1:
            raise ValueError(f"weights must be a non-empty 2-D array, got shape {w.shape}")
        if (w < 1).any():
            raise ValueError("grid weights must be positive integers")
        if int(w.sum(dtype=object)) > MAX_TOTAL_WEIGHT:
            raise ValueError("total weight does not fit in 63 bits")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, m: int, n: int, weight: int = 1) -> "GridGraph":
        return cls(np.full((m, n), weight, dtype=np.int64))

    @property
    def m(self) -> int:
        return self.weights.shape[0]

    @property
    def n(self) -> int:
        return self.weights.shape[1]

    @property
    def size(self) -> int:
        return self.m * self.n

    @property
    def total(self) -> int:
        return int(self.weights.sum())

    def w(self, node: Sequence[int]) -> int:
        r, c = node
        return int(self.weights[r - 1, c - 1])

    def contains(self, node: Sequence[int]) -> bool:
        r, c = node
        return 1 <= r <= self.m and 1 <= c <= self.n

    def nodes(self) -> Iterator[Node]:
        for r in range(1, self.m + 1):
            for c in range(1, self.n + 1):
                yield Node(r, c)

    def neighbors(self, node: Sequence[int]) -> list[Node]:
        r, c = node
        out = []
        for dr, dc in ((-1, 0), (0, 1), (1, 0), (0, -1)):
            rr, cc = r + dr, c + dc
            if 1 <= rr <= self.m and 1 <= cc <= self.n:
                out.append(Node(rr, cc))
        return out

    def is_boundary(self, node: Sequence[int]) -> bool:
        r, c = node
        return r == 1 or r == self.m or c == 1 or c == self.n

    def is_corner(self, node: Sequence[int]) -> bool:
        r, c = node
        return r in (1, self.m) and c in (1, self.n)

    def corners(self) -> list[Node]:
        return [Node(1, 1), Node(1, self.n), Node(self.m, self.n), Node(self.m, 1)]

    def transpose(self) -> "GridGraph":
        return GridGraph(self.weights.T)

    def weight_of(self, nodes: Iterable[Sequence[int]]) -> int:
        return sum(self.w(v) for v in nodes)

    def mask_of(self, nodes: Iterable[Sequence[int]]) -> np.ndarray:
        mask = np.zeros((self.m, self.n), dtype=bool)
        for r, c in nodes:
            mask[r - 1, c - 1] = True
        return mask


def adjacent(u: Sequence[int], v: Sequence[int]) -> bool:
    return abs(u[0] - v[0]) + abs(u[1] - v[1]) == 1


@dataclass(frozen=True)
class GridPath:
    nodes: tuple[Node, ...]
    weight: int

    @classmethod
    def from_nodes(cls, g: GridGraph, nodes: Iterable[Sequence[int]]) -> "GridPath":
        seq = tuple(Node(*v) for v in nodes)
        if not seq:
            raise ValueError("empty path")
        for v in seq:
            if not g.contains(v):
                raise ValueError(f"node {tuple(v)} outside the {g.m}x{g.n} grid")
        if len(set(seq)) != len(seq):
            raise ValueError("path repeats a node")
        for u, v in zip(seq, seq[1:]):
            if not adjacent(u, v):
                raise ValueError(f"consecutive nodes {tuple(u)} and {tuple(v)} are not adjacent")
        return cls(seq, g.weight_of(seq))

    def __len__(self) -> int:
        return len(self.nodes)

    def reversed(self) -> "GridPath":
        return GridPath(self.nodes[::-1], self.weight)


@dataclass(frozen=True, eq=False)
class Bipartition:
    """Two-colouring of a grid; ``side[r-1, c-1]`` is 0 or 1."""

    side: np.ndarray
    weight0: int
    weight1: int

    @classmethod
    def from_side(cls, g: GridGraph, side: np.ndarray) -> "Bipartition":
        side = np.asarray(side, dtype=np.uint8)
        if side.shape != g.weights.shape:
            raise ValueError(f"side mask shape {side.shape} != grid shape {g.weights.shape}")
        if not np.isin(side, (0, 1)).all():
            raise ValueError("side labels must be 0 or 1")
        side = side.copy()
        side.setflags(write=False)
        w1 = int(g.weights[side == 1].sum())
        return cls(side, g.total - w1, w1)

    @classmethod
    def from_nodes(cls, g: GridGraph, nodes: Iterable[Sequence[int]]) -> "Bipartition":
        """Put ``nodes`` on side 1 and everything else on side 0."""
        return cls.from_side(g, g.mask_of(nodes).astype(np.uint8))

    @property
    def balance(self) -> int:
        return min(self.weight0, self.weight1)

    def nodes_on(self, side: int) -> list[Node]:
        rows, cols = np.nonzero(self.side == side)
        return [Node(int(r) + 1, int(c) + 1) for r, c in zip(rows, cols)]

    def mask_lines(self) -> list[str]:
        return ["".join(str(int(b)) for b in row) for row in self.side]

    def evaluate(self, g: GridGraph) -> "Bipartition":
        """The same split, re-weighted under ``g``."""
        return Bipartition.from_side(g, self.side)


def parse_grid(text: str) -> GridGraph:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise GridParseError("malformed header at line 1: empty input")
    header = lines[0].split()
    if len(header) != 2:
        raise GridParseError("malformed header at line 1: expected 'm n'")
    try:
        m, n = int(header[0]), int(header[1])
    except ValueError:
        raise GridParseError("malformed header at line 1: expected two integers") from None
    if m < 1 or n < 1:
        raise GridParseError("malformed header at line 1: dimensions must be positive")
    if len(lines) != m + 1:
        # the first missing line, or the first surplus one
        lineno = len(lines) + 1 if len(lines) < m + 1 else m + 2
        raise GridParseError(
            f"wrong row count at line {lineno}: expected {m} rows, found {len(lines) - 1}"
        )
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        tokens = line.split()
        if len(tokens) != n:
            raise GridParseError(
                f"wrong column count at line {lineno}: expected {n}, found {len(tokens)}"
            )
        row = []
        for tok in tokens:
            try:
                value = int(tok)
            except ValueError:
                raise GridParseError(f"invalid integer {tok!r} at line {lineno}") from None
            if value < 1:
                raise GridParseError(f"non-positive weight at line {lineno}")
            row.append(value)
        rows.append(row)
    try:
        return GridGraph(np.array(rows, dtype=np.int64))
    except (ValueError, OverflowError) as exc:
        raise GridParseError(str(exc)) from None


def format_grid(g: GridGraph) -> str:
    out = [f"{g.m} {g.n}"]
    out.extend(" ".join(str(int(v)) for v in row) for row in g.weights)
    return "\n".join(out) + "\n"


def read_grid(path) -> GridGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_grid(fh.read())


def boundary_cycle(g: GridGraph) -> list[Node]:
    """Boundary nodes in clockwise order starting at (1, 1)."""
    m, n = g.m, g.n
    if m < 2 or n < 2:
        raise ValueError("grid has no boundary cycle")
    cyc = [Node(1, c) for c in range(1, n + 1)]
    cyc += [Node(r, n) for r in range(2, m + 1)]
    cyc += [Node(m, c) for c in range(n - 1, 0, -1)]
    cyc += [Node(r, 1) for r in range(m - 1, 1, -1)]
    return cyc


def two_cut_corner(g: GridGraph, s: Sequence[int], t: Sequence[int]) -> Optional[Node]:
    """The corner whose two neighbours are exactly ``{s, t}``, if any."""
    pair = {Node(*s), Node(*t)}
    for x in g.corners():
        if set(g.neighbors(x)) == pair:
            return x
    return None


_FOUR = ndimage.generate_binary_structure(2, 1)


def is_connected_mask(mask: np.ndarray) -> bool:
    """Whether the True cells form exactly one 4-connected component."""
    _, count = ndimage.label(mask, structure=_FOUR)
    return count == 1


def remainder_connected(g: GridGraph, removed: Iterable[Sequence[int]]) -> bool:
    """G minus ``removed`` is non-empty and connected."""
    return is_connected_mask(~g.mask_of(removed))


def validate_bipartition(g: GridGraph, b: Bipartition) -> bool:
    side = np.asarray(b.side)
    if side.shape != g.weights.shape:
        return False
    return is_connected_mask(side == 0) and is_connected_mask(side == 1)
