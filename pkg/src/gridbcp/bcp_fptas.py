"""(1 + eps)-approximation by rounding weights down and solving exactly."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bcp_approx import dominant_node
from .bcp_exact import DEFAULT_MAX_ROWS, solve_weights
from .grid import Bipartition, GridGraph


def as_fraction(x) -> Fraction:
    # str() keeps decimal literals like 0.1 exact
    return Fraction(str(x)) if isinstance(x, float) else Fraction(x)


@dataclass(frozen=True)
class FptasParams:
    epsilon: Fraction
    rho: Fraction
    r: Fraction

    @classmethod
    def for_grid(cls, g: GridGraph, epsilon) -> "FptasParams":
        eps = as_fraction(epsilon)
        if eps <= 0:
            raise ValueError("epsilon must be positive")
        rho = eps / (1 + eps)
        return cls(eps, rho, rho * g.total / (3 * g.size))


def scaled_weights(g: GridGraph, params: FptasParams) -> np.ndarray:
    """``floor(w / r)`` in exact integer arithmetic."""
    num, den = params.r.numerator, params.r.denominator
    return np.array(
        [[(int(w) * den) // num for w in row] for row in g.weights], dtype=np.int64
    )


def fptas_bcp2(g: GridGraph, epsilon, max_rows: int = DEFAULT_MAX_ROWS) -> Bipartition:
    """Balance at least OPT / (1 + epsilon), measured in the original weights."""
    params = FptasParams.for_grid(g, epsilon)
    if g.size < 2:
        raise ValueError("a bipartition needs at least two nodes")
    # a lone node splits off connectedly only when the grid is biconnected
    v = dominant_node(g)
    if v is not None and min(g.m, g.n) >= 2:
        return Bipartition.from_nodes(g, [v])
    _, side, _ = solve_weights(scaled_weights(g, params), max_rows=max_rows)
    return Bipartition.from_side(g, side)
