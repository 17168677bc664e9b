"""Minimum non-separating paths and balanced connected bipartitions on node-weighted grids."""

from .bcp_approx import approx_bcp2, three_heavy
from .bcp_exact import DpResult, exact_bcp2
from .bcp_fptas import fptas_bcp2
from .grid import (
    Bipartition,
    GridGraph,
    GridPath,
    Node,
    boundary_cycle,
    parse_grid,
    two_cut_corner,
    validate_bipartition,
)
from .nsp import NspResult, min_nonseparating_path, min_nsc

__all__ = [
    "Bipartition",
    "DpResult",
    "GridGraph",
    "GridPath",
    "Node",
    "NspResult",
    "approx_bcp2",
    "boundary_cycle",
    "exact_bcp2",
    "fptas_bcp2",
    "min_nonseparating_path",
    "min_nsc",
    "parse_grid",
    "three_heavy",
    "two_cut_corner",
    "validate_bipartition",
]
