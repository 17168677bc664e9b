"""Command-line front end.

Exit codes: 0 success or PASS, 1 verification FAIL, 2 usage or input error,
3 capability error (grid too thin for the solver, too many rows for the DP).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bcp_approx import approx_bcp2
from .bcp_exact import TooManyRows, exact_bcp2
from .bcp_fptas import fptas_bcp2
from .grid import GridGraph, GridParseError, Node, format_grid, read_grid, validate_bipartition
from .nsp import WHOLE_MINUS_CORNER, check_nsp_result, min_nonseparating_path, min_nsc
from .oracle import (
    MAX_PATH_NODES,
    MAX_SUBSET_NODES,
    brute_bcp2,
    brute_min_nonseparating_path,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPABILITY = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _node(text: str) -> Node:
    try:
        r, c = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected R,C but got {text!r}") from None
    return Node(r, c)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _record(**fields) -> str:
    return json.dumps(fields, separators=(",", ":"))


def _load(path):
    try:
        return read_grid(path)
    except GridParseError as exc:
        raise CliError(f"{path}: {exc}", EXIT_USAGE) from None
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}", EXIT_USAGE) from None


def _check_nodes(g, *nodes):
    for v in nodes:
        if not g.contains(v):
            raise CliError(f"node {v.row},{v.col} outside the {g.m}x{g.n} grid", EXIT_USAGE)
    if len(set(nodes)) != len(nodes):
        raise CliError("source and target must differ", EXIT_USAGE)


def _require_thick(g):
    if min(g.m, g.n) < 3:
        raise CliError(
            "grid has fewer than 3 rows or columns; run `verify --nsp ... --brute` instead",
            EXIT_CAPABILITY,
        )


def _nodes_json(nodes):
    return [[v.row, v.col] for v in nodes]


def cmd_nsp(args) -> int:
    g = _load(args.grid)
    _check_nodes(g, args.source, args.target)
    _require_thick(g)
    solve = min_nsc if args.connector else min_nonseparating_path
    res = solve(g, args.source, args.target)
    problems = check_nsp_result(g, args.source, args.target, res)
    if problems:
        raise CliError("solver output failed validation: " + ", ".join(problems), EXIT_FAIL)
    if not args.connector:
        print(_record(weight=res.weight, path=_nodes_json(res.path.nodes)))
    elif res.kind == WHOLE_MINUS_CORNER:
        print(_record(weight=res.weight, kind=res.kind, nodes=_nodes_json(sorted(res.node_set))))
    else:
        print(_record(weight=res.weight, kind=res.kind, path=_nodes_json(res.path.nodes)))
    return EXIT_OK


def _solve_bcp(g, algorithm, epsilon):
    try:
        if algorithm == "exact":
            return exact_bcp2(g).bipartition
        if algorithm == "fptas":
            return fptas_bcp2(g, epsilon)
        return approx_bcp2(g)
    except TooManyRows as exc:
        raise CliError(str(exc), EXIT_CAPABILITY) from None


def cmd_bcp(args) -> int:
    if args.algorithm == "fptas":
        if args.epsilon is None:
            raise CliError("--algorithm fptas requires --epsilon", EXIT_USAGE)
        if args.epsilon <= 0:
            raise CliError("--epsilon must be positive", EXIT_USAGE)
    g = _load(args.grid)
    if g.size < 2:
        raise CliError("a bipartition needs at least two nodes", EXIT_USAGE)
    part = _solve_bcp(g, args.algorithm, args.epsilon)
    if not validate_bipartition(g, part):
        raise CliError("solver output is not a connected bipartition", EXIT_FAIL)
    print(_record(balance=part.balance, weight0=part.weight0, weight1=part.weight1,
                  mask=part.mask_lines()))
    return EXIT_OK


def cmd_gen(args) -> int:
    # PCG64 via numpy's default Generator; integers drawn row-major
    rng = np.random.default_rng(args.seed)
    weights = rng.integers(1, args.max_weight + 1, size=(args.rows, args.cols))
    sys.stdout.write(format_grid(GridGraph(weights)))
    return EXIT_OK


def _verdict(ok: bool, text: str) -> int:
    print(("PASS " if ok else "FAIL ") + text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    g = _load(args.grid)
    if args.nsp is not None:
        s, t = args.nsp
        _check_nodes(g, s, t)
        fits = g.size <= MAX_PATH_NODES
        if args.brute and not fits:
            raise CliError("instance too large for oracle", EXIT_USAGE)
        if min(g.m, g.n) < 3:
            if not args.brute:
                _require_thick(g)
            hit = brute_min_nonseparating_path(g, s, t)
            text = "none" if hit is None else str(hit[0])
            return _verdict(True, f"nsp oracle-only weight={text}")
        res = min_nonseparating_path(g, s, t)
        problems = check_nsp_result(g, s, t, res)
        if problems:
            return _verdict(False, f"nsp solver={res.weight} invalid: {', '.join(problems)}")
        if not fits:
            return _verdict(True, f"nsp solver={res.weight} valid (oracle skipped)")
        hit = brute_min_nonseparating_path(g, s, t)
        oracle = None if hit is None else hit[0]
        return _verdict(oracle == res.weight, f"nsp solver={res.weight} oracle={oracle}")

    if g.size < 2:
        raise CliError("a bipartition needs at least two nodes", EXIT_USAGE)
    fits = g.size <= MAX_SUBSET_NODES
    if args.brute and not fits:
        raise CliError("instance too large for oracle", EXIT_USAGE)
    approx = approx_bcp2(g)
    try:
        exact = exact_bcp2(g)
    except TooManyRows:
        exact = None
    checks, parts = [], []
    checks.append(validate_bipartition(g, approx))
    parts.append(f"approx={approx.balance}")
    if exact is not None:
        checks.append(validate_bipartition(g, exact.bipartition))
        parts.append(f"exact={exact.balance}")
        checks.append(5 * approx.balance >= 4 * exact.balance)
    if fits:
        oracle, _ = brute_bcp2(g)
        parts.append(f"oracle={oracle}")
        if exact is not None:
            checks.append(exact.balance == oracle)
    return _verdict(all(checks), "bcp " + " ".join(parts))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridbcp",
        description="Non-separating paths and balanced connected bipartitions on grid graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nsp", help="minimum non-separating path (or connector) between two nodes")
    p.add_argument("--grid", required=True, metavar="FILE")
    p.add_argument("--source", required=True, type=_node, metavar="R,C")
    p.add_argument("--target", required=True, type=_node, metavar="R,C")
    p.add_argument("--connector", action="store_true",
                   help="minimum non-separating connector instead of path")
    p.set_defaults(func=cmd_nsp)

    p = sub.add_parser("bcp", help="balanced connected bipartition")
    p.add_argument("--grid", required=True, metavar="FILE")
    p.add_argument("--algorithm", required=True, choices=("approx", "exact", "fptas"))
    p.add_argument("--epsilon", type=float)
    p.set_defaults(func=cmd_bcp)

    p = sub.add_parser("gen", help="write a seeded random instance to stdout")
    p.add_argument("--rows", required=True, type=_positive, metavar="M")
    p.add_argument("--cols", required=True, type=_positive, metavar="N")
    p.add_argument("--max-weight", required=True, type=_positive, metavar="K")
    p.add_argument("--seed", required=True, type=int, metavar="S")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check solver output, against the brute-force oracle when small")
    p.add_argument("--grid", required=True, metavar="FILE")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--nsp", nargs=2, type=_node, metavar="R,C")
    mode.add_argument("--bcp", action="store_true")
    p.add_argument("--brute", action="store_true", help="require the oracle comparison")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"gridbcp: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
