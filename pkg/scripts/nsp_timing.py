"""Time min_nonseparating_path on seeded square grids of growing size."""

import argparse
import math
import time

import numpy as np

from gridbcp.grid import GridGraph, Node
from gridbcp.nsp import min_nonseparating_path


def best_time(side, repeats, max_weight):
    weights = np.random.default_rng(side).integers(1, max_weight + 1, size=(side, side))
    s, t = Node(side // 3, side // 4), Node(2 * side // 3, 3 * side // 4)
    best = math.inf
    for _ in range(repeats):
        g = GridGraph(weights)
        start = time.perf_counter()
        res = min_nonseparating_path(g, s, t)
        best = min(best, time.perf_counter() - start)
    return best, res.weight, len(res.path)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sides", type=int, nargs="*", default=[250, 354, 500, 707, 1000])
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--max-weight", type=int, default=9)
    args = ap.parse_args()

    best_time(50, 1, args.max_weight)  # load compiled kernels
    prev = None
    print(f"{'side':>6} {'N':>9} {'seconds':>8} {'ratio':>6} {'weight':>7} {'nodes':>6}")
    for side in args.sides:
        secs, weight, length = best_time(side, args.repeats, args.max_weight)
        ratio = f"{secs / prev:.2f}" if prev else "-"
        print(f"{side:>6} {side * side:>9} {secs:>8.3f} {ratio:>6} {weight:>7} {length:>6}")
        prev = secs


if __name__ == "__main__":
    main()
