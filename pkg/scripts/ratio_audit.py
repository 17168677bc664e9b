"""Audit the approximation and FPTAS ratios against the exact DP over seeded instance families."""

import argparse
from collections import defaultdict
from fractions import Fraction

import numpy as np

from gridbcp.bcp_approx import approx_bcp2
from gridbcp.bcp_exact import exact_bcp2
from gridbcp.bcp_fptas import fptas_bcp2
from gridbcp.instances import DOMINANT, audit_families, sample


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--per-family", type=int, default=2)
    ap.add_argument("--max-cols", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--epsilons", type=float, nargs="*", default=[1, 0.5, 0.25, 0.1])
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    worst = defaultdict(lambda: Fraction(1))
    count = defaultdict(int)
    for family in audit_families(max_cols=args.max_cols):
        for _ in range(args.per_family):
            g = sample(family, rng)
            opt = exact_bcp2(g).balance
            key = str(family.heavy)
            count[key] += 1
            worst[("approx", key)] = min(worst[("approx", key)], Fraction(approx_bcp2(g).balance, opt))
            if family.heavy == DOMINANT:
                continue
            for eps in args.epsilons:
                ratio = Fraction(fptas_bcp2(g, eps).balance, opt)
                worst[(f"fptas eps={eps}", key)] = min(worst[(f"fptas eps={eps}", key)], ratio)

    print(f"{'algorithm':<18} {'|H|':>9} {'n':>4} {'worst balance/OPT':>18}")
    for (algo, key), ratio in sorted(worst.items()):
        print(f"{algo:<18} {key:>9} {count[key]:>4} {float(ratio):>18.4f}")


if __name__ == "__main__":
    main()
