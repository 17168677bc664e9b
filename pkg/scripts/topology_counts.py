"""Compare reachable column states of the exact sweep with the counting bounds."""

import argparse
import math

from gridbcp.bcp_exact import alpha, topology_bound
from gridbcp.oracle import enumerate_reachable_topologies


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-rows", type=int, default=6)
    ap.add_argument("--steps", type=int, default=6)
    ap.add_argument("--alpha-rows", type=int, default=8)
    args = ap.parse_args()

    print("alpha(i, j), rows i = 1..", args.alpha_rows)
    for i in range(1, args.alpha_rows + 1):
        print(f"  i={i:<2}", " ".join(f"{alpha(i, j):>5}" for j in range(i + 1)))

    print(f"\n{'p':>3} {'t(p)':>10} {'4^p - C(2p,p)':>14}")
    for p in range(1, 11):
        t, bound = topology_bound(p)
        print(f"{p:>3} {t:>10} {bound:>14}")

    print(f"\n{'m':>3} {'states per column (steps 1..)':<36} {'2^m t(ceil(m/2))':>17}")
    for m in range(1, args.max_rows + 1):
        counts = [len(enumerate_reachable_topologies(m, s)) for s in range(1, args.steps + 1)]
        cap = 2**m * topology_bound(math.ceil(m / 2)).count
        print(f"{m:>3} {' '.join(map(str, counts)):<36} {cap:>17}")


if __name__ == "__main__":
    main()
