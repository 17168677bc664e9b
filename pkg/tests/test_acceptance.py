"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line."""

import itertools
import math
import time
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from conftest import random_grid
from gridbcp.bcp_approx import approx_bcp2
from gridbcp.bcp_exact import alpha, exact_bcp2, topology_bound
from gridbcp.bcp_fptas import FptasParams, as_fraction, fptas_bcp2, scaled_weights
from gridbcp.grid import GridGraph, Node, adjacent, two_cut_corner, validate_bipartition
from gridbcp.instances import DOMINANT, audit_families, sample
from gridbcp.nsp import (
    PATH,
    check_nsp_result,
    hamiltonian_st_path_minus_corner,
    min_nonseparating_path,
    min_nsc,
    mixed_objective_direct,
    mixed_objective_sweep,
)
from gridbcp.oracle import (
    brute_bcp2,
    brute_min_nonseparating_path,
    brute_min_nsc,
    connected_bipartition_masks,
    enumerate_reachable_topologies,
)
from gridbcp.stnum import contract, grid_to_general, is_biconnected, st_numbering

NSP_SHAPES = [(m, n) for m in (3, 4) for n in (3, 4, 5)]
NSP_WEIGHTINGS = 30


def nsp_instances():
    for m, n in NSP_SHAPES:
        for k in range(NSP_WEIGHTINGS):
            rng = np.random.default_rng(1000 * m + 100 * n + k)
            yield random_grid(rng, m, n)


def test_criterion_01_nsp_matches_oracle(report):
    start = time.perf_counter()
    checked, mismatches, invalid = 0, [], []
    for g in nsp_instances():
        for s, t in itertools.permutations(g.nodes(), 2):
            res = min_nonseparating_path(g, s, t)
            hit = brute_min_nonseparating_path(g, s, t)
            checked += 1
            if hit is None or hit[0] != res.weight:
                mismatches.append((g.m, g.n, s, t))
            if check_nsp_result(g, s, t, res):
                invalid.append((g.m, g.n, s, t))
    elapsed = time.perf_counter() - start
    ok = not mismatches and not invalid and elapsed < 60
    report(
        "criterion 1: NSP oracle equivalence",
        ok,
        f"{checked} pairs, {len(mismatches)} mismatches, {len(invalid)} invalid, {elapsed:.1f}s < 60s",
    )
    assert ok, (mismatches[:5], invalid[:5], elapsed)


def test_criterion_02_nsc_matches_oracle(report):
    checked, mismatches, two_cuts = 0, [], 0
    for g in nsp_instances():
        for s, t in itertools.permutations(g.nodes(), 2):
            res = min_nsc(g, s, t)
            checked += 1
            if res.weight != brute_min_nsc(g, s, t)[0] or check_nsp_result(g, s, t, res):
                mismatches.append((g.m, g.n, s, t))
            x = two_cut_corner(g, s, t)
            if x is not None:
                two_cuts += 1
                closed_form = min(g.w(s) + g.w(x) + g.w(t), g.total - g.w(x))
                if res.weight != closed_form:
                    mismatches.append(("closed form", g.m, g.n, s, t))
    ok = not mismatches
    report(
        "criterion 2: min-NSC equivalence",
        ok,
        f"{checked} pairs, {two_cuts} on 2-cuts, {len(mismatches)} mismatches",
    )
    assert ok, mismatches[:5]


def test_criterion_03_sweep_matches_direct(report):
    checked, mismatches = 0, []
    for m in range(3, 7):
        for n in range(3, 9):
            for k in range(20):
                g = random_grid(np.random.default_rng(7000 + 100 * m + 10 * n + k), m, n)
                interior = [v for v in g.nodes() if not g.is_boundary(v)]
                for s, t in itertools.permutations(interior, 2):
                    checked += 1
                    if mixed_objective_sweep(g, s, t)[0] != mixed_objective_direct(g, s, t):
                        mismatches.append((m, n, k, s, t))
    ok = not mismatches
    report("criterion 3: RMQ sweep vs direct", ok, f"{checked} pairs, {len(mismatches)} mismatches")
    assert ok, mismatches[:5]


def test_criterion_04_hamiltonian_constructions(report):
    problems, built, refused = [], 0, 0
    for m in range(3, 9):
        for n in range(3, 9):
            g = GridGraph.uniform(m, n)
            for x in g.corners():
                if m % 2 and n % 2:
                    try:
                        hamiltonian_st_path_minus_corner(m, n, x)
                        problems.append(("built despite parity", m, n, x))
                    except ValueError as exc:
                        refused += 1
                        if "nonexistent (parity)" not in str(exc):
                            problems.append(("wrong message", m, n, x))
                    continue
                p = hamiltonian_st_path_minus_corner(m, n, x).nodes
                built += 1
                ok = (
                    len(p) == m * n - 1
                    and set(p) == set(g.nodes()) - {x}
                    and all(adjacent(u, v) for u, v in zip(p, p[1:]))
                    and {p[0], p[-1]} == set(g.neighbors(x))
                )
                if not ok:
                    problems.append((m, n, x))
    ok = not problems
    report(
        "criterion 4: Hamiltonian constructions",
        ok,
        f"{built} paths valid, {refused} parity refusals, {len(problems)} problems",
    )
    assert ok, problems[:5]


def test_criterion_05_exact_matches_oracle(report):
    start = time.perf_counter()
    checked, mismatches = 0, []
    for m in range(1, 5):
        for n in range(1, 5):
            if m * n < 2:
                continue
            for k in range(50):
                g = random_grid(np.random.default_rng(5000 + 100 * m + 10 * n + k), m, n)
                res = exact_bcp2(g)
                checked += 1
                if res.balance != brute_bcp2(g)[0]:
                    mismatches.append((m, n, k))
                if not validate_bipartition(g, res.bipartition) or res.bipartition.balance != res.balance:
                    mismatches.append(("witness", m, n, k))
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < 120
    report(
        "criterion 5: exact DP vs oracle",
        ok,
        f"{checked} grids, {len(mismatches)} mismatches, {elapsed:.1f}s < 120s",
    )
    assert ok, (mismatches[:5], elapsed)


def test_criterion_06_counting_identities(report):
    problems = []
    for i in range(1, 21):
        if alpha(i, 0) != 0 or alpha(i, i) != 1:
            problems.append(("boundary", i))
        for j in range(1, i):
            if i > 1 and alpha(i, j) != sum(alpha(i - 1, k) for k in range(j - 1, i)):
                problems.append(("recurrence", i, j))
        for j in range(0, i + 1):
            if alpha(i, j) > math.comb(2 * i - j, i):
                problems.append(("alpha bound", i, j))
    for p in range(1, 16):
        t, bound = topology_bound(p)
        if t > bound or bound != 4**p - math.comb(2 * p, p):
            problems.append(("t bound", p))
    worst = []
    for m in range(1, 7):
        cap = 2**m * topology_bound(math.ceil(m / 2)).count
        for steps in range(1, 7):
            seen = len(enumerate_reachable_topologies(m, steps))
            if seen > cap:
                problems.append(("observed", m, steps, seen, cap))
        worst.append(f"m={m}:{seen}<={cap}")
    ok = not problems
    report("criterion 6: counting identities", ok, ", ".join(worst))
    assert ok, problems[:5]


def audit_instances():
    out = []
    for idx, family in enumerate(audit_families(rows=(3, 4, 5), max_cols=8)):
        rng = np.random.default_rng(9000 + idx)
        out.extend((family, sample(family, rng)) for _ in range(2))
    return out


def test_criterion_07_approximation_ratio(report):
    instances = audit_instances()
    buckets = {}
    violations = []
    for family, g in instances:
        buckets[family.heavy] = buckets.get(family.heavy, 0) + 1
        part = approx_bcp2(g)
        opt = exact_bcp2(g).balance
        if not validate_bipartition(g, part) or 5 * part.balance < 4 * opt:
            violations.append((family, g.weights.tolist()))
    ok = len(instances) >= 200 and not violations and set(buckets) == {0, 1, 2, 3, 4, DOMINANT}
    report(
        "criterion 7: 5/4 approximation ratio",
        ok,
        f"{len(instances)} instances, buckets {sorted(buckets.items(), key=str)}, {len(violations)} violations",
    )
    assert ok, violations[:3]


def test_criterion_08_fptas_guarantee(report):
    instances = [(f, g) for f, g in audit_instances() if f.heavy != DOMINANT]
    violations, runs, widest = [], 0, Fraction(0)
    for family, g in instances:
        opt = exact_bcp2(g).balance
        for eps in (1, 0.5, 0.25, 0.1):
            e = as_fraction(eps)
            part = fptas_bcp2(g, eps)
            runs += 1
            if not validate_bipartition(g, part) or part.balance * (1 + e) < opt:
                violations.append((family, eps))
            params = FptasParams.for_grid(g, eps)
            width = int(scaled_weights(g, params).sum())
            limit = 3 * g.size * (1 + 1 / e) + g.size
            widest = max(widest, width / limit)
            if width > limit:
                violations.append(("width", family, eps, width, limit))
    ok = not violations
    report(
        "criterion 8: FPTAS guarantee",
        ok,
        f"{runs} runs over {len(instances)} instances, max width/limit {float(widest):.3f}, "
        f"{len(violations)} violations",
    )
    assert ok, violations[:3]


def _time_nsp(side: int, repeats: int = 3) -> float:
    weights = np.random.default_rng(side).integers(1, 10, size=(side, side))
    s = Node(side // 3, side // 4)
    t = Node(2 * side // 3, 3 * side // 4)
    best = math.inf
    for _ in range(repeats):
        g = GridGraph(weights)  # fresh object: no cached distance fields
        start = time.perf_counter()
        res = min_nonseparating_path(g, s, t)
        best = min(best, time.perf_counter() - start)
        assert res.kind == PATH
    return best


@pytest.mark.slow
def test_criterion_09_performance(report):
    _time_nsp(50, repeats=1)  # load compiled kernels
    times = {side: _time_nsp(side) for side in (500, 707, 1000)}
    ratios = [times[707] / times[500], times[1000] / times[707]]
    ok = times[1000] < 5 and all(r < 2.5 for r in ratios)
    report(
        "criterion 9: NSP performance",
        ok,
        f"1000x1000 {times[1000]:.2f}s < 5s, per-doubling ratios "
        + ", ".join(f"{r:.2f}" for r in ratios)
        + " < 2.5",
    )
    assert ok, (times, ratios)


def _numbering_problems(G, s, t, check_prefixes):
    num = st_numbering(G, s, t)
    lab = num.label
    if lab[s] != 1 or lab[t] != G.n or sorted(lab) != list(range(1, G.n + 1)):
        return ["labels"]
    for v in range(G.n):
        if v not in (s, t):
            nb = [lab[u] for u in G.adj[v]]
            if min(nb) > lab[v] or max(nb) < lab[v]:
                return ["neighbour property"]
    if check_prefixes:
        H = nx.Graph(G.edges())
        H.add_nodes_from(range(G.n))
        order = list(num.order)
        for k in range(1, G.n):
            if not nx.is_connected(H.subgraph(order[:k])) or not nx.is_connected(H.subgraph(order[k:])):
                return [f"prefix {k}"]
    return []


def test_criterion_10_st_numbering(report):
    problems, numbered = [], 0
    for m in range(1, 6):
        for n in range(1, 6):
            G = grid_to_general(GridGraph.uniform(m, n))
            if G.n < 2 or not is_biconnected(G):
                continue
            for s, t in itertools.permutations(range(G.n), 2):
                numbered += 1
                if _numbering_problems(G, s, t, check_prefixes=True):
                    problems.append(("grid", m, n, s, t))
    rng = np.random.default_rng(1010)
    contracted = 0
    while contracted < 100:
        m, n = int(rng.integers(2, 5)), int(rng.integers(3, 6))
        g = random_grid(rng, m, n)
        masks = connected_bipartition_masks(m, n)
        mask = int(masks[rng.integers(masks.size)])
        keep = int(rng.integers(2))
        side = [k for k in range(m * n) if (mask >> k & 1) == keep]
        H = contract(grid_to_general(g), side)
        contracted += 1
        if not is_biconnected(H):
            problems.append(("contracted not biconnected", m, n, mask))
            continue
        pairs = list(itertools.permutations(range(H.n), 2))
        exhaustive = H.n <= 12
        if not exhaustive:
            pairs = [pairs[int(k)] for k in rng.choice(len(pairs), size=40, replace=False)]
        for s, t in pairs:
            numbered += 1
            if _numbering_problems(H, s, t, check_prefixes=True):
                problems.append(("contracted", m, n, mask, s, t))
    ok = not problems
    report(
        "criterion 10: st-numbering validity",
        ok,
        f"{numbered} numberings on grids and {contracted} contracted graphs, {len(problems)} problems",
    )
    assert ok, problems[:5]
