"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s`` or as a script.
The full summary is repeated at the end of every pytest session.
"""

import gc
import random
import sys
import time
from collections import Counter
from itertools import combinations, product
from pathlib import Path

import networkx as nx
import pytest

from cwcount.counting import (
    count_bipartite_pm,
    count_cycle_covers,
    count_euler_tours,
    count_ham_cycles,
    count_ham_paths,
    count_longest,
    linear_cw,
)
from cwcount.dp import calibration, walpha
from cwcount.dp.circuit import emit_circuit
from cwcount.dp.engine import run_dp
from cwcount.dp.eta import eta_state_direct, eta_state_interp
from cwcount.expr import CwExpr, Join, eval_cw, nlc_to_cw, restrict_induced
from cwcount.graph import Graph, TreeDecomposition, heuristic_td, lift_td, line_graph, subdivide3
from cwcount.library import exhaustive_library, random_cw
from cwcount.oracle import (
    brute_cycle_covers,
    brute_euler_tours,
    brute_ham,
    brute_longest,
    census_path_cycle_covers,
    merge_oracle,
    permanent,
)
from cwcount.pipeline import (
    build_elim_tree,
    build_line_nlc,
    chordal_complete,
    compute_peo,
    euler_preprocess,
    greedy_coloring,
)

LIBRARY_LEAVES = 7
LIBRARY_LABELS = 3
RANDOM_EXPRESSIONS = 500
RANDOM_MAX_LEAVES = 10
TIME_BUDGET = 300.0
README = Path(__file__).resolve().parents[1] / "README.md"

RESULTS: list[str] = []


def report(name: str, failures: list, detail: str) -> None:
    line = f"[{'PASS' if not failures else 'FAIL'}] {name}: {detail}"
    if failures:
        line += f"; first failures: {failures[:3]}"
    RESULTS.append(line)
    print("\n" + line, file=sys.__stdout__, flush=True)
    assert not failures, line


# -- shared suites -----------------------------------------------------------


class Suite:
    """Expressions with their ``run_dp`` traces, built once per session."""

    def __init__(self):
        t0 = time.perf_counter()
        self.library = exhaustive_library(LIBRARY_LEAVES, LIBRARY_LABELS)
        rng = random.Random(20240611)
        self.random = [
            random_cw(rng, rng.randint(1, RANDOM_MAX_LEAVES), rng.randint(1, 4))
            for _ in range(RANDOM_EXPRESSIONS)
        ]
        self.build_time = time.perf_counter() - t0
        self.traces = {}

    @property
    def all(self):
        return self.library + self.random

    def trace(self, x):
        key = id(x)
        if key not in self.traces:
            tr = []
            run_dp(x, trace=tr)
            self.traces[key] = tr
        return self.traces[key]


@pytest.fixture(scope="module")
def suite():
    # the traces hold millions of small objects; cyclic GC passes over them
    # cost more than the checks themselves
    gc.disable()
    try:
        yield Suite()
    finally:
        gc.enable()


def _euler_graphs():
    """Every connected graph with even degrees and at most ten edges, up
    to isomorphism.

    Graphs on at most seven vertices come from the networkx atlas.  With
    eight or more vertices and at most ten edges the cyclomatic number is
    at most three, and an even-degree graph is a subdivision of one of a
    few kernels (all other vertices have degree two): a cycle, two loops
    at a vertex, three loops at a vertex, four threads between two
    vertices, or two threads plus a loop at each end.
    """
    out = []
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() == 0 or h.number_of_edges() > 10:
            continue
        if nx.is_connected(h) and all(d % 2 == 0 for _, d in h.degree()):
            out.append(Graph.from_edges(h.number_of_nodes(), h.edges()))

    big = []

    def build(threads):
        # threads: list of (u, v, length) between kernel vertices 0 and 1
        edges = []
        n = 1 + max(v for _, v, _ in threads)
        for u, v, length in threads:
            chain = [u] + list(range(n, n + length - 1)) + [v]
            n += length - 1
            edges += list(zip(chain, chain[1:]))
        return n, edges

    for m in range(8, 11):
        big.append((m, [(i, (i + 1) % m) for i in range(m)]))

    def compositions(total, parts, low):
        if parts == 1:
            if total >= low:
                yield (total,)
            return
        for first in range(low, total - low * (parts - 1) + 1):
            for rest in compositions(total - first, parts - 1, low):
                yield (first,) + rest

    for m in range(8, 11):
        for p, q in compositions(m, 2, 3):
            big.append(build([(0, 0, p), (0, 0, q)]))
        for p, q, s in compositions(m, 3, 3):
            big.append(build([(0, 0, p), (0, 0, q), (0, 0, s)]))
        for ls in compositions(m, 4, 1):
            if sum(1 for x in ls if x == 1) <= 1:
                big.append(build([(0, 1, x) for x in ls]))
        for a1, a2, la, lb in compositions(m, 4, 1):
            if la >= 3 and lb >= 3 and (a1, a2) != (1, 1):
                big.append(build([(0, 1, a1), (0, 1, a2), (0, 0, la), (1, 1, lb)]))

    for n, edges in big:
        g = Graph.from_edges(n, edges)
        if g.n >= 8 and g.m <= 10 and g.is_connected() and all(d % 2 == 0 for d in g.degrees()):
            out.append(g)

    unique = []
    buckets: dict = {}
    for g in out:
        h = nx.Graph(list(g.edges))
        h.add_nodes_from(range(g.n))
        key = (g.n, g.m, nx.weisfeiler_lehman_graph_hash(h))
        if any(nx.is_isomorphic(h, o) for o in buckets.get(key, [])):
            continue
        buckets.setdefault(key, []).append(h)
        unique.append(g)
    return unique


EULER_GRAPHS = None


def euler_graphs():
    global EULER_GRAPHS
    if EULER_GRAPHS is None:
        EULER_GRAPHS = _euler_graphs()
    return EULER_GRAPHS


# -- criteria ------------------------------------------------------------------


def test_criterion_1_dp_matches_census(suite):
    t0 = time.perf_counter()
    census = {}
    failures = []
    checked = 0
    for x in suite.all:
        for node, table in suite.trace(x):
            key = id(node)
            if key not in census:
                lg = eval_cw(CwExpr(node, x.k))
                census[key] = census_path_cycle_covers(lg, limit=64)
            checked += 1
            if table.entries != census[key]:
                failures.append(str(CwExpr(node, x.k)))
    elapsed = suite.build_time + time.perf_counter() - t0
    if elapsed > TIME_BUDGET:
        failures.append(f"took {elapsed:.0f}s")
    report(
        "1 DP equals census",
        failures,
        f"{len(suite.library)} library expressions (<= {LIBRARY_LEAVES} leaves, k <= {LIBRARY_LABELS})"
        f" + {len(suite.random)} random (<= {RANDOM_MAX_LEAVES} leaves), {checked} node checks,"
        f" {elapsed:.0f}s",
    )


def test_criterion_2_backends_agree(suite):
    failures = []
    seen = set()
    for x in suite.all:
        trace = suite.trace(x)
        tables = {id(node): t for node, t in trace}
        for node, _ in trace:
            if not isinstance(node, Join) or id(node) in seen:
                continue
            seen.add(id(node))
            child = tables[id(node.child)]
            if eta_state_direct(child, node.a, node.b) != eta_state_interp(child, node.a, node.b):
                failures.append(str(CwExpr(node, x.k)))
    for x in suite.random:
        if run_dp(x, "interp") != suite.trace(x)[-1][1]:
            failures.append(str(x))
    report("2 direct equals interp", failures, f"{len(seen)} distinct joins")


def test_criterion_3_euler_tours():
    failures = []
    graphs = euler_graphs()
    named = {"triangle": (Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]), 1),
             "bowtie": (Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]), 2)}
    for name, (g, want) in named.items():
        got = count_euler_tours(g).value
        if got != want:
            failures.append((name, got, want))
    rng = random.Random(3)
    shuffled = []
    for g in rng.sample(graphs, 40):
        perm = list(range(g.n))
        rng.shuffle(perm)
        shuffled.append(Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges]))
    for g in graphs + shuffled:
        for directed in (False, True):
            got = count_euler_tours(g, directed=directed).value
            want = brute_euler_tours(g, "directed" if directed else "undirected")
            if got != want:
                failures.append((g.n, g.edges, directed, got, want))
    by_n = Counter(g.n for g in graphs)
    report("3 Euler tours", failures,
           f"{len(graphs)} graphs up to isomorphism (by vertex count {dict(sorted(by_n.items()))})"
           f" + {len(shuffled)} relabeled copies, both conventions")


def _query_graphs():
    rng = random.Random(8)
    out = []
    for h in nx.graph_atlas_g()[1:]:
        g = Graph.from_edges(h.number_of_nodes(), h.edges())
        order = list(range(g.n))
        rng.shuffle(order)
        out.append(linear_cw(g, order)[0])
    for _ in range(150):
        p = rng.uniform(0.2, 0.9)
        g = Graph.from_edges(8, [e for e in combinations(range(8), 2) if rng.random() < p])
        out.append(linear_cw(g)[0])
    for _ in range(200):
        out.append(random_cw(rng, rng.randint(1, 8), rng.randint(1, 4)))
    return out


def test_criterion_4_queries():
    failures = []
    exprs = _query_graphs()
    for x in exprs:
        g = eval_cw(x).graph
        checks = [
            ("ham-cycles", count_ham_cycles(x).value, brute_ham(g, "cycle")),
            ("ham-paths", count_ham_paths(x).value, brute_ham(g, "path")),
            ("cycle-covers", count_cycle_covers(x).value, brute_cycle_covers(g)),
        ]
        for kind in ("path", "cycle"):
            r = count_longest(x, kind)
            checks.append((f"longest-{kind}", (r.length, r.value), brute_longest(g, kind)))
        failures += [(str(x), q, got, want) for q, got, want in checks if got != want]

    matrices = []
    for n in (1, 2, 3):
        for bits in product((0, 1), repeat=n * n):
            matrices.append([list(bits[i:i + n]) for i in range(0, n * n, n)])
    rng = random.Random(45)
    for n in (4, 5):
        for _ in range(60):
            p = rng.uniform(0.3, 0.9)
            matrices.append([[int(rng.random() < p) for _ in range(n)] for _ in range(n)])
    for adj in matrices:
        got = count_bipartite_pm(adj).value
        want = permanent(adj)
        if got != want:
            failures.append(("pm", adj, got, want))
    report("4 counting queries", failures,
           f"{len(exprs)} graphs with n <= 8, {len(matrices)} matrices (all up to 3x3, random 4x4 and 5x5)")


def _networkx_td(g: Graph) -> TreeDecomposition:
    h = nx.Graph(list(g.edges))
    h.add_nodes_from(range(g.n))
    _, tree = nx.algorithms.approximation.treewidth_min_fill_in(h)
    bags = list(tree.nodes)
    idx = {b: i for i, b in enumerate(bags)}
    return TreeDecomposition.build(bags, [(idx[a], idx[b]) for a, b in tree.edges])


def _check_structure(g: Graph, td: TreeDecomposition) -> list:
    problems = []
    g2, em = subdivide3(g)
    td2 = lift_td(g, td, em)
    gc, _ = chordal_complete(g2, td2)
    peo = compute_peo(gc, td2)
    pos = {v: i for i, v in enumerate(peo.order)}
    adj = gc.adjacency()
    if sorted(peo.order) != list(range(gc.n)):
        problems.append("order is not a permutation")
    for v in peo.order:
        later = [w for w in adj[v] if pos[w] > pos[v]]
        if any(b not in adj[a] for a, b in combinations(later, 2)):
            problems.append(f"later neighbours of {v} not a clique")
    et = build_elim_tree(gc, peo)
    want = {}
    for v in peo.order:
        later = [w for w in adj[v] if pos[w] > pos[v]]
        if later:
            want[v] = min(later, key=pos.__getitem__)
    if et.parent != want:
        problems.append("elimination tree differs from recomputation")
    for v in peo.order:
        anc = set()
        u = v
        while u in et.parent:
            u = et.parent[u]
            anc.add(u)
        if any(pos[w] > pos[v] and w not in anc for w in adj[v]):
            problems.append(f"a later neighbour of {v} is not an ancestor")
    col = greedy_coloring(gc, peo, td2.width)
    y, leaf_edges = build_line_nlc(gc, peo, et, col)
    full = eval_cw(nlc_to_cw(y)).graph
    ref, ref_edges = line_graph(gc)
    if not _equal_under_map(full, leaf_edges, ref, ref_edges):
        problems.append("NLC expression is not the line graph of the filled graph")
    real = set(g2.edges)
    keep = [i for i, e in enumerate(leaf_edges) if e in real]
    x = restrict_induced(nlc_to_cw(y), keep)
    ref, ref_edges = line_graph(g2)
    if not _equal_under_map(eval_cw(x).graph, [leaf_edges[i] for i in keep], ref, ref_edges):
        problems.append("final expression is not the line graph of the subdivision")
    x, leaf_edges = euler_preprocess(g, td)
    if not _equal_under_map(eval_cw(x).graph, leaf_edges, ref, ref_edges):
        problems.append("euler_preprocess output is not the line graph of the subdivision")
    return problems


def _equal_under_map(lg: Graph, leaf_edges, ref: Graph, ref_edges) -> bool:
    if sorted(leaf_edges) != sorted(ref_edges) or lg.n != len(leaf_edges):
        return False
    where = {e: i for i, e in enumerate(ref_edges)}
    mapped = {tuple(sorted((where[leaf_edges[u]], where[leaf_edges[v]]))) for u, v in lg.edges}
    return mapped == set(ref.edges)


def test_criterion_5_pipeline_structure():
    failures = []
    graphs = [g for g in euler_graphs() if g.m]
    runs = 0
    for g in graphs:
        for td in (heuristic_td(g), _networkx_td(g)):
            runs += 1
            problems = _check_structure(g, td)
            if problems:
                failures.append((g.edges, problems))
    report("5 pipeline structure", failures,
           f"{len(graphs)} graphs x 2 tree decompositions = {runs} runs")


def test_criterion_6_circuit(suite):
    failures = []
    gates = 0
    for x in suite.all:
        c = emit_circuit(x)
        gates += len(c.gates)
        vals = c.evaluate()
        trace = suite.trace(x)
        if len(c.node_gates) != len(trace):
            failures.append((str(x), "node count"))
            continue
        for ng, (_, table) in zip(c.node_gates, trace):
            if {k: vals[g] for k, g in ng.items()} != table.entries:
                failures.append((str(x), "gate values"))
                break
        if any(op not in ("i", "+", "*") for op, _ in c.gates):
            failures.append((str(x), "gate kinds"))
        if c.report()["max_gate_degree"] > x.n:
            failures.append((str(x), "degree"))
    report("6 circuit", failures,
           f"{len(suite.all)} expressions, {gates} gates, only 1/+/* gates, degree <= leaves")


def test_criterion_7_calibration():
    failures = []
    res = calibration.calibrate()
    if res.constants != walpha.FROZEN_CONSTANTS:
        failures.append(("constants", res.constants))
    if res.inconsistent or res.unexplained:
        failures.append(("oracle", res.inconsistent, res.unexplained))
    for cls, rows in res.cases.items():
        for group, target, got, _ in rows[:5]:
            if merge_oracle(group, (calibration.A, calibration.B), target) != got:
                failures.append((cls, group, target))
    text = README.read_text() if README.exists() else ""
    for cls, value in walpha.FROZEN_CONSTANTS.items():
        if f"`{cls}`" not in text:
            failures.append(("README lacks constant", cls, value))
    if "merge oracle" not in text:
        failures.append("README lacks the merge-oracle cases")
    n_cases = sum(len(r) for r in res.cases.values())
    report("7 calibration", failures,
           f"{len(res.constants)} constants from {n_cases} merge-oracle cases,"
           f" {len(res.bracket_disagreements)} bracket disagreements recorded")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
