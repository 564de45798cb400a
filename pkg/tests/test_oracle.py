import random
from itertools import permutations

import pytest

from cwcount import pathtypes as pt
from cwcount.expr import eval_cw, parse_cw
from cwcount.graph import Graph, LabeledGraph
from cwcount.oracle import (
    OracleLimitError,
    brute_cycle_covers,
    brute_euler_tours,
    brute_ham,
    brute_longest,
    census_path_cycle_covers,
    merge_oracle,
    permanent,
)

from helpers import K2_TEXT, bowtie, complete, cycle, k3_expr, path, star


def test_census_k2():
    c = census_path_cycle_covers(eval_cw(parse_cw(K2_TEXT)))
    assert c == {(pt.single(1), pt.single(2)): 1, (pt.pair(1, 2),): 1}


def test_census_labeled_triangle():
    c = census_path_cycle_covers(eval_cw(k3_expr()))
    assert c[(pt.EMPTY,)] == 1
    assert sum(c.values()) == 8  # every subset of a triangle has max degree 2


def test_census_edgeless():
    lg = LabeledGraph(Graph(3, ()), (1, 2, 2), 2)
    assert census_path_cycle_covers(lg) == {(pt.single(1), pt.single(2), pt.single(2)): 1}


def test_census_limit():
    g = complete(8)  # 28 edges
    with pytest.raises(OracleLimitError):
        census_path_cycle_covers(LabeledGraph(g, (1,) * 8, 1))


def test_census_counts_degree_two_subsets():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(1, 6)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
        g = Graph.from_edges(n, edges)
        want = 0
        for mask in range(1 << len(edges)):
            deg = [0] * n
            for i, (u, v) in enumerate(edges):
                if mask >> i & 1:
                    deg[u] += 1
                    deg[v] += 1
            want += max(deg, default=0) <= 2
        assert sum(census_path_cycle_covers(LabeledGraph(g, (1,) * n, 1)).values()) == want


@pytest.mark.parametrize("g, directed, undirected", [
    (cycle(3), 2, 1),
    (cycle(4), 2, 1),
    (path(3), 0, 0),
    (bowtie(), 4, 2),
])
def test_euler_oracle(g, directed, undirected):
    assert brute_euler_tours(g, "directed") == directed
    assert brute_euler_tours(g, "undirected") == undirected


def test_euler_oracle_k5():
    # 264 closed trails through a fixed first edge, 132 up to rotation/reversal
    assert brute_euler_tours(complete(5), "directed") == 264
    assert brute_euler_tours(complete(5), "undirected") == 132


def test_euler_oracle_edgeless_and_bad_convention():
    assert brute_euler_tours(Graph(1, ())) == 0
    with pytest.raises(ValueError):
        brute_euler_tours(cycle(3), "sideways")


@pytest.mark.parametrize("g, kind, want", [
    (complete(4), "cycle", 3),
    (cycle(5), "cycle", 1),
    (complete(3), "path", 3),
    (path(4), "path", 1),
    (Graph(1, ()), "path", 1),
    (Graph(1, ()), "cycle", 0),
])
def test_ham_oracle(g, kind, want):
    assert brute_ham(g, kind) == want


def test_ham_oracle_limit():
    with pytest.raises(OracleLimitError):
        brute_ham(complete(11))


def test_longest_oracle():
    assert brute_longest(star(3), "path") == (3, 3)
    assert brute_longest(cycle(4), "cycle") == (4, 1)
    assert brute_longest(path(4), "cycle") == (0, 0)
    assert brute_longest(Graph(3, ()), "path") == (1, 3)


def test_cycle_cover_oracle():
    assert brute_cycle_covers(complete(3)) == 1
    assert brute_cycle_covers(complete(4)) == 3
    assert brute_cycle_covers(star(3)) == 0


@pytest.mark.parametrize("adj, want", [
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 1),
    ([[1, 1], [1, 1]], 2),
    ([[1] * 3] * 3, 6),
    ([[0, 0], [1, 1]], 0),
])
def test_permanent(adj, want):
    assert permanent(adj) == want


def test_permanent_matches_definition():
    rng = random.Random(2)
    for n in range(1, 5):
        adj = [[rng.randint(0, 1) for _ in range(n)] for _ in range(n)]
        want = sum(all(adj[i][p[i]] for i in range(n)) for p in permutations(range(n)))
        assert permanent(adj) == want


def test_merge_oracle_examples():
    assert merge_oracle([pt.pair(1, 2)], (1, 2), pt.EMPTY) == 1
    assert merge_oracle([pt.single(1), pt.single(2)], (1, 2), pt.pair(1, 2)) == 1
    assert merge_oracle([pt.pair(1, 2), pt.pair(1, 2)], (1, 2), pt.EMPTY) == 1


def test_merge_oracle_limit():
    with pytest.raises(OracleLimitError):
        merge_oracle([pt.pair(1, 3)] * 5, (1, 2), pt.EMPTY)
