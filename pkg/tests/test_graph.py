import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cwcount.graph import (
    Graph,
    GraphError,
    TreeDecomposition,
    heuristic_td,
    lift_td,
    line_graph,
    split_digraph_gadget,
    subdivide3,
    validate_td,
)
from cwcount.oracle import brute_cycle_covers, brute_euler_tours, permanent

from helpers import bowtie, complete, cycle, path


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


def test_graph_is_canonical():
    g = Graph.from_edges(3, [(2, 1), (0, 2)])
    assert g.edges == ((0, 2), (1, 2))


@pytest.mark.parametrize("edges, msg", [
    ([(0, 0)], "self-loop"),
    ([(0, 3)], "range"),
    ([(0, 1), (1, 0)], "parallel"),
])
def test_graph_rejects_bad_edges(edges, msg):
    with pytest.raises(GraphError, match=msg):
        Graph.from_edges(3, edges)


def test_line_graph_small_cases():
    lg, order = line_graph(cycle(3))
    assert lg.m == 3 and lg.n == 3
    lg, order = line_graph(path(3))
    assert lg.n == 2 and lg.edges == ((0, 1),)
    lg, order = line_graph(complete(4))
    assert (lg.n, lg.m) == (6, 12)
    assert order == list(complete(4).edges)


def test_line_graph_needs_edges():
    with pytest.raises(GraphError, match="no edges"):
        line_graph(Graph(3, ()))


@given(graphs())
def test_line_graph_matches_networkx(g):
    if not g.edges:
        return
    lg, order = line_graph(g)
    ref = nx.line_graph(nx.Graph(list(g.edges)))
    idx = {e: i for i, e in enumerate(order)}
    want = {frozenset((idx[tuple(sorted(a))], idx[tuple(sorted(b))])) for a, b in ref.edges}
    assert {frozenset(e) for e in lg.edges} == want


def test_subdivide_single_edge_is_p4():
    g2, em = subdivide3(Graph(2, ((0, 1),)))
    assert g2.n == 4 and g2.m == 3
    assert nx.is_isomorphic(nx.Graph(list(g2.edges)), nx.path_graph(4))
    assert em.forward[(0, 1)] == ((0, 2), (2, 3), (1, 3))
    assert em.origin == (("v", 0), ("v", 1), ("x", (0, 1)), ("y", (0, 1)))


def test_subdivide_triangle_is_c9():
    g2, _ = subdivide3(cycle(3))
    assert nx.is_isomorphic(nx.Graph(list(g2.edges)), nx.cycle_graph(9))


@given(graphs())
def test_subdivide_counts_and_degrees(g):
    g2, _ = subdivide3(g)
    assert (g2.n, g2.m) == (g.n + 2 * g.m, 3 * g.m)
    assert g2.degrees()[: g.n] == g.degrees()
    assert all(d == 2 for d in g2.degrees()[g.n:])


@pytest.mark.parametrize("g", [cycle(3), cycle(4), bowtie(), complete(5)])
def test_subdivision_keeps_euler_tours(g):
    g2, _ = subdivide3(g)
    for conv in ("directed", "undirected"):
        assert brute_euler_tours(g, conv) == brute_euler_tours(g2, conv, limit=30)


def test_validate_td_examples():
    assert validate_td(path(3), TreeDecomposition.build([{0, 1}, {1, 2}], [(0, 1)]))
    assert not validate_td(cycle(3), TreeDecomposition.build([{0, 1}, {1, 2}], [(0, 1)]))
    g = Graph(3, ((0, 1),))
    assert not validate_td(g, TreeDecomposition.build([{0, 1}, {2}, {0, 1}], [(0, 1), (1, 2)]))
    # a cycle in the bag graph
    assert not validate_td(path(3), TreeDecomposition.build([{0, 1}, {1, 2}, {1}], [(0, 1), (1, 2), (0, 2)]))


def test_lift_td_examples():
    g = Graph(2, ((0, 1),))
    g2, em = subdivide3(g)
    td2 = lift_td(g, TreeDecomposition.build([{0, 1}]), em)
    assert frozenset({0, 1, 2, 3}) in td2.bags and td2.width == 3
    assert validate_td(g2, td2)
    c3 = cycle(3)
    g2, em = subdivide3(c3)
    td2 = lift_td(c3, TreeDecomposition.build([{0, 1, 2}]), em)
    assert validate_td(g2, td2) and td2.width <= 3


def test_lift_td_rejects_invalid():
    g = cycle(3)
    with pytest.raises(GraphError, match="invalid tree decomposition"):
        lift_td(g, TreeDecomposition.build([{0, 1}, {1, 2}], [(0, 1)]), subdivide3(g)[1])


@given(graphs())
@settings(max_examples=60)
def test_heuristic_and_lifted_decompositions_are_valid(g):
    td = heuristic_td(g)
    assert validate_td(g, td)
    g2, em = subdivide3(g)
    td2 = lift_td(g, td, em)
    assert validate_td(g2, td2)
    assert td2.width <= max(td.width, 3)


@pytest.mark.parametrize("adj, want", [
    ([[1]], 1),
    ([[1, 0], [0, 1]], 1),
    ([[1, 1], [1, 1]], 2),
])
def test_gadget_examples(adj, want):
    g, roles = split_digraph_gadget(adj)
    assert brute_cycle_covers(g) == want
    assert len(roles["in"]) == len(adj)


def test_gadget_matches_permanent_up_to_4x4():
    rng = random.Random(3)
    for n in range(1, 5):
        for _ in range(25):
            adj = [[rng.randint(0, 1) for _ in range(n)] for _ in range(n)]
            g, _ = split_digraph_gadget(adj)
            assert brute_cycle_covers(g) == permanent(adj)


def test_gadget_needs_square_matrix():
    with pytest.raises(GraphError, match="square"):
        split_digraph_gadget([[1, 0], [1]])
