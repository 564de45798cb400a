"""Small graphs and expressions shared by the tests."""

from itertools import combinations

from cwcount.counting import linear_cw
from cwcount.expr import parse_cw
from cwcount.graph import Graph

K2_TEXT = "(e 1 2 (u (v 1) (v 2)))"
K3_TEXT = "(e 1 2 (u (v 1) (r 1 2 (e 1 2 (u (v 1) (v 2))))))"


def k3_expr():
    return parse_cw(K3_TEXT)


def complete(n):
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def bowtie():
    return Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def expr_of(g):
    """Naive irredundant expression whose leaf order is the vertex order."""
    return linear_cw(g)[0]
