"""Simple undirected graphs, tree decompositions and the structural
transformations feeding the Euler-tour reduction."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphError(ValueError):
    pass


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Edges are stored as a sorted tuple of ``(u, v)`` pairs with ``u < v`` so
    every iteration over them is deterministic.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            e = _norm(u, v)
            if e in seen:
                raise GraphError(f"parallel edge {e}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, tuple(_norm(u, v) for u, v in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self._edge_set

    @property
    def _edge_set(self) -> frozenset:
        cached = self.__dict__.get("_es")
        if cached is None:
            cached = frozenset(self.edges)
            object.__setattr__(self, "_es", cached)
        return cached

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj = self.adjacency()
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.n

    def induced(self, keep: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``keep``; returns it with the kept vertex list
        (new index -> old index)."""
        order = sorted(set(keep))
        index = {v: i for i, v in enumerate(order)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(order), edges), order


@dataclass(frozen=True)
class LabeledGraph:
    graph: Graph
    lab: tuple[int, ...]
    k: int

    def __post_init__(self):
        if len(self.lab) != self.graph.n:
            raise GraphError("label map must cover every vertex")
        for a in self.lab:
            if not 1 <= a <= self.k:
                raise GraphError(f"label {a} outside [1, {self.k}]")


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset, ...]
    tree_edges: tuple[tuple[int, int], ...] = ()

    @classmethod
    def build(cls, bags: Iterable[Iterable[int]], tree_edges: Iterable[Sequence[int]] = ()):
        return cls(tuple(frozenset(b) for b in bags), tuple(sorted(_norm(i, j) for i, j in tree_edges)))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


@dataclass(frozen=True)
class EdgeMap:
    """Bookkeeping for :func:`subdivide3`.

    ``forward[e]`` is the triple of subdivided edges replacing original edge
    ``e``; ``origin[w]`` is ``("v", u)`` for an original vertex or
    ``("x", e)`` / ``("y", e)`` for the two inner vertices of edge ``e``.
    """

    forward: dict = field(hash=False)
    origin: tuple = ()


def line_graph(g: Graph) -> tuple[Graph, list[tuple[int, int]]]:
    """Line graph of ``g``. Vertex ``i`` of the result is ``g.edges[i]``."""
    if not g.edges:
        raise GraphError("no edges")
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        incident[u].append(i)
        incident[v].append(i)
    ledges = set()
    for inc in incident:
        for x in range(len(inc)):
            for y in range(x + 1, len(inc)):
                ledges.add(_norm(inc[x], inc[y]))
    return Graph(g.m, tuple(ledges)), list(g.edges)


def subdivide3(g: Graph) -> tuple[Graph, EdgeMap]:
    """Replace every edge ``(u, v)`` by the path ``u - x_e - y_e - v``.

    Original vertices keep their indices; edge number ``i`` gets
    ``x = n + 2i`` (next to ``u``) and ``y = n + 2i + 1`` (next to ``v``).
    """
    n = g.n
    edges = []
    forward = {}
    origin: list = [("v", u) for u in range(n)]
    for i, (u, v) in enumerate(g.edges):
        x, y = n + 2 * i, n + 2 * i + 1
        triple = (_norm(u, x), _norm(x, y), _norm(y, v))
        forward[(u, v)] = triple
        edges.extend(triple)
        origin.extend([("x", (u, v)), ("y", (u, v))])
    return Graph(n + 2 * g.m, tuple(edges)), EdgeMap(forward, tuple(origin))


def validate_td(g: Graph, td: TreeDecomposition) -> bool:
    """True iff ``td`` is a tree decomposition of ``g``."""
    nb = len(td.bags)
    if nb == 0:
        return g.n == 0
    # bag graph must be a tree
    if len(td.tree_edges) != nb - 1:
        return False
    nbr: list[list[int]] = [[] for _ in range(nb)]
    for i, j in td.tree_edges:
        if not (0 <= i < nb and 0 <= j < nb) or i == j:
            return False
        nbr[i].append(j)
        nbr[j].append(i)
    seen = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in nbr[i]:
            if j not in seen:
                seen.add(j)
                queue.append(j)
    if len(seen) != nb:
        return False

    where: dict[int, list[int]] = {}
    for i, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < g.n:
                return False
            where.setdefault(v, []).append(i)
    if len(where) != g.n:
        return False
    for u, v in g.edges:
        if not any(v in td.bags[i] for i in where[u]):
            return False
    # occurrences of each vertex induce a connected subtree
    for v, occ in where.items():
        occ_set = set(occ)
        start = occ[0]
        reached = {start}
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in nbr[i]:
                if j in occ_set and j not in reached:
                    reached.add(j)
                    queue.append(j)
        if reached != occ_set:
            return False
    return True


def lift_td(g: Graph, td: TreeDecomposition, em: EdgeMap) -> TreeDecomposition:
    """Decomposition of ``subdivide3(g)`` from one of ``g``.

    One bag ``{u, x_e, y_e, v}`` per original edge, hung below the
    lowest-index bag that holds both endpoints.
    """
    if not validate_td(g, td):
        raise GraphError("invalid tree decomposition")
    bags = list(td.bags)
    tree_edges = list(td.tree_edges)
    n = g.n
    for i, (u, v) in enumerate(g.edges):
        host = next(b for b, bag in enumerate(td.bags) if u in bag and v in bag)
        bags.append(frozenset((u, v, n + 2 * i, n + 2 * i + 1)))
        tree_edges.append((host, len(bags) - 1))
    return TreeDecomposition.build(bags, tree_edges)


def heuristic_td(g: Graph) -> TreeDecomposition:
    """Greedy min-degree elimination decomposition (ties: lowest index)."""
    if g.n == 0:
        return TreeDecomposition((), ())
    adj = g.adjacency()
    alive = set(range(g.n))
    order = []
    bag_of = {}
    while alive:
        v = min(alive, key=lambda w: (len(adj[w] & alive), w))
        nbrs = adj[v] & alive
        bag_of[v] = frozenset(nbrs | {v})
        for a in nbrs:
            adj[a] |= nbrs - {a}
        alive.remove(v)
        order.append(v)
    pos = {v: i for i, v in enumerate(order)}
    bags = [bag_of[v] for v in order]
    tree_edges = []
    for i, v in enumerate(order):
        later = [w for w in bags[i] if w != v]
        if later:
            parent = min(later, key=pos.__getitem__)
            tree_edges.append((i, pos[parent]))
        elif i + 1 < len(order):
            # separate component: chain onto the next bag
            tree_edges.append((i, i + 1))
    return TreeDecomposition.build(bags, tree_edges)


def split_digraph_gadget(adj: Sequence[Sequence[int]]) -> tuple[Graph, dict]:
    """Undirected graph whose cycle covers are the permutations supported
    by the 0/1 matrix ``adj``.

    Row/column ``i`` becomes the path ``in_i - mid_i - out_i`` and every
    nonzero ``adj[i][j]`` becomes the edge ``out_i - in_j``.  Each ``mid_i``
    has degree two, so a cycle cover uses both path edges and then picks
    exactly one arc out of every ``out_i`` and into every ``in_j``: a
    permutation.  A fixed point ``i`` gives the triangle
    ``in_i, mid_i, out_i``.
    """
    n = len(adj)
    for row in adj:
        if len(row) != n:
            raise GraphError("matrix must be square")
    ins = list(range(0, 3 * n, 3))
    mids = [v + 1 for v in ins]
    outs = [v + 2 for v in ins]
    edges = []
    for i in range(n):
        edges.append((ins[i], mids[i]))
        edges.append((mids[i], outs[i]))
    for i in range(n):
        for j in range(n):
            if adj[i][j]:
                edges.append((outs[i], ins[j]))
    return Graph.from_edges(3 * n, edges), {"in": ins, "mid": mids, "out": outs}
