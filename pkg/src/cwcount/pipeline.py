"""From an Eulerian graph with a tree decomposition to a clique-width
expression for the line graph of its 3-subdivision.

Stages: subdivide every edge twice, lift the decomposition, fill every bag
into a clique, peel simplicial vertices into a perfect elimination
ordering, build the elimination tree, colour, assemble an NLC expression
for the line graph of the filled graph, translate it to clique-width and
finally drop the line-graph vertices that stand for fill edges.
"""

from __future__ import annotations

from dataclasses import dataclass

from .expr import NLeaf, NlcExpr, Product, Rename, nlc_to_cw, restrict_induced
from .graph import (
    Graph,
    GraphError,
    TreeDecomposition,
    heuristic_td,
    lift_td,
    subdivide3,
    validate_td,
)


class PipelineError(ValueError):
    pass


@dataclass(frozen=True)
class Peo:
    order: tuple[int, ...]
    layers: tuple  # layers[i][j]: vertices of sublayer j of peeling round i

    @property
    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}


@dataclass(frozen=True)
class ElimTree:
    parent: dict  # vertex -> parent vertex; roots are absent
    height: int

    def children(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, p in self.parent.items():
            out.setdefault(p, []).append(v)
        return out


def chordal_complete(g: Graph, td: TreeDecomposition) -> tuple[Graph, list[tuple[int, int]]]:
    """Turn every bag into a clique. Returns the filled graph and the
    added edges."""
    if not validate_td(g, td):
        raise GraphError("invalid tree decomposition")
    have = set(g.edges)
    added = set()
    for bag in td.bags:
        vs = sorted(bag)
        for i, u in enumerate(vs):
            for v in vs[i + 1:]:
                if (u, v) not in have:
                    added.add((u, v))
    return Graph(g.n, tuple(have | added)), sorted(added)


def _is_simplicial(adj, alive, v) -> bool:
    nb = [w for w in adj[v] if w in alive]
    for i, a in enumerate(nb):
        for b in nb[i + 1:]:
            if b not in adj[a]:
                return False
    return True


def compute_peo(gc: Graph, td: TreeDecomposition) -> Peo:
    """Perfect elimination ordering by rounds of simplicial peeling.

    In every round each bag (in index order) gives up its simplicial
    vertices, lowest index first; the ``j``-th vertex taken from a bag
    goes to sublayer ``j``.  The peel order itself is the ordering: a
    vertex's later neighbours are the ones still present when it is
    removed, and those form a clique.
    """
    adj = gc.adjacency()
    alive = set(range(gc.n))
    order: list[int] = []
    layers = []
    bags = [sorted(b) for b in td.bags]
    covered = set().union(*td.bags) if td.bags else set()
    if covered != alive:
        raise PipelineError("tree decomposition does not cover every vertex")
    while alive:
        taken: set[int] = set()
        sub: list[list[int]] = []
        for bag in bags:
            j = 0
            for v in bag:
                if v in alive and v not in taken and _is_simplicial(adj, alive, v):
                    if j == len(sub):
                        sub.append([])
                    sub[j].append(v)
                    taken.add(v)
                    j += 1
        if not taken:
            raise PipelineError("no simplicial vertex found: graph is not chordal")
        for part in sub:
            order.extend(part)
        alive -= taken
        layers.append(tuple(tuple(p) for p in sub))
    return Peo(tuple(order), tuple(layers))


def is_peo(g: Graph, order) -> bool:
    """Every vertex's later neighbours form a clique."""
    if sorted(order) != list(range(g.n)):
        return False
    pos = {v: i for i, v in enumerate(order)}
    adj = g.adjacency()
    for v in order:
        later = [w for w in adj[v] if pos[w] > pos[v]]
        for i, a in enumerate(later):
            for b in later[i + 1:]:
                if b not in adj[a]:
                    return False
    return True


def build_elim_tree(gc: Graph, peo: Peo) -> ElimTree:
    """Parent of ``v`` is its earliest later neighbour."""
    pos = peo.position
    adj = gc.adjacency()
    parent = {}
    for v in peo.order:
        later = [w for w in adj[v] if pos[w] > pos[v]]
        if later:
            parent[v] = min(later, key=pos.__getitem__)
    depth: dict[int, int] = {}
    for v in reversed(peo.order):
        depth[v] = depth[parent[v]] + 1 if v in parent else 0
    return ElimTree(parent, max(depth.values(), default=0))


def greedy_coloring(gc: Graph, peo: Peo, k: int) -> dict[int, int]:
    """Proper colouring with colours ``1..k+1``, greedy in reverse PEO
    order (optimal on chordal graphs)."""
    adj = gc.adjacency()
    col: dict[int, int] = {}
    for v in reversed(peo.order):
        used = {col[w] for w in adj[v] if w in col}
        c = 1
        while c in used:
            c += 1
        if c > k + 1:
            raise PipelineError(f"clique number exceeds k+1 = {k + 1}")
        col[v] = c
    return col


def _clique_nlc(labels: list[int]):
    """NLC term for a complete graph whose vertices carry ``labels``
    (pairwise distinct)."""
    node = NLeaf(labels[0])
    seen = [labels[0]]
    for t in labels[1:]:
        node = Product(frozenset((s, t) for s in seen), node, NLeaf(t))
        seen.append(t)
    return node


def build_line_nlc(gc: Graph, peo: Peo, et: ElimTree, col: dict[int, int]):
    """NLC expression for the line graph of the chordal graph ``gc``.

    Returns ``(expr, leaf_edges)`` where ``leaf_edges[i]`` is the edge of
    ``gc`` represented by the ``i``-th leaf.  Labels: ``col`` of the upper
    endpoint while an edge can still gain neighbours, ``k+2`` afterwards.
    """
    if not gc.edges:
        raise PipelineError("graph has no edges")
    if set(col) != set(range(gc.n)):
        raise PipelineError("colouring must cover every vertex")
    colors = max(col.values())
    dead = colors + 1
    pos = peo.position
    adj = gc.adjacency()
    kids = et.children()
    built: dict[int, tuple] = {}  # vertex -> (term, leaf edges)
    for v in peo.order:
        up = sorted((w for w in adj[v] if pos[w] > pos[v]), key=pos.__getitem__)
        if len({col[w] for w in up} | {col[v]}) != len(up) + 1:
            raise PipelineError("colouring is not proper on a later neighbourhood")
        parts = [built.pop(c) for c in sorted(kids.get(v, ()), key=pos.__getitem__) if c in built]
        y = None
        edges: list = []
        same = frozenset((s, s) for s in range(1, colors + 1))
        for term, es in parts:
            y = term if y is None else Product(same, y, term)
            edges.extend(es)
        z = _clique_nlc([col[w] for w in up]) if up else None
        zedges = [(min(v, w), max(v, w)) for w in up]
        cv = col[v]
        kill = ((cv, dead),)
        if y is None and z is None:
            continue
        if y is None:
            x = z
        elif z is None:
            x = Rename(kill, y)
        else:
            s = frozenset((s, s) for s in range(1, colors + 1) if s != cv) | frozenset(
                (cv, s) for s in range(1, colors + 1)
            )
            x = Rename(kill, Product(s, y, z))
        built[v] = (x, edges + zedges if z is not None else edges)
    roots = [built[v] for v in peo.order if v in built]
    term, edges = roots[0]
    for t2, e2 in roots[1:]:
        term = Product(frozenset(), term, t2)
        edges = edges + e2
    return NlcExpr(term, dead), edges


def euler_preprocess(g: Graph, td: TreeDecomposition | None = None):
    """Clique-width expression for ``L(subdivide3(g))``.

    Returns ``(expr, leaf_edges)``: leaf ``i`` of ``expr`` is the edge
    ``leaf_edges[i]`` of the subdivided graph.
    """
    if any(d % 2 for d in g.degrees()):
        raise PipelineError("graph has odd-degree vertex")
    if not g.is_connected():
        raise PipelineError("disconnected")
    if not g.edges:
        raise PipelineError("graph has no edges")
    if td is None:
        td = heuristic_td(g)
    g2, em = subdivide3(g)
    td2 = lift_td(g, td, em)
    gc, _ = chordal_complete(g2, td2)
    peo = compute_peo(gc, td2)
    et = build_elim_tree(gc, peo)
    col = greedy_coloring(gc, peo, td2.width)
    y, leaf_edges = build_line_nlc(gc, peo, et, col)
    x = nlc_to_cw(y)
    real = set(g2.edges)
    keep = [i for i, e in enumerate(leaf_edges) if e in real]
    return restrict_induced(x, keep), [leaf_edges[i] for i in keep]


def subdivided(g: Graph) -> Graph:
    return subdivide3(g)[0]
