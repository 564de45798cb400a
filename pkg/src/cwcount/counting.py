"""Counting queries answered from the root table of the DP."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import pathtypes as pt
from .dp.engine import run_dp
from .expr import CwExpr, Join, Leaf, Relabel, Union
from .graph import Graph, GraphError, TreeDecomposition, split_digraph_gadget
from .pipeline import euler_preprocess

EDGE_SETS = "edge sets"
TOURS_UNDIRECTED = "tours up to rotation and reversal"
TOURS_DIRECTED = "edge sequences starting with the least edge"
PERMANENT = "perfect matchings of the bipartite graph (permanent)"


@dataclass
class CountReport:
    quantity: str
    value: int
    convention: str = EDGE_SETS
    length: int | None = None
    extra: dict = field(default_factory=dict)

    def as_json(self) -> dict:
        return {
            "quantity": self.quantity,
            "value": str(self.value),
            "convention": self.convention,
            "length": self.length,
        }


def count_ham_cycles(x: CwExpr, backend: str = "direct") -> CountReport:
    t = run_dp(x, backend, prune="ham-cycle")
    return CountReport("ham-cycles", t[(pt.EMPTY,)])


def count_ham_paths(x: CwExpr, backend: str = "direct") -> CountReport:
    t = run_dp(x, backend, prune="ham-path")
    total = sum(v for key, v in t.items() if len(key) == 1 and key[0] != pt.EMPTY)
    return CountReport("ham-paths", total)


def count_longest(x: CwExpr, kind: str = "path", backend: str = "direct") -> CountReport:
    if kind not in ("path", "cycle"):
        raise ValueError("kind must be 'path' or 'cycle'")
    t = run_dp(x, backend, prune="longest-" + kind)
    best: dict[int, int] = {}
    for key, v in t.items():
        big = [c for c in key if not pt.is_single(c)]
        if len(big) != 1:
            continue
        if (kind == "cycle") != (big[0] == pt.EMPTY):
            continue
        size = t.n - (len(key) - 1)
        best[size] = best.get(size, 0) + v
    if best:
        top = max(best)
        return CountReport(f"longest-{kind}", best[top], length=top)
    if kind == "path" and t.n:
        return CountReport("longest-path", t.n, length=1)
    return CountReport(f"longest-{kind}", 0, length=0)


def count_cycle_covers(x: CwExpr, backend: str = "direct") -> CountReport:
    t = run_dp(x, backend, prune="cycles")
    total = sum(v for key, v in t.items() if all(c == pt.EMPTY for c in key))
    return CountReport("cycle-covers", total)


def count_euler_tours(g: Graph, td: TreeDecomposition | None = None, directed: bool = False,
                      backend: str = "direct") -> CountReport:
    """Euler tours of a connected graph with even degrees.

    Tours are Hamiltonian cycles of the line graph of the 3-subdivision.
    The default convention identifies a tour with its rotations and its
    reversal; ``directed`` counts edge sequences that start with the least
    edge, twice as many once there are at least three edges.
    """
    convention = TOURS_DIRECTED if directed else TOURS_UNDIRECTED
    if g.m == 0:
        if g.n > 1:
            raise GraphError("disconnected")
        return CountReport("euler-tours", 0, convention)
    x, _ = euler_preprocess(g, td)
    value = count_ham_cycles(x, backend).value
    if directed and g.m >= 3:
        value *= 2
    return CountReport("euler-tours", value, convention, extra={"width": x.k, "leaves": x.n})


def linear_cw(g: Graph, order=None) -> tuple[CwExpr, list[int]]:
    """Irredundant clique-width expression adding vertices one at a time.

    Every vertex that still has unprocessed neighbours owns a label; a
    newcomer is joined to its processed neighbours one label at a time,
    and vertices with no remaining neighbours move to the shared label 1.
    Returns the expression and the vertex of ``g`` behind each leaf.
    """
    order = list(range(g.n)) if order is None else list(order)
    if sorted(order) != list(range(g.n)):
        raise GraphError("order must be a permutation of the vertices")
    if not order:
        raise GraphError("graph has no vertices")
    adj = g.adjacency()
    pos = {v: i for i, v in enumerate(order)}
    remaining = [sum(1 for w in adj[v] if pos[w] > pos[v]) for v in range(g.n)]
    free: list[int] = []
    top = 1
    label: dict[int, int] = {}
    node = None
    for v in order:
        back = sorted((w for w in adj[v] if pos[w] < pos[v]), key=pos.__getitem__)
        if back or remaining[v]:
            if free:
                lv = free.pop()
            else:
                top += 1
                lv = top
        else:
            lv = 1
        node = Leaf(lv) if node is None else Union(node, Leaf(lv))
        for w in back:
            node = Join(label[w], lv, node)
            remaining[w] -= 1
            if not remaining[w]:
                node = Relabel(label[w], 1, node)
                free.append(label[w])
        if lv != 1 and not remaining[v]:
            node = Relabel(lv, 1, node)
            free.append(lv)
        label[v] = lv
    return CwExpr(node, max(top, 1)), order


def count_bipartite_pm(adj, backend: str = "direct") -> CountReport:
    """Permanent of a square 0/1 matrix as the number of cycle covers of
    :func:`cwcount.graph.split_digraph_gadget`."""
    n = len(adj)
    g, roles = split_digraph_gadget(adj)
    if n == 0:
        return CountReport("perfect-matchings", 1, PERMANENT)
    x, _ = linear_cw(g, gadget_order(roles))
    return CountReport("perfect-matchings", count_cycle_covers(x, backend).value, PERMANENT,
                       extra={"width": x.k})


def gadget_order(roles: dict) -> list[int]:
    """All row inputs first, then each middle/output pair: at most
    ``n + 2`` vertices are waiting for neighbours at any time."""
    out = list(roles["in"])
    for m, o in zip(roles["mid"], roles["out"]):
        out.extend((m, o))
    return out
