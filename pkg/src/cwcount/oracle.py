"""Brute-force ground truth.

Everything here works from explicit enumeration of edge subsets, walks or
permutations.  Nothing is shared with the dynamic program beyond the type
encoding in :mod:`cwcount.pathtypes`.
"""

from __future__ import annotations

from collections import Counter
from itertools import permutations
from typing import Sequence

from . import pathtypes as pt
from .graph import Graph, LabeledGraph


class OracleLimitError(ValueError):
    pass


CENSUS_EDGE_LIMIT = 24


def _components(n: int, chosen: list[tuple[int, int]]):
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in chosen:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        yield comp, adj


def classify(lg: LabeledGraph, chosen: list[tuple[int, int]]) -> tuple[int, ...]:
    """Census key of the spanning subgraph with edge set ``chosen``."""
    lab = lg.lab
    types = []
    for comp, adj in _components(lg.graph.n, chosen):
        if len(comp) == 1:
            types.append(pt.single(lab[comp[0]]))
            continue
        endpoints = [v for v in comp if len(adj[v]) == 1]
        if not endpoints:
            types.append(pt.EMPTY)
        else:
            a, b = endpoints
            types.append(pt.pair(lab[a], lab[b]))
    return pt.make_allocation(types)


def census_path_cycle_covers(lg: LabeledGraph, limit: int = CENSUS_EDGE_LIMIT) -> dict:
    """Map census key -> number of edge subsets with maximum degree <= 2.

    Subsets are enumerated edge by edge; a branch is cut only once some
    degree exceeds two, so the counted subsets are exactly the path-cycle
    covers.  Path ends are tracked while edges are added (``other[v]`` is
    the far end of the path ending at ``v``), so each subset is classified
    without a graph search.
    """
    g = lg.graph
    if g.m > limit:
        raise OracleLimitError(f"census limited to {limit} edges, got {g.m}")
    edges = g.edges
    n = g.n
    lab = lg.lab
    deg = [0] * n
    other = list(range(n))
    cycles = [0]
    out: Counter = Counter()

    def rec(i: int) -> None:
        if i == len(edges):
            types = [pt.EMPTY] * cycles[0]
            for v in range(n):
                if deg[v] == 0:
                    types.append(pt.single(lab[v]))
                elif deg[v] == 1 and v < other[v]:
                    types.append(pt.pair(lab[v], lab[other[v]]))
            out[pt.make_allocation(types)] += 1
            return
        rec(i + 1)
        u, v = edges[i]
        if deg[u] == 2 or deg[v] == 2:
            return
        deg[u] += 1
        deg[v] += 1
        if other[u] == v:
            cycles[0] += 1
            rec(i + 1)
            cycles[0] -= 1
        else:
            eu, ev = other[u], other[v]
            other[eu], other[ev] = ev, eu
            rec(i + 1)
            other[eu], other[ev] = u, v
        deg[u] -= 1
        deg[v] -= 1

    rec(0)
    return dict(out)


def brute_euler_tours(g: Graph, convention: str = "undirected", limit: int = 12) -> int:
    """Count Euler tours as edge sequences starting with the least edge
    (``"directed"``), or as classes of such sequences under rotation and
    reversal (``"undirected"``)."""
    if convention not in ("directed", "undirected"):
        raise ValueError(f"unknown convention {convention!r}")
    if g.m > limit:
        raise OracleLimitError(f"Euler oracle limited to {limit} edges")
    if g.m == 0:
        return 0
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for idx, (u, v) in enumerate(g.edges):
        adj[u].append((v, idx))
        adj[v].append((u, idx))
    used = [False] * g.m
    seqs: set[tuple[int, ...]] = set()
    seq = [0]
    used[0] = True

    def walk(at: int, home: int) -> None:
        if len(seq) == g.m:
            if at == home:
                seqs.add(tuple(seq))
            return
        for w, idx in adj[at]:
            if not used[idx]:
                used[idx] = True
                seq.append(idx)
                walk(w, home)
                seq.pop()
                used[idx] = False

    u, v = g.edges[0]
    walk(v, u)
    walk(u, v)
    if convention == "directed":
        return len(seqs)
    classes = set()
    for s in seqs:
        variants = []
        for r in (s, s[::-1]):
            for i in range(len(r)):
                variants.append(r[i:] + r[:i])
        classes.add(min(variants))
    return len(classes)


def brute_ham(g: Graph, kind: str = "cycle", limit: int = 10) -> int:
    """Hamiltonian cycles or paths of ``g``, counted as distinct edge sets."""
    if g.n > limit:
        raise OracleLimitError(f"Hamiltonian oracle limited to {limit} vertices")
    n = g.n
    if n == 0:
        return 0
    if kind == "path" and n == 1:
        return 1
    adj = g.adjacency()
    found: set[frozenset] = set()
    seq: list[int] = []
    on = [False] * n

    def extend(u: int) -> None:
        if len(seq) == n:
            es = [frozenset(p) for p in zip(seq, seq[1:])]
            if kind == "cycle":
                if n < 3 or seq[0] not in adj[u]:
                    return
                es.append(frozenset((u, seq[0])))
            found.add(frozenset(es))
            return
        for w in adj[u]:
            if not on[w]:
                on[w] = True
                seq.append(w)
                extend(w)
                seq.pop()
                on[w] = False

    starts = [0] if kind == "cycle" else range(n)
    for s in starts:
        on[s] = True
        seq.append(s)
        extend(s)
        seq.pop()
        on[s] = False
    return len(found)


def brute_longest(g: Graph, kind: str = "path") -> tuple[int, int]:
    """(vertex count, number of edge sets) of the longest paths or cycles.

    A single vertex is a path of one vertex; graphs without cycles give
    ``(0, 0)`` for ``kind="cycle"``.
    """
    n = g.n
    adj = g.adjacency()
    best: dict[int, set[frozenset]] = {}
    seq: list[int] = []
    on = [False] * n

    def record(vs: list[int], closed: bool) -> None:
        es = [frozenset(p) for p in zip(vs, vs[1:])]
        if closed:
            es.append(frozenset((vs[-1], vs[0])))
        key = frozenset(es) if es else frozenset([frozenset([vs[0]])])
        best.setdefault(len(vs), set()).add(key)

    def extend(u: int) -> None:
        if kind == "path":
            record(seq, False)
        elif len(seq) >= 3 and seq[0] in adj[u]:
            record(seq, True)
        for w in adj[u]:
            if not on[w]:
                on[w] = True
                seq.append(w)
                extend(w)
                seq.pop()
                on[w] = False

    for s in range(n):
        on[s] = True
        seq.append(s)
        extend(s)
        seq.pop()
        on[s] = False
    if not best:
        return (0, 0)
    top = max(best)
    return top, len(best[top])


def brute_cycle_covers(g: Graph) -> int:
    """Spanning subgraphs in which every vertex has degree exactly two."""
    edges = g.edges
    deg = [0] * g.n
    count = 0

    def rec(i: int) -> None:
        nonlocal count
        if i == len(edges):
            if all(d == 2 for d in deg):
                count += 1
            return
        rec(i + 1)
        u, v = edges[i]
        if deg[u] < 2 and deg[v] < 2:
            deg[u] += 1
            deg[v] += 1
            rec(i + 1)
            deg[u] -= 1
            deg[v] -= 1

    if g.n == 0:
        return 0
    rec(0)
    return count


def permanent(adj: Sequence[Sequence[int]], limit: int = 9) -> int:
    n = len(adj)
    if any(len(row) != n for row in adj):
        raise ValueError("matrix must be square")
    if n > limit:
        raise OracleLimitError(f"permanent oracle limited to {limit}x{limit}")
    total = 0
    for perm in permutations(range(n)):
        term = 1
        for i, j in enumerate(perm):
            term *= adj[i][j]
            if not term:
                break
        total += term
    return total


# -- merge oracle ----------------------------------------------------------

MERGE_VERTEX_LIMIT = 12
_FILLER = 0  # label of inner path vertices; never an endpoint label


def _fragment(code: int, base: int):
    """Concrete vertices/labels/edges realising one block of type ``code``.

    Paths between two different labels get an inner vertex so that their
    endpoints are not already adjacent.
    """
    if code == pt.EMPTY:
        raise ValueError("cycles cannot take part in a merge")
    i, j = pt.ends(code)
    if pt.is_single(code):
        return [i], []
    if i == j:
        return [i, i], [(base, base + 1)]
    return [i, _FILLER, j], [(base, base + 1), (base + 1, base + 2)]


def merge_oracle(blocks: Sequence[int], join: tuple[int, int], target: int) -> int:
    """Number of sets of new ``join``-edges that glue all ``blocks`` into a
    single component of type ``target``.

    Candidate edges are all vertex pairs labelled ``(a, b)`` that are not
    already adjacent; subsets are kept when every degree stays at most two.
    """
    a, b = join
    labels: list[int] = []
    edges: list[tuple[int, int]] = []
    for code in blocks:
        lab, es = _fragment(code, len(labels))
        labels.extend(lab)
        edges.extend(es)
    n = len(labels)
    if n > MERGE_VERTEX_LIMIT:
        raise OracleLimitError(f"merge oracle limited to {MERGE_VERTEX_LIMIT} vertices")
    existing = {frozenset(e) for e in edges}
    cand = [
        (u, v)
        for u in range(n)
        for v in range(n)
        if labels[u] == a and labels[v] == b and frozenset((u, v)) not in existing
    ]
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    chosen: list[tuple[int, int]] = []
    count = 0

    def rec(i: int) -> None:
        nonlocal count
        if i == len(cand):
            count += _single_component_of(n, labels, edges + chosen, target)
            return
        rec(i + 1)
        u, v = cand[i]
        if deg[u] < 2 and deg[v] < 2:
            deg[u] += 1
            deg[v] += 1
            chosen.append(cand[i])
            rec(i + 1)
            chosen.pop()
            deg[u] -= 1
            deg[v] -= 1

    rec(0)
    return count


def _single_component_of(n, labels, edges, target) -> int:
    comps = list(_components(n, edges))
    if len(comps) != 1:
        return 0
    comp, adj = comps[0]
    if len(comp) == 1:
        got = pt.single(labels[comp[0]])
    else:
        endpoints = [v for v in comp if len(adj[v]) == 1]
        got = pt.EMPTY if not endpoints else pt.pair(labels[endpoints[0]], labels[endpoints[1]])
    return int(got == target)
