"""Test-suite generators for clique-width expressions.

``exhaustive_library`` lists one irredundant expression for every labeled
graph (up to isomorphism and permutation of the labels) that is the value
of some expression with at most ``max_leaves`` leaves over ``k`` labels.
It closes the one-leaf graphs under disjoint union (with every label
permutation of the right operand), relabeling and irredundant joins.
``random_cw`` draws random irredundant expressions.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations, permutations, product

from .expr import CwExpr, Join, Leaf, Relabel, Union, postorder


@dataclass(frozen=True)
class Item:
    root: object
    lab: tuple
    edges: frozenset

    @property
    def n(self) -> int:
        return len(self.lab)


def _refine(lv, adj):
    """Colour refinement: stable vertex classes as sorted signatures."""
    n = len(lv)
    color = list(lv)
    for _ in range(n):
        sig = [(lv[v], color[v], tuple(sorted(color[w] for w in adj[v]))) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(ranks) == len(set(color)):
            return sig
        color = new
    return sig


def _canon(lab: tuple, edges: frozenset, k: int) -> tuple:
    """Canonical form under vertex permutations and label permutations.
    Vertices are split by colour refinement and only permuted inside
    classes."""
    n = len(lab)
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    best = None
    for perm in permutations(range(1, k + 1)):
        lv = [perm[a - 1] for a in lab]
        inv = _refine(lv, adj)
        classes = defaultdict(list)
        for v in range(n):
            classes[inv[v]].append(v)
        groups = [classes[key] for key in sorted(classes)]
        head = tuple(key for key in sorted(classes) for _ in classes[key])
        if best is not None and head > best[0]:
            continue
        for choice in product(*(permutations(gr) for gr in groups)):
            pos = {}
            for grp in choice:
                for v in grp:
                    pos[v] = len(pos)
            form = (
                head,
                tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in edges)),
            )
            if best is None or form < best:
                best = form
    return best


def _permute_labels(root, perm):
    """Copy of the tree with every label ``a`` replaced by ``perm[a-1]``."""
    out: dict[int, object] = {}
    for node in postorder(root):
        if isinstance(node, Leaf):
            new = Leaf(perm[node.label - 1])
        elif isinstance(node, Union):
            new = Union(out.pop(id(node.left)), out.pop(id(node.right)))
        elif isinstance(node, Relabel):
            new = Relabel(perm[node.src - 1], perm[node.dst - 1], out.pop(id(node.child)))
        else:
            new = Join(perm[node.a - 1], perm[node.b - 1], out.pop(id(node.child)))
        out[id(node)] = new
    return out[id(root)]


def _close(items: dict, k: int, seen: set) -> None:
    frontier = list(items.values())
    while frontier:
        fresh = []
        for it in frontier:
            present = sorted(set(it.lab))
            for a in present:
                for b in range(1, k + 1):
                    if a == b:
                        continue
                    lab = tuple(b if x == a else x for x in it.lab)
                    if (lab, it.edges) in seen:
                        continue
                    seen.add((lab, it.edges))
                    c = _canon(lab, it.edges, k)
                    if c not in items:
                        items[c] = Item(Relabel(a, b, it.root), lab, it.edges)
                        fresh.append(items[c])
            for a, b in combinations(present, 2):
                new = {
                    (min(u, v), max(u, v))
                    for u in range(it.n)
                    for v in range(it.n)
                    if it.lab[u] == a and it.lab[v] == b
                }
                if new & it.edges:
                    continue
                edges = it.edges | new
                if (it.lab, edges) in seen:
                    continue
                seen.add((it.lab, edges))
                c = _canon(it.lab, edges, k)
                if c not in items:
                    items[c] = Item(Join(a, b, it.root), it.lab, edges)
                    fresh.append(items[c])
        frontier = fresh


def exhaustive_library(max_leaves: int, k: int) -> list[CwExpr]:
    levels: dict[int, list[Item]] = {}
    one: dict = {}
    one[_canon((1,), frozenset(), k)] = Item(Leaf(1), (1,), frozenset())
    _close(one, k, set())
    levels[1] = list(one.values())
    perms = list(permutations(range(1, k + 1)))
    for n in range(2, max_leaves + 1):
        items: dict = {}
        seen: set = set()
        for i in range(1, n // 2 + 1):
            for left in levels[i]:
                for right in levels[n - i]:
                    for perm in perms:
                        lab = left.lab + tuple(perm[a - 1] for a in right.lab)
                        edges = left.edges | {(u + i, v + i) for u, v in right.edges}
                        edges = frozenset(edges)
                        if (lab, edges) in seen:
                            continue
                        seen.add((lab, edges))
                        c = _canon(lab, edges, k)
                        if c not in items:
                            root = Union(left.root, _permute_labels(right.root, perm))
                            items[c] = Item(root, lab, edges)
        _close(items, k, seen)
        levels[n] = list(items.values())
    return [CwExpr(it.root, k) for n in sorted(levels) for it in levels[n]]


def random_cw(rng: random.Random, leaves: int, k: int, unary: float = 0.6) -> CwExpr:
    """Random irredundant expression with exactly ``leaves`` leaves.

    After every leaf and union a geometric number of relabel/join steps is
    drawn; joins are only offered between label classes with no edge
    between them yet.
    """

    def grow(node, lab, edges):
        while rng.random() < unary:
            present = sorted(set(lab))
            joins = []
            for a, b in combinations(present, 2):
                us = [u for u, x in enumerate(lab) if x == a]
                ws = [w for w, x in enumerate(lab) if x == b]
                if not any((min(u, w), max(u, w)) in edges for u in us for w in ws):
                    joins.append((a, b))
            if joins and rng.random() < 0.6:
                a, b = rng.choice(joins)
                node = Join(a, b, node)
                edges = edges | {
                    (min(u, w), max(u, w))
                    for u, x in enumerate(lab) if x == a
                    for w, y in enumerate(lab) if y == b
                }
            elif k > 1:
                a = rng.choice(present)
                b = rng.choice([c for c in range(1, k + 1) if c != a])
                node = Relabel(a, b, node)
                lab = [b if x == a else x for x in lab]
            else:
                break
        return node, lab, edges

    def build(m):
        if m == 1:
            a = rng.randint(1, k)
            return grow(Leaf(a), [a], frozenset())
        left = rng.randint(1, m - 1)
        n1, l1, e1 = build(left)
        n2, l2, e2 = build(m - left)
        edges = e1 | {(u + left, v + left) for u, v in e2}
        return grow(Union(n1, n2), l1 + l2, frozenset(edges))

    node, _, _ = build(leaves)
    return CwExpr(node, k)
