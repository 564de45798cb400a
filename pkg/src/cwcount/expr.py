"""Clique-width and NLC-width expressions.

Trees can be deep (the Euler pipeline emits thousands of nodes in long
unary chains), so every traversal here is iterative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .graph import Graph, LabeledGraph


class ExprError(ValueError):
    pass


class ParseError(ExprError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(f"{msg} (line {line}, column {col})" if line else msg)
        self.line = line
        self.col = col


# -- clique-width nodes ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class Leaf:
    label: int

    children = ()


@dataclass(frozen=True, eq=False)
class Union:
    left: object
    right: object

    @property
    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=False)
class Relabel:
    src: int
    dst: int
    child: object

    @property
    def children(self):
        return (self.child,)


@dataclass(frozen=True, eq=False)
class Join:
    a: int
    b: int
    child: object

    @property
    def children(self):
        return (self.child,)


@dataclass(frozen=True, eq=False)
class Empty:
    """Placeholder that only lives inside :func:`restrict_induced`."""

    children = ()


# -- NLC nodes -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class NLeaf:
    label: int

    children = ()


@dataclass(frozen=True, eq=False)
class Product:
    pairs: frozenset
    left: object
    right: object

    @property
    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=False)
class Rename:
    mapping: tuple  # sorted (label, image) pairs; missing labels map to themselves
    child: object

    @property
    def children(self):
        return (self.child,)

    def image(self, a: int) -> int:
        return dict(self.mapping).get(a, a)


def postorder(root) -> list:
    """Nodes of the tree below ``root`` children-first, left to right."""
    out = []
    stack = [(root, False)]
    while stack:
        node, done = stack.pop()
        if done:
            out.append(node)
            continue
        stack.append((node, True))
        for ch in reversed(node.children):
            stack.append((ch, False))
    return out


def leaves(root) -> list:
    return [v for v in postorder(root) if isinstance(v, (Leaf, NLeaf))]


@dataclass(frozen=True, eq=False)
class CwExpr:
    root: object
    k: int

    def __post_init__(self):
        for node in postorder(self.root):
            labels: tuple = ()
            if isinstance(node, Leaf):
                labels = (node.label,)
            elif isinstance(node, (Relabel, Join)):
                first, second = (node.src, node.dst) if isinstance(node, Relabel) else (node.a, node.b)
                if first == second:
                    what = "relabel" if isinstance(node, Relabel) else "join"
                    raise ExprError(f"{what} labels must differ")
                labels = (first, second)
            for a in labels:
                if not 1 <= a <= self.k:
                    raise ExprError(f"label {a} out of range [1, {self.k}]")

    @classmethod
    def of(cls, root, k: int | None = None) -> "CwExpr":
        if k is None:
            k = max(_node_labels(root), default=1)
        return cls(root, k)

    @property
    def n(self) -> int:
        return len(leaves(self.root))

    def __str__(self) -> str:
        return to_text(self.root)


@dataclass(frozen=True, eq=False)
class NlcExpr:
    root: object
    k: int

    def __post_init__(self):
        for node in postorder(self.root):
            labels: list = []
            if isinstance(node, NLeaf):
                labels = [node.label]
            elif isinstance(node, Product):
                labels = [x for p in node.pairs for x in p]
            elif isinstance(node, Rename):
                labels = [x for p in node.mapping for x in p]
            for a in labels:
                if not 1 <= a <= self.k:
                    raise ExprError(f"label {a} out of range [1, {self.k}]")

    @classmethod
    def of(cls, root, k: int | None = None) -> "NlcExpr":
        if k is None:
            k = max(_node_labels(root), default=1)
        return cls(root, k)

    @property
    def n(self) -> int:
        return len(leaves(self.root))

    def __str__(self) -> str:
        return to_text(self.root)


def _node_labels(root) -> Iterator[int]:
    for node in postorder(root):
        if isinstance(node, (Leaf, NLeaf)):
            yield node.label
        elif isinstance(node, Relabel):
            yield from (node.src, node.dst)
        elif isinstance(node, Join):
            yield from (node.a, node.b)
        elif isinstance(node, Product):
            for p in node.pairs:
                yield from p
        elif isinstance(node, Rename):
            for p in node.mapping:
                yield from p


# -- text format -----------------------------------------------------------


def _read_sexpr(text: str):
    """Parse one s-expression into nested lists of ``(atom, line, col)``."""
    stack: list[list] = [[]]
    opened: list[tuple[int, int]] = []
    line, col = 1, 0
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        col += 1
        if ch == "\n":
            line, col = line + 1, 0
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch.isspace():
            i += 1
        elif ch == "(":
            new: list = []
            new_pos = (line, col)
            stack[-1].append((new, line, col))
            stack.append(new)
            opened.append(new_pos)
            i += 1
        elif ch == ")":
            if len(stack) == 1:
                raise ParseError("unexpected ')'", line, col)
            stack.pop()
            opened.pop()
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "();":
                j += 1
            tok = text[i:j]
            try:
                val = int(tok)
            except ValueError:
                val = tok
            stack[-1].append((val, line, col))
            col += j - i - 1
            i = j
    if len(stack) != 1:
        ln, cl = opened[-1]
        raise ParseError("unclosed '('", ln, cl)
    top = stack[0]
    if len(top) != 1:
        if not top:
            raise ParseError("empty input", 1, 1)
        _, ln, cl = top[1]
        raise ParseError("trailing input after expression", ln, cl)
    return top[0]


def _walk_forms(item):
    """Post-order list of list-forms (with positions) in ``item``."""
    out = []
    stack = [(item, False)]
    while stack:
        it, done = stack.pop()
        val = it[0]
        if not isinstance(val, list):
            continue
        if done:
            out.append(it)
            continue
        stack.append((it, True))
        for sub in reversed(val):
            stack.append((sub, False))
    return out


def _int(item, what="label") -> int:
    val, line, col = item
    if not isinstance(val, int) or isinstance(val, bool):
        raise ParseError(f"expected integer {what}, got {val!r}", line, col)
    if val < 1:
        raise ParseError(f"{what} must be >= 1", line, col)
    return val


def parse_cw(text: str, k: int | None = None) -> CwExpr:
    """Read a clique-width term: ``(v a)``, ``(u X Y)``, ``(r a b X)``,
    ``(e a b X)``."""
    top = _read_sexpr(text)
    built: dict[int, object] = {}
    for form in _walk_forms(top):
        items, line, col = form
        if not items:
            raise ParseError("empty form", line, col)
        head, hl, hc = items[0]
        args = items[1:]
        arity = {"v": 1, "u": 2, "r": 3, "e": 3}.get(head)
        if arity is None:
            raise ParseError(f"unknown operator {head!r}", hl, hc)
        if len(args) != arity:
            raise ParseError(f"'{head}' takes {arity} arguments, got {len(args)}", line, col)

        def sub(item):
            if not isinstance(item[0], list):
                raise ParseError("expected sub-expression", item[1], item[2])
            return built.pop(id(item[0]))

        if head == "v":
            node = Leaf(_int(args[0]))
        elif head == "u":
            node = Union(sub(args[0]), sub(args[1]))
        else:
            a, b = _int(args[0]), _int(args[1])
            if a == b:
                msg = "join labels must differ" if head == "e" else "relabel labels must differ"
                raise ParseError(msg, line, col)
            node = (Join if head == "e" else Relabel)(a, b, sub(args[2]))
        built[id(items)] = node
    if not isinstance(top[0], list):
        raise ParseError("expected '('", top[1], top[2])
    root = built[id(top[0])]
    try:
        return CwExpr.of(root, k)
    except ExprError as exc:
        raise ParseError(str(exc)) from None


def parse_nlc(text: str, k: int | None = None) -> NlcExpr:
    """Read an NLC term: ``(v a)``, ``(x ((a b) ...) X Y)``,
    ``(o ((1 r1) ...) X)``."""
    top = _read_sexpr(text)
    built: dict[int, object] = {}
    forms = _walk_forms(top)
    pair_lists = set()
    for items, _, _ in forms:
        if items and items[0][0] in ("x", "o") and len(items) > 1 and isinstance(items[1][0], list):
            pair_lists.add(id(items[1][0]))
            pair_lists.update(id(p[0]) for p in items[1][0])
    for form in forms:
        items, line, col = form
        if id(items) in pair_lists:
            continue
        if not items:
            raise ParseError("empty form", line, col)
        head, hl, hc = items[0]
        if head == "v":
            if len(items) != 2:
                raise ParseError("'v' takes 1 argument", line, col)
            node = NLeaf(_int(items[1]))
        elif head in ("x", "o"):
            arity = 4 if head == "x" else 3
            if len(items) != arity:
                raise ParseError(f"'{head}' takes {arity - 1} arguments", line, col)
            plist, pl, pc = items[1]
            if not isinstance(plist, list):
                raise ParseError("expected a list of label pairs", pl, pc)
            pairs = []
            for p in plist:
                pv, ppl, ppc = p
                if not isinstance(pv, list) or len(pv) != 2:
                    raise ParseError("expected a label pair", ppl, ppc)
                pairs.append((_int(pv[0]), _int(pv[1])))
            subs = []
            for item in items[2:]:
                if not isinstance(item[0], list):
                    raise ParseError("expected sub-expression", item[1], item[2])
                subs.append(built.pop(id(item[0])))
            if head == "x":
                node = Product(frozenset(pairs), subs[0], subs[1])
            else:
                dom = [a for a, _ in pairs]
                if len(set(dom)) != len(dom):
                    raise ParseError("rename maps a label twice", pl, pc)
                node = Rename(tuple(sorted(pairs)), subs[0])
        else:
            raise ParseError(f"unknown operator {head!r}", hl, hc)
        built[id(items)] = node
    if not isinstance(top[0], list):
        raise ParseError("expected '('", top[1], top[2])
    root = built[id(top[0])]
    try:
        return NlcExpr.of(root, k)
    except ExprError as exc:
        raise ParseError(str(exc)) from None


def to_text(root) -> str:
    """Canonical single-line text of a CW or NLC tree."""
    out: list[str] = []
    stack: list = [root]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        node = item
        if isinstance(node, Leaf) or isinstance(node, NLeaf):
            out.append(f"(v {node.label})")
        elif isinstance(node, Union):
            stack.extend([")", node.right, " ", node.left])
            out.append("(u ")
        elif isinstance(node, Relabel):
            stack.extend([")", node.child])
            out.append(f"(r {node.src} {node.dst} ")
        elif isinstance(node, Join):
            stack.extend([")", node.child])
            out.append(f"(e {node.a} {node.b} ")
        elif isinstance(node, Product):
            ps = " ".join(f"({a} {b})" for a, b in sorted(node.pairs))
            stack.extend([")", node.right, " ", node.left])
            out.append(f"(x ({ps}) ")
        elif isinstance(node, Rename):
            ps = " ".join(f"({a} {b})" for a, b in node.mapping)
            stack.extend([")", node.child])
            out.append(f"(o ({ps}) ")
        elif isinstance(node, Empty):
            out.append("(empty)")
        else:
            raise TypeError(node)
    return "".join(out)


# -- evaluation ------------------------------------------------------------


def _evaluate(root, k: int, on_join=None) -> LabeledGraph:
    """Shared evaluator for both grammars. Leaves are numbered in
    left-to-right order, so every subtree owns a contiguous vertex range."""
    order = postorder(root)
    lab: list[int] = []
    edges: set[tuple[int, int]] = set()
    span: dict[int, tuple[int, int]] = {}
    for node in order:
        if isinstance(node, (Leaf, NLeaf)):
            span[id(node)] = (len(lab), len(lab) + 1)
            lab.append(node.label)
        elif isinstance(node, (Union, Product)):
            lo, mid = span.pop(id(node.left))
            mid2, hi = span.pop(id(node.right))
            span[id(node)] = (lo, hi)
            if isinstance(node, Product) and node.pairs:
                for u in range(lo, mid):
                    for v in range(mid, hi):
                        if (lab[u], lab[v]) in node.pairs:
                            edges.add((u, v))
        elif isinstance(node, Relabel):
            lo, hi = span.pop(id(node.child))
            span[id(node)] = (lo, hi)
            for v in range(lo, hi):
                if lab[v] == node.src:
                    lab[v] = node.dst
        elif isinstance(node, Rename):
            lo, hi = span.pop(id(node.child))
            span[id(node)] = (lo, hi)
            m = dict(node.mapping)
            for v in range(lo, hi):
                lab[v] = m.get(lab[v], lab[v])
        elif isinstance(node, Join):
            lo, hi = span.pop(id(node.child))
            span[id(node)] = (lo, hi)
            us = [v for v in range(lo, hi) if lab[v] == node.a]
            ws = [v for v in range(lo, hi) if lab[v] == node.b]
            new = [(u, w) if u < w else (w, u) for u in us for w in ws]
            if on_join is not None:
                on_join(node, new, edges)
            edges.update(new)
        elif isinstance(node, Empty):
            raise ExprError("cannot evaluate an empty expression")
    return LabeledGraph(Graph(len(lab), tuple(edges)), tuple(lab), max(k, max(lab, default=1)))


def eval_cw(x: CwExpr) -> LabeledGraph:
    return _evaluate(x.root, x.k)


def eval_nlc(y: NlcExpr) -> LabeledGraph:
    return _evaluate(y.root, y.k)


def check_irredundant(x: CwExpr) -> bool:
    """True iff every edge of ``val(x)`` is created by exactly one join."""
    redundant = False

    def on_join(node, new, edges):
        nonlocal redundant
        if not redundant and any(e in edges for e in new):
            redundant = True

    _evaluate(x.root, x.k, on_join)
    return not redundant


# -- transformations -------------------------------------------------------


def node_labels(root) -> dict[int, frozenset]:
    """Labels present in the value of every node, keyed by ``id(node)``."""
    out: dict[int, frozenset] = {}
    for node in postorder(root):
        if isinstance(node, (Leaf, NLeaf)):
            out[id(node)] = frozenset((node.label,))
        elif isinstance(node, (Union, Product)):
            out[id(node)] = out[id(node.left)] | out[id(node.right)]
        elif isinstance(node, Relabel):
            s = out[id(node.child)]
            out[id(node)] = (s - {node.src}) | {node.dst} if node.src in s else s
        elif isinstance(node, Rename):
            m = dict(node.mapping)
            out[id(node)] = frozenset(m.get(a, a) for a in out[id(node.child)])
        elif isinstance(node, Join):
            out[id(node)] = out[id(node.child)]
        else:
            out[id(node)] = frozenset()
    return out


def nlc_to_cw(y: NlcExpr) -> CwExpr:
    """Equivalent clique-width expression over labels ``1..2k``.

    The right operand of a product is moved onto the auxiliary labels
    ``k+1..2k``, the product pairs become joins, and the auxiliary labels are
    folded back.  Renames go through the auxiliary block as well, so
    arbitrary (non-injective) maps need no extra labels.
    """
    k = y.k
    labels = node_labels(y.root)
    conv: dict[int, object] = {}
    for node in postorder(y.root):
        if isinstance(node, NLeaf):
            out = Leaf(node.label)
        elif isinstance(node, Product):
            left = conv.pop(id(node.left))
            right = conv.pop(id(node.right))
            lset, rset = labels[id(node.left)], labels[id(node.right)]
            for t in sorted(rset):
                right = Relabel(t, k + t, right)
            out = Union(left, right)
            for s, t in sorted(node.pairs):
                if s in lset and t in rset:
                    out = Join(s, k + t, out)
            for t in sorted(rset):
                out = Relabel(k + t, t, out)
        elif isinstance(node, Rename):
            out = conv.pop(id(node.child))
            moved = set()
            for a in sorted(labels[id(node.child)]):
                b = node.image(a)
                if b != a:
                    out = Relabel(a, k + b, out)
                    moved.add(b)
            for b in sorted(moved):
                out = Relabel(k + b, b, out)
        else:
            raise TypeError(node)
        conv[id(node)] = out
    return CwExpr(conv[id(y.root)], 2 * k)


def restrict_induced(x: CwExpr, keep: Iterable[int]) -> CwExpr:
    """Expression for the subgraph of ``val(x)`` induced by ``keep``
    (vertex indices in leaf order); the kept vertices keep their relative
    order."""
    keep = set(keep)
    n = x.n
    bad = [v for v in keep if not (isinstance(v, int) and 0 <= v < n)]
    if bad:
        raise ExprError(f"unknown vertex {bad[0]}")
    if not keep:
        raise ExprError("cannot restrict to an empty vertex set")
    built: dict[int, object] = {}
    idx = 0
    for node in postorder(x.root):
        if isinstance(node, Leaf):
            built[id(node)] = node if idx in keep else Empty()
            idx += 1
        elif isinstance(node, Union):
            left = built.pop(id(node.left))
            right = built.pop(id(node.right))
            if isinstance(left, Empty):
                built[id(node)] = right
            elif isinstance(right, Empty):
                built[id(node)] = left
            elif left is node.left and right is node.right:
                built[id(node)] = node
            else:
                built[id(node)] = Union(left, right)
        else:
            child = built.pop(id(node.child))
            if isinstance(child, Empty) or child is node.child:
                built[id(node)] = child if isinstance(child, Empty) else node
            else:
                built[id(node)] = type(node)(*_unary_args(node), child)
    return CwExpr(built[id(x.root)], x.k)


def _unary_args(node):
    return (node.src, node.dst) if isinstance(node, Relabel) else (node.a, node.b)


def subexpressions(x: CwExpr) -> list[CwExpr]:
    """Every node of ``x`` as its own expression, in post-order."""
    return [CwExpr(node, x.k) for node in postorder(x.root)]
