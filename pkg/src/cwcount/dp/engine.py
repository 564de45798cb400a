"""Bottom-up evaluation of count tables along a clique-width parse tree."""

from __future__ import annotations

from .. import kernels
from .. import pathtypes as pt
from ..expr import CwExpr, Join, Leaf, Relabel, Union, check_irredundant, postorder
from .eta import eta_state_direct, eta_state_interp
from .table import StateTable, leaf_state, rho_state, union_state

BACKENDS = {"direct": eta_state_direct, "interp": eta_state_interp}


class RedundantJoinError(ValueError):
    pass


def live_labels(x: CwExpr) -> dict[int, frozenset]:
    """Per node (by ``id``): labels that some ancestor join may still use."""
    live = {id(x.root): frozenset()}
    stack = [x.root]
    while stack:
        node = stack.pop()
        here = live[id(node)]
        if isinstance(node, Union):
            for ch in node.children:
                live[id(ch)] = here
                stack.append(ch)
        elif isinstance(node, Join):
            live[id(node.child)] = here | {node.a, node.b}
            stack.append(node.child)
        elif isinstance(node, Relabel):
            below = here - {node.src}
            if node.dst in here:
                below |= {node.src}
            live[id(node.child)] = below
            stack.append(node.child)
    return live


PRUNE_MODES = ("cycles", "ham-cycle", "ham-path", "longest-cycle", "longest-path")


def _pruner(mode: str, live: frozenset):
    """Key filter for a query. A component is *frozen* when it is a cycle
    or none of its end labels can take part in a later join; keys that can
    no longer grow into an answer of the query are dropped."""
    if mode not in PRUNE_MODES:
        raise ValueError(f"unknown prune mode {mode!r}")

    def frozen(code):
        if code == pt.EMPTY:
            return True
        i, j = pt.ends(code)
        return i not in live and j not in live

    def dead_end(code):
        if code == pt.EMPTY:
            return False
        i, j = pt.ends(code)
        return i not in live or j not in live

    if mode == "cycles":
        return lambda key: not any(dead_end(c) for c in key)
    if mode == "ham-cycle":
        def keep(key):
            if pt.EMPTY in key:
                return len(key) == 1
            return not any(dead_end(c) for c in key)
        return keep
    if mode == "ham-path":
        def keep(key):
            if pt.EMPTY in key:
                return False
            return len(key) == 1 or not any(frozen(c) for c in key)
        return keep

    want_cycle = mode == "longest-cycle"

    def keep(key):
        big = [c for c in key if not pt.is_single(c)]
        if len(big) < 2:
            return not (big and not want_cycle and big[0] == pt.EMPTY)
        if any(c == pt.EMPTY for c in big):
            return False
        if want_cycle:
            return not any(dead_end(c) for c in big)
        return not any(frozen(c) for c in big)
    return keep


def run_dp(x: CwExpr, backend: str = "direct", prune: str | None = None,
           trace: list | None = None) -> StateTable:
    """Count path-cycle covers of ``val(x)`` by census.

    With ``prune`` set, keys that cannot contribute to the named query are
    dropped along the way (the root entries for that query are unchanged).
    If ``trace`` is a list, ``(node, table)`` is appended for every node in
    post-order.
    """
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}")
    if not check_irredundant(x):
        raise RedundantJoinError("redundant join detected")
    eta = BACKENDS[backend]
    live = live_labels(x) if prune else None
    tables: dict[int, StateTable] = {}
    for node in postorder(x.root):
        if isinstance(node, Leaf):
            t = leaf_state(node.label, x.k)
        elif isinstance(node, Union):
            t = union_state(tables.pop(id(node.left)), tables.pop(id(node.right)))
        elif isinstance(node, Relabel):
            t = rho_state(tables.pop(id(node.child)), node.src, node.dst)
        elif isinstance(node, Join):
            t = eta(tables.pop(id(node.child)), node.a, node.b)
        else:
            raise TypeError(f"cannot run the DP on {type(node).__name__}")
        if prune:
            t = StateTable(kernels.filter_keys(t.entries, _pruner(prune, live[id(node)])), t.n, t.k)
        if trace is not None:
            trace.append((node, t))
        tables[id(node)] = t
    return tables[id(x.root)]
