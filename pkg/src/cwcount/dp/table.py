"""Sparse count tables and the leaf, union and relabel transitions."""

from __future__ import annotations

from .. import kernels
from .. import pathtypes as pt


class TableError(ValueError):
    pass


class StateTable:
    """Census of path-cycle covers: allocation -> number of edge subsets.

    Keys are sorted tuples of type codes (see :mod:`cwcount.pathtypes`).
    Zero counts are never stored.  ``n`` is the number of vertices of the
    underlying graph; every stored cover spans all of them, so ``n`` is also
    the exact vertex usage of every key.
    """

    __slots__ = ("entries", "n", "k")

    def __init__(self, entries: dict, n: int, k: int):
        self.entries = {key: v for key, v in entries.items() if v}
        self.n = n
        self.k = k

    def __getitem__(self, key) -> int:
        return self.entries.get(tuple(key), 0)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def items(self):
        return self.entries.items()

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateTable):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __repr__(self) -> str:
        body = ", ".join(f"[{pt.describe(k)}]: {v}" for k, v in sorted(self.entries.items()))
        return f"StateTable(n={self.n}, {{{body}}})"

    def describe(self) -> dict[str, int]:
        return {pt.describe(k): v for k, v in sorted(self.entries.items())}


def leaf_state(a: int, k: int) -> StateTable:
    if not 1 <= a <= k:
        raise TableError(f"label {a} out of range [1, {k}]")
    return StateTable({(pt.single(a),): 1}, 1, k)


def union_state(s1: StateTable, s2: StateTable) -> StateTable:
    if s1.k != s2.k:
        raise TableError(f"label bounds differ: {s1.k} vs {s2.k}")
    return StateTable(kernels.convolve(s1.entries, s2.entries), s1.n + s2.n, s1.k)


def rho_state(s: StateTable, a: int, b: int) -> StateTable:
    if a == b:
        raise TableError("relabel labels must differ")
    codes = {c for key in s.entries for c in key}
    code_map = {c: pt.relabel(c, a, b) for c in codes}
    code_map = {c: d for c, d in code_map.items() if c != d}
    if not code_map:
        return s
    return StateTable(kernels.remap(s.entries, code_map), s.n, s.k)
