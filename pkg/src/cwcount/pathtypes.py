"""Component types and allocations.

A component of a path-cycle cover is summarised by the labels of its
endpoints: a cycle, an isolated vertex, a path whose two endpoints share a
label, or a path with two different endpoint labels.  Types are packed
into plain ints so that an allocation (a multiset of types) can be a sorted
tuple of ints, which hashes and merges quickly.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, NamedTuple

EMPTY = 0
_SINGLE = 1
_PAIR = 2


class PathType(NamedTuple):
    kind: str  # "cycle" | "single" | "pair"
    i: int = 0
    j: int = 0

    def __str__(self) -> str:
        if self.kind == "cycle":
            return "C"
        if self.kind == "single":
            return f"S{self.i}"
        return f"P{self.i}-{self.j}"


def single(i: int) -> int:
    return (i << 20) | (i << 4) | _SINGLE


def pair(i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return (i << 20) | (j << 4) | _PAIR


def same_pair(i: int) -> int:
    return pair(i, i)


def mixed_pair(i: int, j: int) -> int:
    if i == j:
        raise ValueError("mixed pair needs two different labels")
    return pair(i, j)


def kind(code: int) -> int:
    return code & 15


def ends(code: int) -> tuple[int, int]:
    return code >> 20, (code >> 4) & 0xFFFF


def is_single(code: int) -> bool:
    return code & 15 == _SINGLE


def is_path(code: int) -> bool:
    return code & 15 == _PAIR


def decode(code: int) -> PathType:
    if code == EMPTY:
        return PathType("cycle")
    i, j = ends(code)
    return PathType("single" if is_single(code) else "pair", i, j)


def encode(t: PathType) -> int:
    if t.kind == "cycle":
        return EMPTY
    if t.kind == "single":
        return single(t.i)
    return pair(t.i, t.j)


def all_types(k: int) -> list[int]:
    """Every type over labels ``1..k``: C(k,2) + 2k + 1 of them."""
    out = [EMPTY]
    for i in range(1, k + 1):
        out.append(single(i))
        for j in range(i, k + 1):
            out.append(pair(i, j))
    return out


def relabel(code: int, a: int, b: int) -> int:
    if code == EMPTY:
        return code
    i, j = ends(code)
    if i != a and j != a:
        return code
    i = b if i == a else i
    j = b if j == a else j
    return single(i) if is_single(code) else pair(i, j)


def make_allocation(types: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(types))


def min_vertices(alloc: Iterable[int]) -> int:
    """Fewest vertices a cover with this census can have."""
    total = 0
    for c in alloc:
        total += 3 if c == EMPTY else (1 if is_single(c) else 2)
    return total


def describe(alloc: Iterable[int]) -> str:
    """Text form ``S1:2,P1-2:1`` used in files and reports."""
    counts = Counter(alloc)
    return ",".join(f"{decode(c)}:{counts[c]}" for c in sorted(counts))


def parse_descriptor(text: str) -> tuple[int, ...]:
    out: list[int] = []
    for part in filter(None, text.strip().split(",")):
        name, _, count = part.partition(":")
        name = name.strip()
        if name == "C":
            code = EMPTY
        elif name.startswith("S"):
            code = single(int(name[1:]))
        elif name.startswith("P"):
            i, j = name[1:].split("-")
            code = pair(int(i), int(j))
        else:
            raise ValueError(f"bad type {name!r}")
        out.extend([code] * int(count or 1))
    return make_allocation(out)
