"""Number of ways a join merges a group of components into one component.

Under a join of labels ``a`` and ``b`` only component ends carrying ``a``
or ``b`` can receive new edges.  The blocks that can take part are

* isolated vertices labelled ``a`` or ``b`` (two free slots, one vertex),
* paths with both ends ``a`` (or both ``b``),
* paths with one end ``a`` and the other ``b``,
* paths with one end in ``{a, b}`` and the other end on an unrelated label;
  these can only sit at an end of the merged path.

Chaining blocks with ``a``-``b`` edges, the blocks with equal ends must
alternate ``a, b, a, ...`` while ``a``-``b`` paths may be interleaved
freely.  Counting ordered, oriented chains gives the base count

    C(q + ba + bb, q) * q! * ba! * bb! * 2**(pa + pb)

(``q`` mixed ``a``-``b`` paths, ``ba``/``bb`` equal-ended blocks of each
label, ``pa``/``pb`` of which are real paths and can be flipped).  Edge
sets are then obtained by dividing out the symmetries of a chain, with the
divisors frozen below.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Mapping

from .. import pathtypes as pt

# Divisors turning ordered chain counts into edge-set counts.  They are
# reproduced by cwcount.dp.calibration against the merge oracle.
PATH_SAME_DIVISOR = 2  # path with equal end labels: reversal is a different chain
PATH_MIXED_DIVISOR = 1  # a-b path: two start labels, halved by reversal
PATH_ONE_END_DIVISOR = 1  # the outward end is pinned, nothing to divide
PATH_TWO_ENDS_DIVISOR = 1  # both outward ends pinned; fix which sits left
CYCLE_DIVISOR = "blocks"  # rotations of the cyclic chain: divide by block count
NO_CYCLE_FROM_TWO_SINGLES = True  # two isolated vertices would need a double edge

FROZEN_CONSTANTS = {
    "single": 1,
    "path-same": Fraction(1, PATH_SAME_DIVISOR),
    "path-mixed": Fraction(1, PATH_MIXED_DIVISOR),
    "path-one-end": Fraction(1, PATH_ONE_END_DIVISOR),
    "path-two-ends": Fraction(1, PATH_TWO_ENDS_DIVISOR),
    "cycle": CYCLE_DIVISOR,
    "cycle-two-singles": 0 if NO_CYCLE_FROM_TWO_SINGLES else None,
}


class MalformedAllocation(ValueError):
    pass


@dataclass(frozen=True)
class Blocks:
    """An allocation sorted by the role its blocks play under a join."""

    a: int
    b: int
    sa: int = 0
    sb: int = 0
    pa: int = 0
    pb: int = 0
    q: int = 0
    ends: tuple = ()  # (active label, outward label) per one-ended block

    @property
    def ba(self) -> int:
        return self.sa + self.pa

    @property
    def bb(self) -> int:
        return self.sb + self.pb

    @property
    def size(self) -> int:
        return self.sa + self.sb + self.pa + self.pb + self.q + len(self.ends)

    def beta(self, label: int) -> int:
        return self.ba if label == self.a else self.bb


def role_blocks(alpha: Mapping[int, int], a: int, b: int) -> Blocks:
    """Sort the blocks of ``alpha`` by role; raises if one cannot be joined."""
    counts = dict(sa=0, sb=0, pa=0, pb=0, q=0)
    ends = []
    for code, mult in sorted(alpha.items()):
        if mult < 0:
            raise MalformedAllocation("negative multiplicity")
        if not mult:
            continue
        if code == pt.EMPTY:
            raise MalformedAllocation("a cycle cannot be joined")
        i, j = pt.ends(code)
        if pt.is_single(code):
            if i == a:
                counts["sa"] += mult
            elif i == b:
                counts["sb"] += mult
            else:
                raise MalformedAllocation(f"{pt.decode(code)} is untouched by the join")
        elif {i, j} == {a, b}:
            counts["q"] += mult
        elif i == j:
            if i == a:
                counts["pa"] += mult
            elif i == b:
                counts["pb"] += mult
            else:
                raise MalformedAllocation(f"{pt.decode(code)} is untouched by the join")
        elif i in (a, b) or j in (a, b):
            active, outward = (i, j) if i in (a, b) else (j, i)
            ends.extend([(active, outward)] * mult)
        else:
            raise MalformedAllocation(f"{pt.decode(code)} is untouched by the join")
    return Blocks(a, b, ends=tuple(ends), **counts)


def chain_base(bl: Blocks) -> int:
    """Ordered, oriented arrangements of the inner blocks for one fixed
    alternation pattern."""
    q, ba, bb = bl.q, bl.ba, bl.bb
    return comb(q + ba + bb, q) * factorial(q) * factorial(ba) * factorial(bb) * 2 ** (bl.pa + bl.pb)


def shape_of(bl: Blocks) -> list[tuple[str, int]]:
    """Which merged components the blocks can form, with the class name
    used for calibration: list of ``(class, target type)``."""
    a, b = bl.a, bl.b
    out: list[tuple[str, int]] = []
    if bl.size == 0:
        return out
    if bl.size == 1 and (bl.sa or bl.sb):
        out.append(("single", pt.single(a if bl.sa else b)))
        return out
    ne = len(bl.ends)
    if ne > 2:
        return out
    if ne == 0:
        if bl.ba == bl.bb:
            out.append(("path-mixed", pt.pair(a, b)))
            out.append(("cycle", pt.EMPTY))
        elif bl.ba == bl.bb + 1:
            out.append(("path-same", pt.pair(a, a)))
        elif bl.bb == bl.ba + 1:
            out.append(("path-same", pt.pair(b, b)))
    elif ne == 1:
        (x, c), = bl.ends
        y = b if x == a else a
        if bl.ba == bl.bb:
            out.append(("path-one-end", pt.pair(c, x)))
        elif bl.beta(y) == bl.beta(x) + 1:
            out.append(("path-one-end", pt.pair(c, y)))
    else:
        (x, c), (x2, d) = bl.ends
        if x == x2:
            y = b if x == a else a
            ok = bl.beta(y) == bl.beta(x) + 1
        else:
            ok = bl.ba == bl.bb
        if ok:
            out.append(("path-two-ends", pt.pair(c, d)))
    return out


def w_targets(alpha: Mapping[int, int], join: tuple[int, int]) -> dict[int, int]:
    """All nonzero ``W`` values for ``alpha``: target type -> edge-set count."""
    alpha = {c: m for c, m in alpha.items() if m}
    if sum(alpha.values()) == 1:
        (code,) = alpha
        a, b = join
        if code == pt.EMPTY or not _touches(code, a, b):
            return {code: 1}
    bl = role_blocks(alpha, *join)
    base = chain_base(bl)
    out: dict[int, int] = {}
    for cls, target in shape_of(bl):
        if cls == "single":
            w = 1
        elif cls == "cycle":
            if NO_CYCLE_FROM_TWO_SINGLES and bl.size == 2 and bl.sa == 1 and bl.sb == 1:
                continue
            w = Fraction(base, bl.size)
        else:
            w = base * FROZEN_CONSTANTS[cls]
        w = Fraction(w)
        if w.denominator != 1:
            raise ArithmeticError(f"non-integral W for {alpha}: {w}")
        if w:
            out[target] = int(w)
    return out


def w_alpha(alpha: Mapping[int, int], target: int, join: tuple[int, int]) -> int:
    """Ways to glue exactly the blocks of ``alpha`` into one component of
    type ``target`` using new ``join`` edges."""
    return w_targets(alpha, join).get(target, 0)


def _touches(code: int, a: int, b: int) -> bool:
    i, j = pt.ends(code)
    return i in (a, b) or j in (a, b)
