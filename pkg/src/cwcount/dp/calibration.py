"""Recover the chain-symmetry divisors of :mod:`cwcount.dp.walpha` from
the merge oracle.

For every small group of blocks the oracle count is divided by the chain
base count (times the block count for cycles).  Each merge class must give
one ratio across all its cases; that ratio is the calibrated constant.
The run also lists where the literal bracket conditions disagree with
the oracle about which merges exist.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .. import oracle
from .. import pathtypes as pt
from . import walpha

A, B = 1, 2
C, D = 3, 4

BLOCK_POOL = (
    pt.single(A),
    pt.single(B),
    pt.same_pair(A),
    pt.same_pair(B),
    pt.pair(A, B),
    pt.pair(A, C),
    pt.pair(B, C),
    pt.pair(A, D),
    pt.pair(B, D),
)


def _vertices(code: int) -> int:
    if pt.is_single(code):
        return 1
    i, j = pt.ends(code)
    return 2 if i == j else 3


def candidate_groups(max_blocks: int = 4, max_vertices: int = 9):
    for r in range(1, max_blocks + 1):
        for group in combinations_with_replacement(BLOCK_POOL, r):
            if sum(_vertices(c) for c in group) <= max_vertices:
                yield group


def candidate_targets():
    return sorted({pt.EMPTY, *(pt.pair(i, j) for i in (A, B, C, D) for j in (A, B, C, D)),
                   pt.single(A), pt.single(B)})


def literal_bracket(alpha: dict, target: int) -> bool:
    """Bracket conditions read literally (either assignment of the
    two join labels), with unlisted types required to be absent."""
    for a, b in ((A, B), (B, A)):
        if _literal_bracket_oriented(alpha, target, a, b):
            return True
    return False


def _literal_bracket_oriented(alpha, target, a, b) -> bool:
    def al(code):
        return alpha.get(code, 0)

    def beta(x):
        return al(pt.single(x)) + al(pt.same_pair(x))

    q = al(pt.pair(a, b))
    allowed = {pt.single(a), pt.single(b), pt.same_pair(a), pt.same_pair(b), pt.pair(a, b)}

    def only(extra=()):
        return all(c in allowed or c in extra for c, m in alpha.items() if m)

    if target == pt.EMPTY:
        return only() and beta(a) == beta(b)
    if target == pt.pair(a, b):
        return only() and beta(a) == beta(b)
    if target == pt.single(a):
        return only() and al(pt.single(a)) == 1 and q == 0 and sum(alpha.values()) == 1
    if target == pt.same_pair(a):
        return only() and beta(a) == beta(b) + 1
    i, j = pt.ends(target)
    if pt.is_single(target):
        return False
    if i == j and i not in (a, b):
        return (only({pt.pair(i, a)}) and al(pt.pair(i, a)) == 2 and beta(a) == beta(b) + 1) or (
            only({pt.pair(i, a), pt.pair(i, b)})
            and al(pt.pair(i, a)) == 1 and al(pt.pair(i, b)) == 1 and beta(a) == beta(b)
        )
    if a in (i, j) and b not in (i, j):
        other = j if i == a else i
        return (only({pt.pair(other, a)}) and al(pt.pair(other, a)) == 1 and beta(a) == beta(b)) or (
            only({pt.pair(other, b)}) and al(pt.pair(other, b)) == 1 and beta(a) == beta(b) + 1
        )
    if a not in (i, j) and b not in (i, j):
        for x, y in ((i, j), (j, i)):
            if only({pt.pair(x, a), pt.pair(a, y)}) and al(pt.pair(x, a)) == 1 and al(pt.pair(a, y)) == 1 \
                    and beta(a) == beta(b) + 1:
                return True
            if only({pt.pair(x, a), pt.pair(b, y)}) and al(pt.pair(x, a)) == 1 and al(pt.pair(b, y)) == 1 \
                    and beta(a) == beta(b):
                return True
    return False


@dataclass
class CalibrationResult:
    constants: dict
    cases: dict = field(default_factory=dict)  # class -> list of (group, target, oracle, base)
    inconsistent: list = field(default_factory=list)
    bracket_disagreements: list = field(default_factory=list)
    unexplained: list = field(default_factory=list)  # oracle > 0 but no formula class

    def table(self) -> str:
        lines = ["class           constant   cases  example"]
        for cls in sorted(self.cases):
            rows = self.cases[cls]
            g, t, o, base = rows[0]
            ex = "+".join(str(pt.decode(c)) for c in g) + f" -> {pt.decode(t)}: oracle {o}, base {base}"
            lines.append(f"{cls:<15} {str(self.constants[cls]):<10} {len(rows):>5}  {ex}")
        return "\n".join(lines)


def calibrate(max_blocks: int = 4, max_vertices: int = 9) -> CalibrationResult:
    ratios: dict[str, set] = defaultdict(set)
    cases: dict[str, list] = defaultdict(list)
    excluded = []
    disagreements = []
    unexplained = []
    targets = candidate_targets()
    for group in candidate_groups(max_blocks, max_vertices):
        alpha: dict[int, int] = defaultdict(int)
        for c in group:
            alpha[c] += 1
        alpha = dict(alpha)
        bl = walpha.role_blocks(alpha, A, B)
        shapes = dict((t, cls) for cls, t in walpha.shape_of(bl))
        base = walpha.chain_base(bl)
        for target in targets:
            got = oracle.merge_oracle(group, (A, B), target)
            if bool(got) != literal_bracket(alpha, target):
                disagreements.append((group, target, got))
            cls = shapes.get(target)
            if cls is None:
                if got:
                    unexplained.append((group, target, got))
                continue
            if cls == "cycle" and bl.size == 2 and bl.sa == 1 and bl.sb == 1:
                excluded.append((group, got))
                continue
            if got == 0 and cls != "cycle":
                unexplained.append((group, target, got))
            scale = bl.size if cls == "cycle" else 1
            ratios[cls].add(Fraction(got * scale, base))
            cases[cls].append((group, target, got, base))
    constants = {}
    inconsistent = []
    for cls, rs in ratios.items():
        if len(rs) != 1:
            inconsistent.append((cls, sorted(rs)))
            continue
        (r,) = rs
        constants[cls] = "blocks" if cls == "cycle" and r == 1 else r
    if excluded:
        constants["cycle-two-singles"] = 0 if all(g == 0 for _, g in excluded) else None
    if "single" in constants:
        constants["single"] = 1 if constants["single"] == 1 else constants["single"]
    return CalibrationResult(constants, dict(cases), inconsistent, disagreements, unexplained)


def main() -> None:  # pragma: no cover - manual entry point
    res = calibrate()
    print(res.table())
    print("inconsistent:", res.inconsistent)
    print("unexplained:", res.unexplained)
    print(f"bracket disagreements with oracle: {len(res.bracket_disagreements)}")
    for g, t, o in res.bracket_disagreements[:40]:
        print("  ", "+".join(str(pt.decode(c)) for c in g), "->", pt.decode(t), "oracle", o)


if __name__ == "__main__":  # pragma: no cover
    main()
