"""The join transition.

A join of labels ``a`` and ``b`` turns a cover with census ``M`` into a
cover with census ``M'`` by adding a set of new ``a``-``b`` edges.  The
number of such edge sets only depends on the components whose ends carry
``a`` or ``b`` (the *active* part of ``M``), provided the join is
irredundant.  Each resulting cover partitions the active components into
groups, each glued into one new component in ``W`` ways
(:func:`cwcount.dp.walpha.w_targets`).

Two interchangeable ways of summing over those partitions:

``direct``
    recursion on the group holding the first remaining block; choosing its
    companions among identical blocks supplies the binomial factors.
``interp``
    the exponential generating function
    ``prod exp(W * x_t' * y^alpha / alpha!)`` over all candidate groups,
    Kronecker-substituted into one variable with exact rational
    coefficients; the count is ``prod c_t! * [y^c x^c'] ...``.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial

from .. import kernels
from .. import pathtypes as pt
from .table import StateTable
from .walpha import w_targets

INTERP_BLOCK_LIMIT = 14


class InterpLimitError(ValueError):
    pass


def active_codes(codes, a: int, b: int) -> frozenset:
    out = set()
    for c in codes:
        if c == pt.EMPTY:
            continue
        i, j = pt.ends(c)
        if i in (a, b) or j in (a, b):
            out.add(c)
    return frozenset(out)


def _sub_multisets(counts: tuple[tuple[int, int], ...], first_at_least_one: bool):
    ranges = [range(1 if (first_at_least_one and idx == 0) else 0, m + 1) for idx, (_, m) in enumerate(counts)]
    for pick in product(*ranges):
        if any(pick):
            yield pick


@lru_cache(maxsize=None)
def _groups(counts: tuple[tuple[int, int], ...], join: tuple[int, int]) -> dict:
    """``{produced allocation: number of edge sets}`` for the active blocks
    described by ``counts`` (sorted ``(code, multiplicity)`` pairs)."""
    if not counts:
        return {(): 1}
    out: Counter = Counter()
    codes = [c for c, _ in counts]
    for pick in _sub_multisets(counts, True):
        alpha = {c: m for c, m in zip(codes, pick) if m}
        targets = w_targets(alpha, join)
        if not targets:
            continue
        # block 0 of the first code is in the group; choose its companions
        ways = comb(counts[0][1] - 1, pick[0] - 1)
        for (_, have), take in zip(counts[1:], pick[1:]):
            ways *= comb(have, take)
        rest = tuple((c, m - t) for (c, m), t in zip(counts, pick) if m - t)
        sub = _groups(rest, join)
        for target, w in targets.items():
            for produced, cnt in sub.items():
                out[tuple(sorted(produced + (target,)))] += ways * w * cnt
    return dict(out)


@lru_cache(maxsize=None)
def direct_row(active: tuple[int, ...], a: int, b: int) -> dict:
    counts = tuple(sorted(Counter(active).items()))
    return _groups(counts, (a, b))


@lru_cache(maxsize=None)
def interp_row(active: tuple[int, ...], a: int, b: int) -> dict:
    if len(active) > INTERP_BLOCK_LIMIT:
        raise InterpLimitError(
            f"interp backend limit: {len(active)} active blocks > {INTERP_BLOCK_LIMIT}"
        )
    c = Counter(active)
    ycodes = sorted(c)
    total = len(active)
    cands = []
    for pick in _sub_multisets(tuple((t, c[t]) for t in ycodes), False):
        alpha = {t: m for t, m in zip(ycodes, pick) if m}
        afact = 1
        for m in pick:
            afact *= factorial(m)
        for target, w in w_targets(alpha, (a, b)).items():
            cands.append((pick, target, Fraction(w, afact)))
    xcodes = sorted({t for _, t, _ in cands})
    bounds = [c[t] for t in ycodes] + [total] * len(xcodes)
    place = []
    p = 1
    for bound in bounds:
        place.append(p)
        p *= 2 * (bound + 1)
    radix = [2 * (bd + 1) for bd in bounds]
    xpos = {t: len(ycodes) + i for i, t in enumerate(xcodes)}

    def in_range(e: int) -> bool:
        for r, bound in zip(radix, bounds):
            e, digit = divmod(e, r)
            if digit > bound:
                return False
        return True

    poly = {0: Fraction(1)}
    for pick, target, coef in cands:
        step = sum(m * place[i] for i, m in enumerate(pick)) + place[xpos[target]]
        dmax = min(c[t] // m for t, m in zip(ycodes, pick) if m)
        series = []
        term = Fraction(1)
        for d in range(dmax + 1):
            series.append((d * step, term))
            term = term * coef / (d + 1)
        new: dict[int, Fraction] = {}
        for e, v in poly.items():
            for shift, s in series:
                e2 = e + shift
                if shift and not in_range(e2):
                    continue
                new[e2] = new.get(e2, 0) + v * s
        poly = new

    ytarget = sum(c[t] * place[i] for i, t in enumerate(ycodes))
    scale = 1
    for t in ycodes:
        scale *= factorial(c[t])
    ymod = place[len(ycodes)] if xcodes else p
    out = {}
    for e, v in poly.items():
        if e % ymod != ytarget:
            continue
        xe = e // ymod
        produced = []
        for t in xcodes:
            xe, cnt = divmod(xe, radix[xpos[t]])
            produced.extend([t] * cnt)
        val = v * scale
        if val.denominator != 1:
            raise ArithmeticError("non-integral coefficient")
        if val:
            out[tuple(sorted(produced))] = int(val)
    return out


ROWS = {"direct": direct_row, "interp": interp_row}


def _eta(s: StateTable, i: int, j: int, row) -> StateTable:
    if i == j:
        raise ValueError("join labels must differ")
    codes = {c for key in s.entries for c in key}
    active = active_codes(codes, i, j)
    if not active:
        return s

    def row_of(act):
        return row(act, i, j)

    return StateTable(kernels.apply_rows(s.entries, active, row_of), s.n, s.k)


def eta_state_direct(s: StateTable, i: int, j: int) -> StateTable:
    return _eta(s, i, j, direct_row)


def eta_state_interp(s: StateTable, i: int, j: int) -> StateTable:
    return _eta(s, i, j, interp_row)
