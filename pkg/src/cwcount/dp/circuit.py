"""Monotone arithmetic circuits mirroring the DP.

Every table entry of every parse-tree node becomes a gate.  Leaves are the
constant-1 input, unions are products of child gates, relabels are sums,
and a join multiplies entries by transition constants.  Constants are
realized by repeated doubling with sum gates, so products only appear at
unions and the formal degree of a gate never exceeds the number of leaves
below it.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .. import pathtypes as pt
from ..expr import CwExpr, Join, Leaf, Relabel, Union, check_irredundant, postorder
from .engine import RedundantJoinError
from .eta import active_codes, direct_row


class CircuitError(ValueError):
    pass


@dataclass
class Circuit:
    """Gates are ``(op, args)`` with op ``"i"`` (constant 1), ``"k"``
    (integer constant, ``args = (value,)``), ``"*"`` or ``"+"`` (gate ids)."""

    gates: list = field(default_factory=list)
    outputs: list = field(default_factory=list)  # (gate id, allocation)
    node_gates: list = field(default_factory=list)  # per post-order node: {key: gate}

    def add(self, op: str, *args) -> int:
        self.gates.append((op, args))
        return len(self.gates) - 1

    def evaluate(self) -> list[int]:
        vals: list[int] = []
        for op, args in self.gates:
            if op == "i":
                vals.append(1)
            elif op == "k":
                vals.append(args[0])
            elif op == "*":
                vals.append(vals[args[0]] * vals[args[1]])
            elif op == "+":
                vals.append(sum(vals[a] for a in args))
            else:
                raise CircuitError(f"unknown gate {op!r}")
        return vals

    def degrees(self) -> list[int]:
        deg: list[int] = []
        for op, args in self.gates:
            if op in ("i", "k"):
                deg.append(1)
            elif op == "*":
                deg.append(deg[args[0]] + deg[args[1]])
            else:
                deg.append(max(deg[a] for a in args))
        return deg

    def depths(self) -> list[int]:
        dep: list[int] = []
        for op, args in self.gates:
            dep.append(0 if op in ("i", "k") else 1 + max(dep[a] for a in args))
        return dep

    def report(self) -> dict:
        deg = self.degrees()
        return {
            "gates": len(self.gates),
            "depth": max(self.depths(), default=0),
            "degree": max((deg[g] for g, _ in self.outputs), default=0),
            "max_gate_degree": max(deg, default=0),
        }

    def output_values(self) -> dict:
        vals = self.evaluate()
        return {alloc: vals[g] for g, alloc in self.outputs}


class _Builder:
    def __init__(self):
        self.c = Circuit()
        self._one = None
        self._scaled: dict[tuple[int, int], int] = {}

    def one(self) -> int:
        if self._one is None:
            self._one = self.c.add("i")
        return self._one

    def total(self, terms: list[int]) -> int:
        return terms[0] if len(terms) == 1 else self.c.add("+", *terms)

    def scale(self, g: int, coef: int) -> int:
        """``coef * g`` by doubling; only sum gates."""
        if coef == 1:
            return g
        hit = self._scaled.get((g, coef))
        if hit is not None:
            return hit
        parts = []
        power = g
        c = coef
        while True:
            if c & 1:
                parts.append(power)
            c >>= 1
            if not c:
                break
            power = self.c.add("+", power, power)
        out = self.total(parts)
        self._scaled[(g, coef)] = out
        return out


def emit_circuit(x: CwExpr) -> Circuit:
    if not check_irredundant(x):
        raise RedundantJoinError("redundant join detected")
    b = _Builder()
    gates: dict[int, dict] = {}
    for node in postorder(x.root):
        if isinstance(node, Leaf):
            out = {(pt.single(node.label),): b.one()}
        elif isinstance(node, Union):
            g1, g2 = gates.pop(id(node.left)), gates.pop(id(node.right))
            terms = defaultdict(list)
            for k1, a in g1.items():
                for k2, c in g2.items():
                    terms[tuple(sorted(k1 + k2))].append(b.c.add("*", a, c))
            out = {key: b.total(ts) for key, ts in terms.items()}
        elif isinstance(node, Relabel):
            terms = defaultdict(list)
            for key, g in gates.pop(id(node.child)).items():
                nk = pt.make_allocation(pt.relabel(c, node.src, node.dst) for c in key)
                terms[nk].append(g)
            out = {key: b.total(ts) for key, ts in terms.items()}
        elif isinstance(node, Join):
            child = gates.pop(id(node.child))
            active = active_codes({c for key in child for c in key}, node.a, node.b)
            terms = defaultdict(list)
            for key, g in child.items():
                act = tuple(c for c in key if c in active)
                inert = tuple(c for c in key if c not in active)
                if not act:
                    terms[key].append(g)
                    continue
                for produced, coef in direct_row(act, node.a, node.b).items():
                    terms[tuple(sorted(inert + produced))].append(b.scale(g, coef))
            out = {key: b.total(ts) for key, ts in terms.items()}
        else:
            raise TypeError(f"cannot compile {type(node).__name__}")
        b.c.node_gates.append(out)
        gates[id(node)] = out
    b.c.outputs = sorted((g, key) for key, g in gates[id(x.root)].items())
    return b.c


# -- file format -----------------------------------------------------------


def write_circuit(c: Circuit) -> str:
    r = c.report()
    lines = [f"c degree {r['degree']} depth {r['depth']} gates {r['gates']}"]
    for gid, (op, args) in enumerate(c.gates):
        lines.append(f"{op} {gid}" + "".join(f" {a}" for a in args))
    for g, alloc in c.outputs:
        lines.append(f"o {g} {pt.describe(alloc)}")
    return "\n".join(lines) + "\n"


def read_circuit(text: str) -> Circuit:
    c = Circuit()
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        op = parts[0]
        try:
            if op == "o":
                c.outputs.append((int(parts[1]), pt.parse_descriptor(" ".join(parts[2:]))))
                continue
            gid = int(parts[1])
            args = tuple(int(p) for p in parts[2:])
        except (IndexError, ValueError) as exc:
            raise CircuitError(f"line {lineno}: malformed gate") from exc
        if gid != len(c.gates):
            raise CircuitError(f"line {lineno}: gate ids must be consecutive from 0")
        if op not in ("i", "k", "*", "+"):
            raise CircuitError(f"line {lineno}: unknown gate {op!r}")
        if op == "i" and args or op == "k" and len(args) != 1:
            raise CircuitError(f"line {lineno}: wrong arity for {op!r}")
        if op == "*" and len(args) != 2 or op == "+" and not args:
            raise CircuitError(f"line {lineno}: wrong arity for {op!r}")
        if op in ("*", "+") and any(not 0 <= a < gid for a in args):
            raise CircuitError(f"line {lineno}: gate refers forward or out of range")
        c.gates.append((op, args))
    return c
