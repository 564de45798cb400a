import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cwcount import pathtypes as pt
from cwcount.dp.circuit import Circuit, CircuitError, emit_circuit, read_circuit, write_circuit
from cwcount.dp.engine import RedundantJoinError, run_dp
from cwcount.expr import CwExpr, Leaf, parse_cw, postorder
from cwcount.library import random_cw

from helpers import k3_expr


def test_single_leaf():
    c = emit_circuit(CwExpr(Leaf(2), 2))
    assert c.gates == [("i", ())]
    assert c.output_values() == {(pt.single(2),): 1}
    assert c.report()["degree"] == 1


def test_triangle_gate_for_gate():
    x = k3_expr()
    c = emit_circuit(x)
    trace = []
    run_dp(x, trace=trace)
    vals = c.evaluate()
    assert len(c.node_gates) == len(trace)
    for gates, (_, table) in zip(c.node_gates, trace):
        assert {k: vals[g] for k, g in gates.items()} == table.entries
    assert c.output_values()[(pt.EMPTY,)] == 1


def test_only_sum_and_product_gates():
    x = random_cw(random.Random(5), 9, 3)
    assert {op for op, _ in emit_circuit(x).gates} <= {"i", "+", "*"}


@given(st.integers(1, 9), st.integers(1, 4), st.integers(0, 2**32))
@settings(max_examples=60, deadline=None)
def test_matches_dp_and_degree_bound(n, k, seed):
    x = random_cw(random.Random(seed), n, k)
    c = emit_circuit(x)
    assert c.output_values() == run_dp(x).entries
    assert c.report()["max_gate_degree"] <= n


def test_roundtrip():
    c = emit_circuit(k3_expr())
    text = write_circuit(c)
    assert text.startswith("c degree")
    back = read_circuit(text)
    assert back.gates == c.gates
    assert back.output_values() == c.output_values()


@pytest.mark.parametrize(
    "text, match",
    [
        ("i 0\ni 2\n", "consecutive"),
        ("i 0\n+ 1 0 5\n", "forward"),
        ("i 0\n- 1 0 0\n", "unknown gate"),
        ("i 0\n* 1 0\n", "arity"),
        ("i zero\n", "malformed"),
    ],
)
def test_read_errors(text, match):
    with pytest.raises(CircuitError, match=match):
        read_circuit(text)


def test_unknown_gate_in_evaluate():
    c = Circuit()
    c.add("-", 0, 0)
    with pytest.raises(CircuitError):
        c.evaluate()


def test_redundant_rejected():
    with pytest.raises(RedundantJoinError):
        emit_circuit(parse_cw("(e 1 2 (e 1 2 (u (v 1) (v 2))))"))


def test_node_gate_count():
    x = random_cw(random.Random(1), 7, 3)
    assert len(emit_circuit(x).node_gates) == len(postorder(x.root))
