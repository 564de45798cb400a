"""``cwcount`` command line."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import counting, oracle
from .counting import CountReport
from .dp.circuit import emit_circuit, write_circuit
from .expr import CwExpr, eval_cw, nlc_to_cw, parse_cw, parse_nlc
from .formats import read_gr, read_matrix, read_td, write_leaf_map
from .pipeline import euler_preprocess

CW_QUERIES = ("ham-cycles", "ham-paths", "longest-path", "longest-cycle", "cycle-covers")
EXIT_INPUT = 1
EXIT_MISMATCH = 3


class CheckFailed(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc.strerror}") from None


def _load_cw(args) -> CwExpr:
    if getattr(args, "cw", None):
        return parse_cw(_read(args.cw))
    if getattr(args, "nlc", None):
        return nlc_to_cw(parse_nlc(_read(args.nlc)))
    raise ValueError("an expression is required (--cw or --nlc)")


def _load_graph(args):
    if not getattr(args, "graph", None):
        raise ValueError("--graph is required")
    g = read_gr(_read(args.graph))
    td = read_td(_read(args.td)) if getattr(args, "td", None) else None
    return g, td


def _load_matrix(args):
    if not getattr(args, "matrix", None):
        raise ValueError("--matrix is required")
    return read_matrix(_read(args.matrix))


def _cw_report(quantity: str, x: CwExpr, backend: str) -> CountReport:
    if quantity == "ham-cycles":
        return counting.count_ham_cycles(x, backend)
    if quantity == "ham-paths":
        return counting.count_ham_paths(x, backend)
    if quantity == "cycle-covers":
        return counting.count_cycle_covers(x, backend)
    return counting.count_longest(x, quantity.split("-")[1], backend)


def _oracle_report(quantity: str, args) -> CountReport:
    if quantity in CW_QUERIES:
        g = eval_cw(_load_cw(args)).graph
        if quantity == "ham-cycles":
            return CountReport(quantity, oracle.brute_ham(g, "cycle"))
        if quantity == "ham-paths":
            return CountReport(quantity, oracle.brute_ham(g, "path"))
        if quantity == "cycle-covers":
            return CountReport(quantity, oracle.brute_cycle_covers(g))
        kind = quantity.split("-")[1]
        length, value = oracle.brute_longest(g, kind)
        return CountReport(quantity, value, length=length)
    if quantity == "euler":
        g, _ = _load_graph(args)
        conv = "directed" if args.directed else "undirected"
        return CountReport(
            "euler-tours",
            oracle.brute_euler_tours(g, conv),
            counting.TOURS_DIRECTED if args.directed else counting.TOURS_UNDIRECTED,
        )
    if quantity == "pm":
        return CountReport("perfect-matchings", oracle.permanent(_load_matrix(args)), counting.PERMANENT)
    raise ValueError(f"no oracle for {quantity!r}")


def _emit(report: CountReport, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(report.as_json()) + "\n")
        return
    line = f"{report.quantity}: {report.value}"
    if report.length is not None:
        line += f" (length {report.length})"
    out.write(f"{line}\n  convention: {report.convention}\n")


def _check(report: CountReport, expected: CountReport) -> None:
    if (report.value, report.length) != (expected.value, expected.length):
        raise CheckFailed(
            f"oracle mismatch for {report.quantity}: got {report.value}"
            f" (length {report.length}), oracle says {expected.value}"
            f" (length {expected.length})"
        )


def _run(args, out) -> int:
    cmd = args.command
    if cmd in CW_QUERIES:
        report = _cw_report(cmd, _load_cw(args), args.backend)
        if args.check_oracle:
            _check(report, _oracle_report(cmd, args))
        _emit(report, args.format, out)
    elif cmd == "euler":
        g, td = _load_graph(args)
        report = counting.count_euler_tours(g, td, args.directed, args.backend)
        if args.check_oracle:
            _check(report, _oracle_report("euler", args))
        _emit(report, args.format, out)
    elif cmd == "pm":
        report = counting.count_bipartite_pm(_load_matrix(args), args.backend)
        if args.check_oracle:
            _check(report, _oracle_report("pm", args))
        _emit(report, args.format, out)
    elif cmd == "oracle":
        _emit(_oracle_report(args.quantity, args), args.format, out)
    elif cmd == "compile":
        circuit = emit_circuit(_load_cw(args))
        Path(args.out).write_text(write_circuit(circuit))
        info = circuit.report()
        if args.format == "json":
            out.write(json.dumps({"out": args.out, **info}) + "\n")
        else:
            out.write(f"wrote {args.out}: {info['gates']} gates, depth {info['depth']},"
                      f" degree {info['degree']}\n")
    elif cmd == "pipeline":
        g, td = _load_graph(args)
        x, leaf_edges = euler_preprocess(g, td)
        Path(args.out).write_text(str(x) + "\n")
        side = args.out + ".map"
        Path(side).write_text(write_leaf_map(leaf_edges))
        info = {"out": args.out, "map": side, "labels": x.k, "leaves": x.n}
        if args.format == "json":
            out.write(json.dumps(info) + "\n")
        else:
            out.write(f"wrote {args.out} ({x.n} leaves, {x.k} labels) and {side}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=("direct", "interp"), default=argparse.SUPPRESS,
                        help="join transition backend (default: direct)")
    common.add_argument("--check-oracle", action="store_true", default=argparse.SUPPRESS,
                        help="cross-check against brute force; exit 3 on mismatch")
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="cwcount", parents=[common],
                                description="Exact counting on clique-width expressions.")
    sub = p.add_subparsers(dest="command", required=True)

    def cw_inputs(sp):
        grp = sp.add_mutually_exclusive_group(required=True)
        grp.add_argument("--cw", help="clique-width expression file")
        grp.add_argument("--nlc", help="NLC-width expression file")

    def graph_inputs(sp):
        sp.add_argument("--graph", required=True, help=".gr graph file")
        sp.add_argument("--td", help="PACE .td tree decomposition (default: heuristic)")

    for name in CW_QUERIES:
        cw_inputs(sub.add_parser(name, parents=[common], help=f"count {name}"))
    e = sub.add_parser("euler", parents=[common], help="count Euler tours")
    graph_inputs(e)
    e.add_argument("--directed", action="store_true", help="count edge sequences")
    m = sub.add_parser("pm", parents=[common], help="perfect matchings of a bipartite graph")
    m.add_argument("--matrix", required=True, help="biadjacency matrix file")
    c = sub.add_parser("compile", parents=[common], help="emit the arithmetic circuit")
    cw_inputs(c)
    c.add_argument("--out", required=True)
    pl = sub.add_parser("pipeline", parents=[common], help="expression for L(3-subdivision)")
    graph_inputs(pl)
    pl.add_argument("--out", required=True)
    o = sub.add_parser("oracle", parents=[common], help="brute-force reference counts")
    o.add_argument("quantity", choices=CW_QUERIES + ("euler", "pm"))
    o.add_argument("--cw")
    o.add_argument("--nlc")
    o.add_argument("--graph")
    o.add_argument("--td")
    o.add_argument("--matrix")
    o.add_argument("--directed", action="store_true")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    for name, default in (("backend", "direct"), ("check_oracle", False), ("format", "text")):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return _run(args, out)
    except CheckFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
