"""Reading and writing the text formats used by the command line.

``.gr``   ``p cwc <n> <m>`` then ``e <u> <v>`` lines, vertices 1-indexed,
          ``c`` starts a comment line.
``.td``   PACE tree decompositions: ``s td <bags> <max bag> <n>``,
          ``b <id> <v>...`` and bag-tree edges ``<id> <id>``, 1-indexed.
matrix    first line ``n``, then ``n`` rows of ``0``/``1``.
"""

from __future__ import annotations

from .graph import Graph, GraphError, TreeDecomposition


class FormatError(ValueError):
    def __init__(self, msg: str, line: int = 0):
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line = line


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if parts and parts[0] != "c":
            yield no, parts


def _ints(parts, no):
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise FormatError("expected integers", no) from None


def read_gr(text: str) -> Graph:
    n = m = None
    edges = []
    for no, parts in _lines(text):
        if parts[0] == "p":
            if n is not None:
                raise FormatError("second problem line", no)
            if len(parts) != 4:
                raise FormatError("expected 'p cwc <n> <m>'", no)
            n, m = _ints(parts[2:], no)
            continue
        if n is None:
            raise FormatError("edge before problem line", no)
        body = parts[1:] if parts[0] == "e" else parts
        if len(body) != 2:
            raise FormatError("expected 'e <u> <v>'", no)
        u, v = _ints(body, no)
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(f"vertex out of range [1, {n}]", no)
        edges.append((u - 1, v - 1))
    if n is None:
        raise FormatError("missing problem line")
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    try:
        return Graph.from_edges(n, edges)
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def write_gr(g: Graph) -> str:
    lines = [f"p cwc {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def read_td(text: str) -> TreeDecomposition:
    header = None
    bags: dict[int, list[int]] = {}
    tree_edges = []
    for no, parts in _lines(text):
        if parts[0] == "s":
            if len(parts) != 5 or parts[1] != "td":
                raise FormatError("expected 's td <bags> <max bag> <n>'", no)
            header = _ints(parts[2:], no)
        elif parts[0] == "b":
            if header is None:
                raise FormatError("bag before solution line", no)
            vals = _ints(parts[1:], no)
            if not vals:
                raise FormatError("bag without id", no)
            bid = vals[0]
            if not 1 <= bid <= header[0]:
                raise FormatError(f"bag id {bid} out of range", no)
            if bid in bags:
                raise FormatError(f"bag {bid} given twice", no)
            if any(not 1 <= v <= header[2] for v in vals[1:]):
                raise FormatError("vertex out of range", no)
            bags[bid] = [v - 1 for v in vals[1:]]
        else:
            if header is None:
                raise FormatError("edge before solution line", no)
            vals = _ints(parts, no)
            if len(vals) != 2:
                raise FormatError("expected '<bag> <bag>'", no)
            tree_edges.append((vals[0] - 1, vals[1] - 1))
    if header is None:
        raise FormatError("missing solution line")
    nb = header[0]
    if sorted(bags) != list(range(1, nb + 1)):
        raise FormatError(f"expected bags 1..{nb}")
    return TreeDecomposition.build([bags[i] for i in range(1, nb + 1)], tree_edges)


def write_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags, 1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]))
    lines += [f"{i + 1} {j + 1}" for i, j in td.tree_edges]
    return "\n".join(lines) + "\n"


def read_matrix(text: str) -> list[list[int]]:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows:
        raise FormatError("empty matrix file")
    try:
        n = int(rows[0][0])
    except ValueError:
        raise FormatError("first line must be the dimension", 1) from None
    if len(rows[0]) != 1 or n < 0:
        raise FormatError("first line must be the dimension", 1)
    body = rows[1:]
    if len(body) != n:
        raise FormatError(f"expected {n} rows, found {len(body)}")
    out = []
    for no, row in enumerate(body, 2):
        if len(row) != n:
            raise FormatError("matrix must be square", no)
        if any(x not in ("0", "1") for x in row):
            raise FormatError("entries must be 0 or 1", no)
        out.append([int(x) for x in row])
    return out


def write_matrix(adj) -> str:
    return "\n".join([str(len(adj))] + [" ".join(str(int(x)) for x in row) for row in adj]) + "\n"


def write_leaf_map(edges) -> str:
    """Sidecar of the pipeline: ``<leaf-index> <u> <v>`` per leaf.  Leaf
    indices start at 0 (leaf order); ``u``, ``v`` are 1-indexed vertices of
    the subdivided graph, as in ``.gr`` files."""
    return "".join(f"{i} {u + 1} {v + 1}\n" for i, (u, v) in enumerate(edges))


def read_leaf_map(text: str) -> list[tuple[int, int]]:
    out = []
    for no, parts in _lines(text):
        i, u, v = _ints(parts, no)
        if i != len(out):
            raise FormatError("leaf indices must be consecutive", no)
        out.append((u - 1, v - 1))
    return out
