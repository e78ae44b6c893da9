"""Text formats for graphs (with optional rotations) and edge colorings.

Graph file::

    n m
    u v        (m lines, 0-indexed)
    rotations  (optional)
    ...        (n lines, cyclic neighbor order of vertex i)

Coloring file: one ``u v c`` line per colored edge.
"""
from __future__ import annotations

from pathlib import Path

from .graph import Graph, GraphError, PlaneEmbedding


class FormatError(GraphError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _ints(text: str, lineno: int) -> list[int]:
    try:
        return [int(t) for t in text.split()]
    except ValueError:
        raise FormatError(lineno, f"expected integers, got {text.strip()!r}") from None


def parse_graph(text: str) -> tuple[Graph, PlaneEmbedding | None]:
    lines = text.splitlines()
    if not lines:
        raise FormatError(1, "empty input")
    head = _ints(lines[0], 1)
    if len(head) != 2 or head[0] < 0 or head[1] < 0:
        raise FormatError(1, "header must be 'n m'")
    n, m = head
    if len(lines) < 1 + m:
        raise FormatError(len(lines) + 1, f"expected {m} edge lines")
    edges = []
    seen = set()
    for i in range(1, m + 1):
        pair = _ints(lines[i], i + 1)
        if len(pair) != 2:
            raise FormatError(i + 1, "edge line must be 'u v'")
        a, b = pair
        if not (0 <= a < n and 0 <= b < n):
            raise FormatError(i + 1, f"vertex out of range 0..{n - 1}")
        if a == b:
            raise FormatError(i + 1, f"self-loop at {a}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise FormatError(i + 1, f"parallel edge {key}")
        seen.add(key)
        edges.append((a, b))
    g = Graph(n, edges)
    rest = [(i + 1, ln) for i, ln in enumerate(lines) if i > m and ln.strip()]
    if not rest:
        return g, None
    lineno, first = rest[0]
    if first.strip() != "rotations":
        raise FormatError(lineno, "expected 'rotations' or end of file")
    rows = lines[lineno:lineno + n]
    if len(rows) < n:
        raise FormatError(lineno + len(rows) + 1, f"expected {n} rotation lines")
    rotation = [_ints(r, lineno + 1 + k) for k, r in enumerate(rows)]
    emb = PlaneEmbedding.from_lists(rotation)
    for v, rot in enumerate(emb.rotation):
        if sorted(rot) != list(g.neighbors(v)) or len(set(rot)) != len(rot):
            raise FormatError(lineno + 1 + v, f"rotation of vertex {v} must list each neighbor once")
    return g, emb


def format_graph(g: Graph, emb: PlaneEmbedding | None = None) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{a} {b}" for a, b in g.edges)
    if emb is not None:
        out.append("rotations")
        out.extend(" ".join(map(str, rot)) for rot in emb.rotation)
    return "\n".join(out) + "\n"


def read_graph(path) -> tuple[Graph, PlaneEmbedding | None]:
    return parse_graph(Path(path).read_text())


def write_graph(path, g: Graph, emb: PlaneEmbedding | None = None) -> None:
    Path(path).write_text(format_graph(g, emb))


def parse_coloring(text: str, g: Graph) -> dict[int, int]:
    """Map edge id -> color from ``u v c`` lines."""
    colors: dict[int, int] = {}
    for i, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        vals = _ints(line, i)
        if len(vals) != 3:
            raise FormatError(i, "coloring line must be 'u v c'")
        a, b, c = vals
        if not g.has_edge(a, b):
            raise FormatError(i, f"({a}, {b}) is not an edge")
        if c < 1:
            raise FormatError(i, "colors are positive integers")
        e = g.edge_id(a, b)
        if e in colors:
            raise FormatError(i, f"edge ({a}, {b}) colored twice")
        colors[e] = c
    return colors


def format_coloring(g: Graph, colors) -> str:
    return "".join(f"{a} {b} {colors[e]}\n" for e, (a, b) in enumerate(g.edges) if colors[e])
