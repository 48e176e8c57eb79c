"""Edge-list text format and DOT export.

Format::

    # comments and blank lines are ignored
    n m [c]
    u v          (m lines, 0-based)
    c_0 ... c_{n-1}   (only when c = 1)
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError
from .graph import Family, Graph, GraphLabel


def _content_lines(text: str):
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise ParseError(f"expected integers, got {line!r}", lineno) from None


def parse_graph(text: str) -> Graph:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input", 1)
    lineno, header = lines[0]
    fields = _ints(header, lineno)
    if len(fields) not in (2, 3):
        raise ParseError("header must be 'n m' or 'n m c'", lineno)
    n, m = fields[0], fields[1]
    colored = len(fields) == 3 and fields[2] == 1
    if n < 0 or m < 0 or (len(fields) == 3 and fields[2] not in (0, 1)):
        raise ParseError("malformed header", lineno)
    expected = 1 + m + (1 if colored else 0)
    if len(lines) < expected:
        last = lines[-1][0]
        raise ParseError(f"expected {m} edge lines, found {len(lines) - 1}", last + 1)
    edges = set()
    for lineno, line in lines[1:1 + m]:
        pair = _ints(line, lineno)
        if len(pair) != 2:
            raise ParseError("edge line must hold two vertices", lineno)
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex out of range in edge ({u}, {v})", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        e = (min(u, v), max(u, v))
        if e in edges:
            raise ParseError(f"duplicate edge {e}", lineno)
        edges.add(e)
    colors = None
    if colored:
        lineno, line = lines[1 + m]
        colors = _ints(line, lineno)
        if len(colors) != n or any(c < 0 for c in colors):
            raise ParseError(f"expected {n} nonnegative color ids", lineno)
    if len(lines) > expected:
        raise ParseError("trailing content", lines[expected][0])
    return Graph(n, edges, colors, label=GraphLabel(Family.FROM_FILE))


def serialize_graph(g: Graph) -> str:
    header = f"{g.n} {g.m}" + (" 1" if g.is_colored() else "")
    out = [header]
    out.extend(f"{u} {v}" for u, v in g.sorted_edges())
    if g.is_colored():
        out.append(" ".join(map(str, g.vertex_color)))
    return "\n".join(out) + "\n"


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(serialize_graph(g), newline="\n")


_PALETTE = ["lightblue", "salmon", "palegreen", "gold", "plum", "orange",
            "lightgray", "cyan", "pink", "khaki"]


def to_dot(g: Graph, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    for v in range(g.n):
        if g.is_colored():
            fill = _PALETTE[g.color(v) % len(_PALETTE)]
            out.append(f'  {v} [style=filled, fillcolor="{fill}"];')
        else:
            out.append(f"  {v};")
    out.extend(f"  {u} -- {v};" for u, v in g.sorted_edges())
    out.append("}")
    return "\n".join(out) + "\n"
