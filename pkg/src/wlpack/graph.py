"""Simple undirected graphs, the named families used throughout, and products.

Vertices are always ``0..n-1``.  Product graphs index the pair ``(i, j)``
as ``i * n_H + j``.  Graphs are immutable once built.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidParameterError


class Family(str, Enum):
    CYCLE = "cycle"
    PATH = "path"
    COMPLETE = "complete"
    COMPLETE_BIPARTITE = "complete_bipartite"
    CIRCULANT = "circulant"
    PALEY = "paley"
    SHRIKHANDE = "shrikhande"
    ROOK4 = "rook4"
    MATCHED_CLIQUES = "matched_cliques"
    DISJOINT_UNION = "disjoint_union"
    TENSOR_PRODUCT = "tensor_product"
    CARTESIAN_PRODUCT = "cartesian_product"
    FROM_FILE = "from_file"


_ARITY = {
    Family.CYCLE: 1,
    Family.PATH: 1,
    Family.COMPLETE: 1,
    Family.COMPLETE_BIPARTITE: 2,
    Family.PALEY: 1,
    Family.SHRIKHANDE: 0,
    Family.ROOK4: 0,
    Family.MATCHED_CLIQUES: 1,
    Family.TENSOR_PRODUCT: 0,
    Family.CARTESIAN_PRODUCT: 0,
    Family.FROM_FILE: 0,
}


@dataclass(frozen=True)
class GraphLabel:
    """Provenance of a graph: which family built it and with what parameters.

    Derived families (unions and products) keep their operand graphs so that
    structure-aware algorithms such as triangle decomposition can recurse.
    Circulants store ``[n, *connection_set]``; disjoint unions store the
    multiplicity when built by :func:`scalar_multiple`.
    """

    family: Family
    params: tuple[int, ...] = ()
    operands: tuple["Graph", ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        want = _ARITY.get(self.family)
        if want is not None and len(self.params) != want:
            raise InvalidParameterError(
                f"{self.family.value} takes {want} params, got {len(self.params)}"
            )

    def __str__(self) -> str:
        if self.family in (Family.TENSOR_PRODUCT, Family.CARTESIAN_PRODUCT,
                           Family.DISJOINT_UNION) and self.operands:
            op = {Family.TENSOR_PRODUCT: " x ", Family.CARTESIAN_PRODUCT: " [] ",
                  Family.DISJOINT_UNION: " + "}[self.family]
            return "(" + op.join(str(g.label) for g in self.operands) + ")"
        if not self.params:
            return self.family.value
        return f"{self.family.value}({','.join(map(str, self.params))})"


class Graph:
    """Immutable simple undirected graph with optional vertex colors."""

    __slots__ = ("n", "edges", "vertex_color", "label", "_adj", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (),
                 vertex_color: Sequence[int] | None = None,
                 label: GraphLabel | None = None):
        if n < 0:
            raise InvalidParameterError("vertex count must be nonnegative")
        normalized = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidParameterError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameterError(f"edge ({u}, {v}) out of range for n={n}")
            e = (u, v) if u < v else (v, u)
            if e in normalized:
                raise InvalidParameterError(f"duplicate edge {e}")
            normalized.add(e)
        if vertex_color is not None:
            vertex_color = tuple(int(c) for c in vertex_color)
            if len(vertex_color) != n:
                raise InvalidParameterError("vertex coloring must cover every vertex")
            if any(c < 0 for c in vertex_color):
                raise InvalidParameterError("vertex colors must be nonnegative")
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in normalized:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(normalized))
        object.__setattr__(self, "vertex_color", vertex_color)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n and self.edges == other.edges
                and self.vertex_color == other.vertex_color)

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash",
                               hash((self.n, self.edges, self.vertex_color)))
        return self._hash

    def __repr__(self):
        name = str(self.label) if self.label else "Graph"
        return f"<{name}: n={self.n}, e={self.m}>"

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        a = self._adj[u]
        i = bisect_left(a, v)
        return i < len(a) and a[i] == v

    def sorted_edges(self) -> list[tuple[int, int]]:
        """Edges in lexicographic order; this fixes the edge indexing."""
        return sorted(self.edges)

    def is_colored(self) -> bool:
        return self.vertex_color is not None

    def color(self, v: int) -> int:
        return 0 if self.vertex_color is None else self.vertex_color[v]

    def adjacency_matrix(self, dtype=np.int64) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges:
            A[u, v] = A[v, u] = 1
        return A

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the copy in which vertex ``v`` becomes ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise InvalidParameterError("relabeling must be a permutation of 0..n-1")
        colors = None
        if self.vertex_color is not None:
            c = [0] * self.n
            for v in range(self.n):
                c[perm[v]] = self.vertex_color[v]
            colors = c
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges), colors,
                     label=self.label)

    def with_colors(self, colors: Sequence[int] | None) -> "Graph":
        return Graph(self.n, self.edges, colors, label=self.label)

    def complement(self) -> "Graph":
        return Graph(self.n, ((u, v) for u in range(self.n)
                              for v in range(u + 1, self.n) if not self.has_edge(u, v)),
                     self.vertex_color)


def _require(cond: bool, message: str):
    if not cond:
        raise InvalidParameterError(message)


def make_cycle(n: int) -> Graph:
    _require(n >= 3, "a cycle needs at least 3 vertices")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)),
                 label=GraphLabel(Family.CYCLE, (n,)))


def make_path(n: int) -> Graph:
    _require(n >= 1, "a path needs at least 1 vertex")
    return Graph(n, ((i, i + 1) for i in range(n - 1)),
                 label=GraphLabel(Family.PATH, (n,)))


def make_complete(n: int) -> Graph:
    _require(n >= 1, "a complete graph needs at least 1 vertex")
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)),
                 label=GraphLabel(Family.COMPLETE, (n,)))


def make_complete_bipartite(s: int, t: int) -> Graph:
    _require(s >= 1 and t >= 1, "both sides of K_{s,t} must be nonempty")
    return Graph(s + t, ((i, s + j) for i in range(s) for j in range(t)),
                 label=GraphLabel(Family.COMPLETE_BIPARTITE, (s, t)))


def make_circulant(n: int, connection_set: Iterable[int]) -> Graph:
    """Cayley graph of Z_n: ``x ~ y`` iff ``x - y`` lies in the connection set.

    Elements may be given as negatives (``-1`` means ``n - 1``).
    """
    _require(n >= 1, "circulant needs at least 1 vertex")
    C = {c % n for c in connection_set}
    _require(0 not in C, "connection set must not contain 0")
    _require(all((-c) % n in C for c in C), "connection set must be closed under negation")
    edges = {(min(x, (x + c) % n), max(x, (x + c) % n)) for x in range(n) for c in C}
    return Graph(n, edges, label=GraphLabel(Family.CIRCULANT, (n, *sorted(C))))


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def quadratic_residues(q: int) -> set[int]:
    return {(x * x) % q for x in range(1, q)}


def make_paley(q: int) -> Graph:
    """Paley graph on Z_q for a prime ``q = 1 (mod 4)``.

    Prime powers are rejected: they need GF(q) arithmetic, not Z_q.
    """
    _require(is_prime(q), f"Paley graphs are only supported for primes, got {q}")
    _require(q % 4 == 1, f"Paley graph needs q = 1 mod 4, got {q}")
    g = make_circulant(q, quadratic_residues(q))
    return Graph(q, g.edges, label=GraphLabel(Family.PALEY, (q,)))


def _z4_grid(adjacent) -> list[tuple[int, int]]:
    cells = [(i, j) for i in range(4) for j in range(4)]
    edges = []
    for a, (i, j) in enumerate(cells):
        for b, (k, l) in enumerate(cells):
            if a < b and (adjacent(i, j, k, l) or adjacent(k, l, i, j)):
                edges.append((a, b))
    return edges


def make_shrikhande() -> Graph:
    """Shrikhande graph on Z_4 x Z_4; vertex ``(i, j)`` has index ``4i + j``."""

    def adjacent(i, j, k, l):
        return ((i == k and l == (j + 1) % 4) or (j == l and k == (i + 1) % 4)
                or (k == (i + 1) % 4 and l == (j + 1) % 4))

    return Graph(16, _z4_grid(adjacent), label=GraphLabel(Family.SHRIKHANDE))


def make_rook4() -> Graph:
    """4x4 rook's graph (K4 box K4); vertex ``(i, j)`` has index ``4i + j``."""
    return Graph(16, _z4_grid(lambda i, j, k, l: i == k or j == l),
                 label=GraphLabel(Family.ROOK4))


def make_matched_cliques(s: int) -> Graph:
    """Two disjoint s-cliques joined by the perfect matching ``i ~ s + i``."""
    _require(s >= 2, "matched cliques need s >= 2")
    edges = [(i, j) for i in range(s) for j in range(i + 1, s)]
    edges += [(s + i, s + j) for i, j in edges]
    edges += [(i, s + i) for i in range(s)]
    return Graph(2 * s, edges, label=GraphLabel(Family.MATCHED_CLIQUES, (s,)))


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union, shifting each operand's vertices past the previous ones.

    Colors are kept only if every operand is colored.
    """
    offset = 0
    edges = []
    colors: list[int] | None = [] if graphs and all(g.is_colored() for g in graphs) else None
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        if colors is not None:
            colors.extend(g.vertex_color)
        offset += g.n
    return Graph(offset, edges, colors,
                 label=GraphLabel(Family.DISJOINT_UNION, operands=tuple(graphs)))


def scalar_multiple(k: int, g: Graph) -> Graph:
    _require(k >= 1, "multiplicity must be positive")
    u = disjoint_union(*([g] * k))
    return Graph(u.n, u.edges, u.vertex_color,
                 label=GraphLabel(Family.DISJOINT_UNION, (k,), operands=(g,) * k))


def tensor_product(g: Graph, h: Graph) -> Graph:
    """(u,u') ~ (v,v') iff u ~ v in g and u' ~ v' in h."""
    nh = h.n
    edges = []
    for u, v in g.edges:
        for a, b in h.edges:
            edges.append((u * nh + a, v * nh + b))
            edges.append((u * nh + b, v * nh + a))
    return Graph(g.n * nh, edges,
                 label=GraphLabel(Family.TENSOR_PRODUCT, operands=(g, h)))


def tensor_power(g: Graph, k: int) -> Graph:
    _require(k >= 1, "tensor power needs k >= 1")
    out = g
    for _ in range(k - 1):
        out = tensor_product(out, g)
    return out


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """(u,u') ~ (v,v') iff (u = v and u' ~ v') or (u ~ v and u' = v')."""
    nh = h.n
    edges = [(u * nh + a, u * nh + b) for u in range(g.n) for a, b in h.edges]
    edges += [(u * nh + a, v * nh + a) for u, v in g.edges for a in range(nh)]
    return Graph(g.n * nh, edges,
                 label=GraphLabel(Family.CARTESIAN_PRODUCT, operands=(g, h)))


def validate_graph(g: Graph) -> None:
    """Re-check the structural invariants; raises on the first violation."""
    seen = set()
    for u, v in g.edges:
        _require(u != v, "self-loop")
        _require(0 <= u < g.n and 0 <= v < g.n, "endpoint out of range")
        _require(u < v, "edge not normalized")
        _require((u, v) not in seen, "duplicate edge")
        seen.add((u, v))
    for v in range(g.n):
        nb = g.neighbors(v)
        _require(list(nb) == sorted(set(nb)), "adjacency not sorted")
        _require(all(g.has_edge(w, v) for w in nb), "asymmetric adjacency")
    _require(sum(g.degrees()) == 2 * g.m, "degree sum mismatch")
    if g.vertex_color is not None:
        _require(len(g.vertex_color) == g.n, "partial vertex coloring")
