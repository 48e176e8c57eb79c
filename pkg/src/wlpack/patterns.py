"""Pattern subgraphs: enumeration, packing systems, color types, htw.

``Sub(F, G)`` here means every (not necessarily induced) subgraph of ``G``
isomorphic to the pattern ``F``.  Each such subgraph is produced once: of
the ``|Aut(F)|`` embeddings onto it only the lexicographically smallest is
kept.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InvalidParameterError, PreconditionError, ResourceLimitError
from .graph import Graph, make_complete, make_complete_bipartite, make_path
from .lp import DEFAULT_MAX_VARIABLES
from .packing import SetSystem, frac_matching
from .wl import VertexPartition, wl_refine

DEFAULT_PATTERN_CAP = 6
HTW_CAP = 8

VERTEX, EDGE = "vertex", "edge"

NAMED_PATTERNS = {
    "K2": lambda: make_complete(2),
    "P3": lambda: make_path(3),
    "K3": lambda: make_complete(3),
    "K13": lambda: make_complete_bipartite(1, 3),
    "P4": lambda: make_path(4),
    "K4": lambda: make_complete(4),
}


def named_pattern(name: str) -> Graph:
    try:
        return NAMED_PATTERNS[name]()
    except KeyError:
        raise InvalidParameterError(
            f"unknown pattern {name!r}; choose from {', '.join(NAMED_PATTERNS)}") from None


@dataclass(frozen=True)
class Subgraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ColorType:
    """Sorted multiset of colors of a subgraph's vertices or edges."""

    colors: tuple

    @classmethod
    def of(cls, colors) -> "ColorType":
        return cls(tuple(sorted(colors)))

    def __len__(self):
        return len(self.colors)


def automorphisms(F: Graph) -> list[tuple[int, ...]]:
    """All automorphisms of ``F`` by brute force over permutations."""
    edges = F.edges
    out = []
    for perm in itertools.permutations(range(F.n)):
        if all(F.color(v) == F.color(perm[v]) for v in range(F.n)) and \
                all(F.has_edge(perm[u], perm[v]) for u, v in edges):
            out.append(perm)
    return out


def _search_order(F: Graph) -> list[int]:
    """Vertices of F so that each one (after the first of its component) has
    an earlier neighbor, highest degree first."""
    order: list[int] = []
    placed = set()
    while len(order) < F.n:
        start = max((v for v in range(F.n) if v not in placed), key=lambda v: (F.degree(v), -v))
        frontier = [start]
        placed.add(start)
        while frontier:
            v = frontier.pop(0)
            order.append(v)
            for w in sorted(F.neighbors(v), key=lambda w: (-F.degree(w), w)):
                if w not in placed:
                    placed.add(w)
                    frontier.append(w)
    return order


def embeddings(F: Graph, G: Graph, cap: int = DEFAULT_PATTERN_CAP):
    """Yield injective maps ``phi`` (as tuples indexed by F's vertices) that
    send every edge of F to an edge of G."""
    if F.n > cap:
        raise ResourceLimitError(f"pattern has {F.n} vertices, cap is {cap}")
    order = _search_order(F)
    earlier = [[w for w in F.neighbors(v) if w in order[:i]] for i, v in enumerate(order)]
    phi = [-1] * F.n
    used = [False] * G.n

    def extend(i):
        if i == len(order):
            yield tuple(phi)
            return
        v = order[i]
        back = earlier[i]
        if back:
            candidates = G.neighbors(phi[back[0]])
        else:
            candidates = range(G.n)
        need = F.degree(v)
        for x in candidates:
            if used[x] or G.degree(x) < need:
                continue
            if any(not G.has_edge(x, phi[w]) for w in back[1:]):
                continue
            phi[v] = x
            used[x] = True
            yield from extend(i + 1)
            used[x] = False
        phi[v] = -1

    yield from extend(0)


def enumerate_subgraphs(F: Graph, G: Graph, cap: int = DEFAULT_PATTERN_CAP) -> list[Subgraph]:
    if F.n > cap:
        raise ResourceLimitError(f"pattern has {F.n} vertices, cap is {cap}")
    autos = [a for a in automorphisms(F.with_colors(None)) if list(a) != list(range(F.n))]
    out = []
    for phi in embeddings(F.with_colors(None), G.with_colors(None), cap):
        if any(tuple(phi[a[i]] for i in range(F.n)) < phi for a in autos):
            continue
        verts = tuple(sorted(phi))
        edges = tuple(sorted((min(phi[u], phi[v]), max(phi[u], phi[v])) for u, v in F.edges))
        out.append(Subgraph(verts, edges))
    out.sort(key=lambda s: (s.vertices, s.edges))
    return out


def _name(g: Graph) -> str:
    return str(g.label) if g.label is not None else f"graph(n={g.n})"


def edge_index(G: Graph) -> dict[tuple[int, int], int]:
    return {e: i for i, e in enumerate(G.sorted_edges())}


def vertex_packing_system(F: Graph, G: Graph, cap: int = DEFAULT_PATTERN_CAP) -> SetSystem:
    subs = enumerate_subgraphs(F, G, cap)
    return SetSystem.build(G.n, (s.vertices for s in subs), label=f"vertex {_name(F)} in {_name(G)}")


def edge_packing_system(F: Graph, G: Graph, cap: int = DEFAULT_PATTERN_CAP) -> SetSystem:
    idx = edge_index(G)
    subs = enumerate_subgraphs(F, G, cap)
    return SetSystem.build(G.m, ([idx[e] for e in s.edges] for s in subs),
                           label=f"edge {_name(F)} in {_name(G)}")


def packing_system(F: Graph, G: Graph, mode: str = VERTEX,
                   cap: int = DEFAULT_PATTERN_CAP) -> SetSystem:
    if mode == VERTEX:
        return vertex_packing_system(F, G, cap)
    if mode == EDGE:
        return edge_packing_system(F, G, cap)
    raise InvalidParameterError(f"mode must be 'vertex' or 'edge', got {mode!r}")


def frac_packing(F: Graph, G: Graph, mode: str = VERTEX, cap: int = DEFAULT_PATTERN_CAP,
                 max_variables: int = DEFAULT_MAX_VARIABLES) -> Fraction:
    return frac_matching(packing_system(F, G, mode, cap), max_variables)


# ---------------------------------------------------------------------------
# homomorphism-hereditary treewidth


def treewidth(g: Graph) -> int:
    """Exact treewidth by dynamic programming over vertex subsets.

    ``TW(S)`` is the best width of an elimination order that eliminates the
    vertices of ``S`` first; eliminating ``v`` after ``S`` costs the number
    of vertices outside ``S + v`` reachable from ``v`` through ``S``.
    """
    n = g.n
    if n == 0:
        return -1
    nbr = [sum(1 << w for w in g.neighbors(v)) for v in range(n)]
    full = (1 << n) - 1

    def q_size(S: int, v: int) -> int:
        seen = 1 << v
        stack = [v]
        reach = 0
        while stack:
            x = stack.pop()
            for w in range(n):
                if nbr[x] >> w & 1 and not seen >> w & 1:
                    seen |= 1 << w
                    if S >> w & 1:
                        stack.append(w)
                    else:
                        reach += 1
        return reach

    tw = {0: -1}
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            S = sum(1 << v for v in combo)
            best = n
            for v in combo:
                rest = S & ~(1 << v)
                best = min(best, max(tw[rest], q_size(rest, v)))
            tw[S] = best
    return tw[full]


def _independent_partitions(F: Graph):
    """Partitions of V(F) into independent sets, as block-index lists."""
    n = F.n
    assign = [0] * n

    def rec(v, blocks: list[list[int]]):
        if v == n:
            yield list(assign)
            return
        for b, members in enumerate(blocks):
            if all(not F.has_edge(v, w) for w in members):
                assign[v] = b
                members.append(v)
                yield from rec(v + 1, blocks)
                members.pop()
        assign[v] = len(blocks)
        blocks.append([v])
        yield from rec(v + 1, blocks)
        blocks.pop()

    yield from rec(0, [])


def homomorphic_images(F: Graph) -> list[Graph]:
    """All quotients of F by partitions into independent sets."""
    out = []
    for assign in _independent_partitions(F):
        k = max(assign) + 1 if assign else 0
        edges = {(min(assign[u], assign[v]), max(assign[u], assign[v])) for u, v in F.edges}
        out.append(Graph(k, edges))
    return out


def htw(F: Graph) -> int:
    """Largest treewidth of a homomorphic image of F."""
    if F.n > HTW_CAP:
        raise ResourceLimitError(f"htw supports at most {HTW_CAP} vertices, got {F.n}")
    return max(treewidth(h) for h in homomorphic_images(F))


# ---------------------------------------------------------------------------
# color types, anchored counts and the extended equitable partition


def _vertex_colors(G: Graph) -> list[int]:
    if G.is_colored():
        return list(G.vertex_color)
    return wl_refine(G, k=1).vertex_colors(0)


def _wl2_edge_colors(G: Graph) -> dict[tuple[int, int], tuple[int, int]]:
    coloring = wl_refine(G, k=2)
    return {(u, v): coloring.edge_color(0, u, v) for u, v in G.sorted_edges()}


def color_type(S: Subgraph, colors, mode: str = VERTEX) -> ColorType:
    """``colors`` is a vertex color list (vertex mode) or an edge -> color map."""
    if mode == VERTEX:
        return ColorType.of(colors[v] for v in S.vertices)
    return ColorType.of(colors[e] for e in S.edges)


def count_subgraphs_at(F: Graph, G: Graph, x: int, mu: ColorType,
                       cap: int = DEFAULT_PATTERN_CAP,
                       subgraphs: Sequence[Subgraph] | None = None) -> int:
    """Subgraphs in Sub(F, G) of color type ``mu`` that contain vertex ``x``.

    Colors come from G's vertex coloring.
    """
    if not G.is_colored():
        raise InvalidParameterError("count_subgraphs_at needs a vertex-colored host graph")
    subs = enumerate_subgraphs(F, G, cap) if subgraphs is None else subgraphs
    colors = G.vertex_color
    return sum(1 for s in subs if x in s.vertices and color_type(s, colors) == mu)


def count_subgraphs_at_edge(F: Graph, G: Graph, e: tuple[int, int], mu: ColorType,
                            edge_colors: Mapping[tuple[int, int], object],
                            cap: int = DEFAULT_PATTERN_CAP,
                            subgraphs: Sequence[Subgraph] | None = None) -> int:
    """Subgraphs of color type ``mu`` (over edge colors) that contain edge ``e``."""
    e = (min(e), max(e))
    if not G.has_edge(*e):
        raise InvalidParameterError(f"{e} is not an edge")
    subs = enumerate_subgraphs(F, G, cap) if subgraphs is None else subgraphs
    return sum(1 for s in subs if e in s.edges and color_type(s, edge_colors, EDGE) == mu)


def extend_equitable_partition(G: Graph, F: Graph, mode: str = VERTEX,
                               edge_colors: Mapping[tuple[int, int], object] | None = None,
                               cap: int = DEFAULT_PATTERN_CAP
                               ) -> tuple[SetSystem, VertexPartition]:
    """Partition of the incidence graph of ``S_{F,G}`` that extends the colors.

    Ground blocks are the color classes of G's vertices (vertex mode, from
    G's coloring or WL1 if uncolored) or of its edges (edge mode, WL2 edge
    colors unless ``edge_colors`` is given).  Every realized color type
    gets one block of sets.  Raises :class:`PreconditionError` if some
    ground class sees a color type a non-uniform number of times.
    """
    S = packing_system(F, G, mode, cap)
    if mode == VERTEX:
        ground_color = _vertex_colors(G)
    else:
        ec = _wl2_edge_colors(G) if edge_colors is None else edge_colors
        ground_color = [ec[e] for e in G.sorted_edges()]
    types = [ColorType.of(ground_color[j] for j in s) for s in S.sets]
    ground_ids = sorted(set(ground_color))
    type_ids = sorted(set(types), key=lambda t: t.colors)
    gpos = {c: i for i, c in enumerate(ground_ids)}
    tpos = {t: len(ground_ids) + i for i, t in enumerate(type_ids)}

    per_element: list[Counter] = [Counter() for _ in range(S.m)]
    for s, t in zip(S.sets, types):
        for j in s:
            per_element[j][t] += 1
    profile: dict[object, Counter] = {}
    for j in range(S.m):
        c = ground_color[j]
        if c in profile and profile[c] != per_element[j]:
            raise PreconditionError(
                f"color class {c!r} has non-uniform pattern counts; "
                "the coloring is not stable enough for this pattern")
        profile.setdefault(c, per_element[j])

    labels = [gpos[c] for c in ground_color] + [tpos[t] for t in types]
    return S, VertexPartition.from_labels(labels)
