"""Triangle decompositions, Fano configurations, and extension properties."""

from __future__ import annotations

import itertools
import math
from typing import Sequence

from .errors import InvalidParameterError, ResourceLimitError
from .graph import Family, Graph
from .packing import SetSystem, integral_packing
from .patterns import edge_packing_system, named_pattern

Triangle = tuple[int, int, int]

EXACT_COVER_EDGE_CAP = 60
K_EXTENSION_CAP = 3


# ---------------------------------------------------------------------------
# Fano plane


def fano_plane() -> SetSystem:
    lines = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]
    return SetSystem.build(7, lines, label="fano")


def fano_free(S: SetSystem) -> bool:
    """True iff no seven sets of the 3-uniform system ``S`` form a Fano plane.

    Seven triples that pairwise meet in exactly one point and together use
    only seven points are a Fano plane, so the search grows cliques of the
    "meet in exactly one point" relation while the union stays within seven
    points.
    """
    if any(len(s) != 3 for s in S.sets):
        raise InvalidParameterError("fano_free needs a 3-uniform set system")
    n = S.n
    if n < 7:
        return True
    sets = [frozenset(s) for s in S.sets]
    meets = [[j for j in range(n) if j != i and len(sets[i] & sets[j]) == 1]
             for i in range(n)]
    meet_sets = [set(m) for m in meets]

    def grow(clique: list[int], cands: list[int], points: frozenset) -> bool:
        if len(clique) == 7:
            return True
        if len(clique) + len(cands) < 7:
            return False
        for k, c in enumerate(cands):
            pts = points | sets[c]
            if len(pts) > 7:
                continue
            rest = [d for d in cands[k + 1:] if d in meet_sets[c]]
            if grow(clique + [c], rest, pts):
                return True
        return False

    return not any(grow([i], [j for j in meets[i] if j > i], sets[i]) for i in range(n))


# ---------------------------------------------------------------------------
# extension property


def k_extension(g: Graph, k: int, cap: int = K_EXTENSION_CAP) -> bool:
    """For all disjoint X, Y with ``|X| + |Y| <= k`` some vertex outside both
    is adjacent to every vertex of X and to none of Y."""
    if k < 0:
        raise InvalidParameterError("k must be nonnegative")
    if k > cap:
        raise ResourceLimitError(f"k = {k} exceeds the cap {cap}")
    n = g.n
    nbr = [sum(1 << w for w in g.neighbors(v)) for v in range(n)]
    everyone = (1 << n) - 1
    for size in range(k + 1):
        for T in itertools.combinations(range(n), size):
            outside = everyone & ~sum(1 << v for v in T)
            for split in range(1 << size):
                ok = outside
                for b, v in enumerate(T):
                    ok &= nbr[v] if split >> b & 1 else ~nbr[v]
                if not ok:
                    return False
    return True


# ---------------------------------------------------------------------------
# triangle decompositions


def triangles_through(g: Graph, u: int, v: int) -> list[int]:
    """Common neighbors of the edge ``{u, v}``, i.e. its triangle extensions."""
    nv = set(g.neighbors(v))
    return [w for w in g.neighbors(u) if w in nv]


def is_triangle_decomposition(g: Graph, triangles: Sequence[Triangle]) -> bool:
    covered = set()
    for t in triangles:
        a, b, c = sorted(t)
        for e in ((a, b), (a, c), (b, c)):
            if not g.has_edge(*e) or e in covered:
                return False
            covered.add(e)
    return len(covered) == g.m


def _shrikhande_triangles() -> list[Triangle]:
    out = []
    for i in range(4):
        for j in range(4):
            cells = [(i, j), ((i + 1) % 4, j), ((i + 1) % 4, (j + 1) % 4)]
            out.append(tuple(sorted(4 * a + b for a, b in cells)))
    return out


def _tensor_triangles(tg: Sequence[Triangle], th: Sequence[Triangle], nh: int) -> list[Triangle]:
    """Split each product ``t x t'`` of triangles into its six transversal triangles."""
    out = []
    for t in tg:
        for s in th:
            for perm in itertools.permutations(range(3)):
                out.append(tuple(sorted(t[i] * nh + s[perm[i]] for i in range(3))))
    return out


def _exact_cover(g: Graph) -> list[Triangle] | None:
    """Exhaustive search: always branch on the uncovered edge with the
    fewest usable triangles."""
    edges = g.sorted_edges()
    if len(edges) % 3:
        return None
    ext = {e: triangles_through(g, *e) for e in edges}
    covered: set[tuple[int, int]] = set()
    chosen: list[Triangle] = []

    def options(e):
        u, v = e
        out = []
        for w in ext[e]:
            a, b = (min(u, w), max(u, w)), (min(v, w), max(v, w))
            if a not in covered and b not in covered:
                out.append(w)
        return out

    def rec() -> bool:
        best, best_opts = None, None
        for e in edges:
            if e in covered:
                continue
            opts = options(e)
            if not opts:
                return False
            if best is None or len(opts) < len(best_opts):
                best, best_opts = e, opts
                if len(opts) == 1:
                    break
        if best is None:
            return True
        u, v = best
        for w in best_opts:
            tri = [best, (min(u, w), max(u, w)), (min(v, w), max(v, w))]
            covered.update(tri)
            chosen.append(tuple(sorted((u, v, w))))
            if rec():
                return True
            chosen.pop()
            covered.difference_update(tri)
        return False

    return sorted(chosen) if rec() else None


def k3_decompose(g: Graph) -> list[Triangle] | None:
    """Edge-disjoint triangles covering every edge of ``g``, or ``None``.

    Tries, in order: the closed form for the Shrikhande graph, recursion
    through tensor products and disjoint unions recorded in the graph's
    label, and exact-cover search when ``g`` has at most
    ``EXACT_COVER_EDGE_CAP`` edges.  Every answer is checked before it is
    returned.
    """
    label = g.label
    candidate = None
    if label is not None:
        if label.family == Family.SHRIKHANDE and g.n == 16:
            candidate = _shrikhande_triangles()
        elif label.family == Family.TENSOR_PRODUCT and len(label.operands) == 2:
            a, b = label.operands
            ta = k3_decompose(a)
            tb = k3_decompose(b) if ta is not None else None
            if ta is not None and tb is not None:
                candidate = _tensor_triangles(ta, tb, b.n)
        elif label.family == Family.DISJOINT_UNION and label.operands:
            candidate, offset = [], 0
            for part in label.operands:
                tp = k3_decompose(part)
                if tp is None:
                    candidate = None
                    break
                candidate.extend(tuple(v + offset for v in t) for t in tp)
                offset += part.n
    if candidate is not None and is_triangle_decomposition(g, candidate):
        return sorted(candidate)
    if g.m <= EXACT_COVER_EDGE_CAP:
        return _exact_cover(g)
    return None


# ---------------------------------------------------------------------------
# uncovered edges


def odd_degree_count(g: Graph) -> int:
    return sum(1 for d in g.degrees() if d % 2)


def uncovered_edges_lower_bound(g: Graph) -> int:
    """Ceiling of half the number of odd-degree vertices.

    Every vertex of odd degree keeps at least one edge outside any set of
    edge-disjoint triangles, and one edge serves at most two such vertices.
    """
    return math.ceil(odd_degree_count(g) / 2)


def triangle_packing_number(g: Graph, node_limit: int | None = None) -> int:
    S = edge_packing_system(named_pattern("K3"), g)
    if node_limit is None:
        return integral_packing(S).value
    return integral_packing(S, node_limit).value


def uncovered_edges(g: Graph) -> int:
    """Edges left over by a maximum edge-disjoint triangle packing."""
    return g.m - 3 * triangle_packing_number(g)
