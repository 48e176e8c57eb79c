"""Named graph pairs shared by the experiment registry and the test suite."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .graph import (Graph, cartesian_product, disjoint_union, make_circulant,
                    make_complete, make_complete_bipartite, make_cycle,
                    make_matched_cliques, make_paley, make_path, make_rook4,
                    make_shrikhande, scalar_multiple)


@dataclass(frozen=True)
class GraphPair:
    name: str
    g: Graph
    h: Graph


def paley_companion(q: int) -> Graph:
    """Circulant on Z_q with connection set +-1, ..., +-(q-1)/4."""
    return make_circulant(q, [s for i in range(1, (q - 1) // 4 + 1) for s in (i, -i)])


def triangular_graph(n: int) -> Graph:
    """Line graph of K_n: 2-subsets of ``0..n-1`` adjacent when they meet."""
    pairs = list(itertools.combinations(range(n), 2))
    edges = [(a, b) for a, b in itertools.combinations(range(len(pairs)), 2)
             if set(pairs[a]) & set(pairs[b])]
    return Graph(len(pairs), edges)


def seidel_switch(g: Graph, subset) -> Graph:
    """Flip adjacency between ``subset`` and its complement."""
    inside = set(subset)
    edges = {e for e in g.edges if (e[0] in inside) == (e[1] in inside)}
    for u in inside:
        for v in range(g.n):
            if v not in inside and not g.has_edge(u, v):
                edges.add((min(u, v), max(u, v)))
    return Graph(g.n, edges)


def chang_graph() -> Graph:
    """T(8) switched on a perfect matching of K_8; shares its parameters
    (28, 12, 6, 4) with T(8) but is not isomorphic to it."""
    pairs = list(itertools.combinations(range(8), 2))
    matching = [pairs.index(p) for p in ((0, 1), (2, 3), (4, 5), (6, 7))]
    return seidel_switch(triangular_graph(8), matching)


def random_relabel(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(perm)


def wl1_equivalent_pairs() -> list[GraphPair]:
    """Non-isomorphic pairs that color refinement cannot tell apart."""
    c3, c4, c5, c6 = (make_cycle(k) for k in (3, 4, 5, 6))
    out = [
        GraphPair("C6 / 2C3", c6, scalar_multiple(2, c3)),
        GraphPair("C8 / 2C4", make_cycle(8), scalar_multiple(2, c4)),
        GraphPair("C9 / 3C3", make_cycle(9), scalar_multiple(3, c3)),
        GraphPair("C10 / 2C5", make_cycle(10), scalar_multiple(2, c5)),
        GraphPair("C12 / 2C6", make_cycle(12), scalar_multiple(2, c6)),
        GraphPair("C12 / 4C3", make_cycle(12), scalar_multiple(4, c3)),
        GraphPair("K33 / prism", make_complete_bipartite(3, 3),
                  cartesian_product(c3, make_complete(2))),
    ]
    for s in (3, 4, 5):
        out.append(GraphPair(f"matched K{s} / K{s}{s}", make_matched_cliques(s),
                             make_complete_bipartite(s, s)))
    out.append(GraphPair("Paley13 / C13(1..3)", make_paley(13), paley_companion(13)))
    out.append(GraphPair("Shrikhande / rook4", make_shrikhande(), make_rook4()))
    return out


def wl2_equivalent_pairs() -> list[GraphPair]:
    """Pairs that WL2 cannot tell apart (isomorphic relabelings included)."""
    rng = random.Random(7)
    s = make_shrikhande()
    t8 = triangular_graph(8)
    return [
        GraphPair("Shrikhande / rook4", s, make_rook4()),
        GraphPair("T(8) / Chang", t8, chang_graph()),
        GraphPair("Shrikhande / relabeled", s, random_relabel(s, rng)),
        GraphPair("Paley13 / relabeled", make_paley(13), random_relabel(make_paley(13), rng)),
    ]


def wl1_inequivalent_pairs() -> list[GraphPair]:
    """Same vertex count, but color refinement separates them."""
    k1 = make_complete(1)
    return [
        GraphPair("K3 / P3+K1", make_complete(3), disjoint_union(make_path(3), k1)),
        GraphPair("C6 / P6", make_cycle(6), make_path(6)),
        GraphPair("P6 / K2+C4", make_path(6), disjoint_union(make_complete(2), make_cycle(4))),
        GraphPair("P4 / K13", make_path(4), make_complete_bipartite(1, 3)),
        GraphPair("C5 / P5", make_cycle(5), make_path(5)),
        GraphPair("C4 / K4", make_cycle(4), make_complete(4)),
        GraphPair("C6 / matched K3", make_cycle(6), make_matched_cliques(3)),
        GraphPair("2C3 / K33", scalar_multiple(2, make_cycle(3)), make_complete_bipartite(3, 3)),
        GraphPair("C8 / cube", make_cycle(8),
                  cartesian_product(make_cycle(4), make_complete(2))),
        GraphPair("C6 colored / 2C3 colored",
                  make_cycle(6).with_colors([0, 1, 0, 1, 0, 1]),
                  scalar_multiple(2, make_cycle(3)).with_colors([0, 0, 1, 1, 1, 0])),
    ]


def fractional_iso_pairs() -> list[GraphPair]:
    """Small pairs for cross-checking the LP against color refinement."""
    rng = random.Random(11)
    small = [p for p in wl1_equivalent_pairs() if p.g.n <= 12]
    same = [GraphPair("C7 / relabeled", make_cycle(7), random_relabel(make_cycle(7), rng)),
            GraphPair("P5 / P5", make_path(5), make_path(5))]
    return small + same + wl1_inequivalent_pairs()


def triangle_rich_graphs() -> list[Graph]:
    """Graphs used for the Fano check (each has at least seven triangles)."""
    return [make_shrikhande(), make_rook4(), make_complete(5), make_complete(6),
            make_paley(13), triangular_graph(6), cartesian_product(make_complete(3),
                                                                   make_complete(4)),
            make_matched_cliques(5)]
