"""k-dimensional Weisfeiler-Leman refinement over one or two graphs.

Both graphs are refined jointly: in every round all signatures from both
tuple spaces are collected, sorted, and numbered consecutively, so equal
ids mean equal signatures across graphs.  Nothing is hashed lossily.

For ``k = 1`` the signature of a vertex is its previous color plus the
sorted neighbor colors.  For ``k >= 2`` the signature of a tuple ``x`` is
its previous color plus the sorted multiset, over all vertices ``u``, of
the k-tuple of colors of ``x`` with position ``i`` replaced by ``u``.
The ``k >= 2`` path is vectorized with numpy and chunked over the first
coordinate.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidParameterError, ResourceLimitError
from .graph import Graph

DEFAULT_MAX_TUPLES = 2 ** 26
_CHUNK_ELEMENTS = 1 << 22


@dataclass(frozen=True)
class VertexPartition:
    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = [b for block in self.blocks for b in block]
        if any(len(b) == 0 for b in self.blocks):
            raise InvalidParameterError("partition has an empty block")
        if sorted(seen) != list(range(self.n)):
            raise InvalidParameterError("blocks do not partition the vertex set")

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "VertexPartition":
        """Blocks ordered by label value, vertices ascending within a block."""
        groups: dict[int, list[int]] = {}
        for v, c in enumerate(labels):
            groups.setdefault(c, []).append(v)
        return cls(len(labels), tuple(tuple(groups[c]) for c in sorted(groups)))

    def block_of(self) -> list[int]:
        out = [0] * self.n
        for i, block in enumerate(self.blocks):
            for v in block:
                out[v] = i
        return out


@dataclass(frozen=True, eq=False)
class StableColoring:
    """Stable WL-k coloring of one or two graphs over a shared id space.

    ``colors[g]`` is an int array of shape ``(n_g,) * k``; entry ``x`` is the
    stable color of the tuple ``x`` in graph ``g``.
    """

    k: int
    graphs: tuple[Graph, ...]
    colors: tuple[np.ndarray, ...]
    rounds_used: int
    num_colors: int
    _palettes: tuple[Counter, ...] = field(default=(), repr=False)

    def color_of(self, graph_index: int, tup: Sequence[int]) -> int:
        if len(tup) != self.k:
            raise InvalidParameterError(f"expected a {self.k}-tuple")
        return int(self.colors[graph_index][tuple(tup)])

    def palette(self, graph_index: int = 0) -> Counter:
        return self._palettes[graph_index]

    def vertex_colors(self, graph_index: int = 0) -> list[int]:
        """Color of the constant tuple ``(x, ..., x)`` for every vertex ``x``."""
        c = self.colors[graph_index]
        n = c.shape[0]
        idx = np.arange(n)
        return c[(idx,) * self.k].tolist()

    def edge_color(self, graph_index: int, x: int, y: int) -> tuple[int, int]:
        """Unordered pair of stable colors of ``(x, y)`` and ``(y, x)``.

        For ``k > 2`` the pair is padded to ``(x, y, ..., y)``; for ``k = 1``
        the colors of the endpoints are used.
        """
        g = self.graphs[graph_index]
        if not g.has_edge(x, y):
            raise InvalidParameterError(f"({x}, {y}) is not an edge")
        if self.k == 1:
            a, b = self.color_of(graph_index, (x,)), self.color_of(graph_index, (y,))
        else:
            pad = (y,) * (self.k - 2)
            a = self.color_of(graph_index, (x, y) + pad)
            b = self.color_of(graph_index, (y, x) + (x,) * (self.k - 2))
        return (a, b) if a <= b else (b, a)

    def equivalent(self) -> bool:
        if len(self.graphs) != 2:
            raise InvalidParameterError("equivalence needs two graphs")
        return self._palettes[0] == self._palettes[1]


def _check_colors(graphs: Sequence[Graph]):
    colored = {g.is_colored() for g in graphs}
    if len(colored) > 1:
        raise InvalidParameterError("either both graphs are vertex-colored or neither is")


def _renumber(signatures: list) -> tuple[list[int], int]:
    """Map signatures to ids by their rank in sorted order."""
    distinct = sorted(set(signatures))
    index = {s: i for i, s in enumerate(distinct)}
    return [index[s] for s in signatures], len(distinct)


def _refine_1(graphs: Sequence[Graph]) -> tuple[list[list[int]], int, int]:
    # initial color: (given color, degree)
    sigs = [(g.color(v), g.degree(v)) for g in graphs for v in range(g.n)]
    flat, count = _renumber(sigs)
    rounds = 0
    while True:
        cols, start = [], 0
        for g in graphs:
            cols.append(flat[start:start + g.n])
            start += g.n
        sigs = [(c[v], tuple(sorted(c[w] for w in g.neighbors(v))))
                for g, c in zip(graphs, cols) for v in range(g.n)]
        new_flat, new_count = _renumber(sigs)
        if new_count == count:
            return cols, rounds, count
        flat, count = new_flat, new_count
        rounds += 1


def _initial_k(g: Graph, k: int) -> list[tuple]:
    """Ordered isomorphism type of every k-tuple plus its vertex colors."""
    A = g.adjacency_matrix()
    n = g.n
    grids = np.indices((n,) * k).reshape(k, -1)
    parts = []
    for i in range(k):
        for j in range(i + 1, k):
            xi, xj = grids[i], grids[j]
            parts.append(np.where(xi == xj, 2, A[xi, xj]))
    if g.is_colored():
        vc = np.asarray(g.vertex_color)
        parts.extend(vc[grids[i]] for i in range(k))
    if not parts:
        return [()] * (n ** k)
    return list(map(tuple, np.stack(parts, axis=1).tolist()))


def _substitution_codes(C: np.ndarray, xs: slice, k: int, radix: int) -> np.ndarray:
    """Codes of the k substituted colors, shape ``(chunk, n, ..., n, n_u)``."""
    n = C.shape[0]
    chunk = C[xs]
    code = None
    for i in range(k):
        if i == 0:
            sub = np.expand_dims(np.moveaxis(C, 0, -1), 0)
        else:
            sub = np.expand_dims(np.moveaxis(chunk, i, -1), i)
        code = sub if code is None else code * radix + sub
    shape = (chunk.shape[0],) + (n,) * (k - 1) + (n,)
    return np.broadcast_to(code, shape)


_ROW_WEIGHTS = np.random.default_rng(20240229).integers(1, 2 ** 62, size=4096, dtype=np.int64)


def _unique_rows(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``np.unique(rows, axis=0)`` via 1-D fingerprints, verified exactly.

    Rows are grouped by a wrapping dot product, then every row is compared
    against its group representative; any mismatch falls back to the slow
    exact path, so the result never depends on the fingerprint.
    """
    width = rows.shape[1]
    if width > len(_ROW_WEIGHTS):
        return np.unique(rows, axis=0, return_inverse=True)
    with np.errstate(over="ignore"):
        fp = (rows * _ROW_WEIGHTS[:width]).sum(axis=1)
    _, first, inverse = np.unique(fp, return_index=True, return_inverse=True)
    uniq = rows[first]
    if not np.array_equal(uniq[inverse], rows):
        return np.unique(rows, axis=0, return_inverse=True)
    return uniq, inverse


def _refine_k(graphs: Sequence[Graph], k: int) -> tuple[list[np.ndarray], int, int]:
    init = [_initial_k(g, k) for g in graphs]
    flat, count = _renumber([s for part in init for s in part])
    cols, start = [], 0
    for g in graphs:
        size = g.n ** k
        cols.append(np.asarray(flat[start:start + size], dtype=np.int64).reshape((g.n,) * k))
        start += size
    rounds = 0
    while True:
        if count ** k >= 2 ** 62:
            raise ResourceLimitError("too many colors for the packed k-tuple encoding")
        keys: dict[bytes, int] = {}
        temp = []
        for C in cols:
            n = C.shape[0]
            if n == 0:
                temp.append(np.zeros(0, dtype=np.int64))
                continue
            per_x = n ** (k - 1) * n
            step = max(1, _CHUNK_ELEMENTS // per_x)
            out = np.empty(n ** k, dtype=np.int64)
            for x0 in range(0, n, step):
                xs = slice(x0, min(n, x0 + step))
                codes = np.sort(_substitution_codes(C, xs, k, count), axis=-1)
                rows = codes.reshape(-1, n)
                old = C[xs].reshape(-1, 1)
                rows = np.ascontiguousarray(np.concatenate([old, rows], axis=1))
                uniq, inverse = _unique_rows(rows)
                local = np.empty(len(uniq), dtype=np.int64)
                for j, row in enumerate(uniq):
                    local[j] = keys.setdefault(row.tobytes(), len(keys))
                out[xs.start * n ** (k - 1): xs.stop * n ** (k - 1)] = local[inverse.reshape(-1)]
            temp.append(out)
        new_count = len(keys)
        if new_count == count:
            return cols, rounds, count
        # final ids follow lexicographic order of the signatures
        decoded = sorted((tuple(np.frombuffer(b, dtype=np.int64).tolist()), t)
                         for b, t in keys.items())
        order = np.empty(new_count, dtype=np.int64)
        for rank, (_, t) in enumerate(decoded):
            order[t] = rank
        cols = [order[t].reshape((g.n,) * k) for t, g in zip(temp, graphs)]
        count = new_count
        rounds += 1


def wl_refine(g: Graph, h: Graph | None = None, k: int = 1,
              max_tuples: int = DEFAULT_MAX_TUPLES) -> StableColoring:
    """Run WL-k to its fixed point on ``g`` (and ``h``, jointly)."""
    if k < 1:
        raise InvalidParameterError("k must be at least 1")
    graphs = (g,) if h is None else (g, h)
    _check_colors(graphs)
    total = sum(x.n ** k for x in graphs)
    if total > max_tuples:
        raise ResourceLimitError(f"{total} tuples exceed the cap of {max_tuples}")
    if k == 1:
        cols, rounds, count = _refine_1(graphs)
        arrays = tuple(np.asarray(c, dtype=np.int64) for c in cols)
    else:
        arrays, rounds, count = _refine_k(graphs, k)
        arrays = tuple(arrays)
    palettes = tuple(Counter(a.reshape(-1).tolist()) for a in arrays)
    return StableColoring(k, graphs, arrays, rounds, count, palettes)


def wl_equivalent(g: Graph, h: Graph, k: int = 1,
                  max_tuples: int = DEFAULT_MAX_TUPLES) -> bool:
    if g.n != h.n:
        return False
    return wl_refine(g, h, k, max_tuples).equivalent()


def equitable_partition(g: Graph) -> VertexPartition:
    """Coarsest equitable partition refining the given vertex colors."""
    return VertexPartition.from_labels(wl_refine(g, k=1).vertex_colors(0))


def is_equitable(g: Graph, partition: VertexPartition) -> bool:
    if partition.n != g.n:
        raise InvalidParameterError("partition is over a different vertex set")
    block = partition.block_of()
    nb = len(partition.blocks)
    for members in partition.blocks:
        if g.is_colored() and len({g.color(v) for v in members}) > 1:
            return False
        profile = None
        for v in members:
            counts = [0] * nb
            for w in g.neighbors(v):
                counts[block[w]] += 1
            if profile is None:
                profile = counts
            elif counts != profile:
                return False
    return True


def wl2_edge_color(g: Graph, x: int, y: int,
                   coloring: StableColoring | None = None) -> tuple[int, int]:
    """Stable WL2 color pair of the edge ``{x, y}``."""
    if not g.has_edge(x, y):
        raise InvalidParameterError(f"({x}, {y}) is not an edge")
    if coloring is None:
        coloring = wl_refine(g, k=2)
    idx = next(i for i, h in enumerate(coloring.graphs) if h is g or h == g)
    return coloring.edge_color(idx, x, y)
