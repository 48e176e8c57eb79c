"""Set systems and their packing / hitting numbers, fractional and integral.

A set system over ground elements ``0..m-1`` has incidence matrix ``M``
(``m`` rows, one column per set).  The fractional matching number is
``max 1.x  s.t.  M x <= 1``; the fractional hitting number is its LP dual.
Integral values come from one best-first branch-and-bound that uses the
exact LP value as its bounding function.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import InvalidParameterError, ResourceLimitError
from .graph import Graph
from .lp import DEFAULT_MAX_VARIABLES, OPTIMAL, RationalLP, solve

DEFAULT_NODE_LIMIT = 200_000


@dataclass(frozen=True)
class SetSystem:
    """Ground set ``0..m-1`` plus a list of distinct nonempty subsets.

    Use :meth:`build` to normalize input; it sorts every set and drops
    repeated sets, keeping the first occurrence.
    """

    m: int
    sets: tuple[tuple[int, ...], ...]
    label: str = ""

    def __post_init__(self):
        if self.m < 0:
            raise InvalidParameterError("ground size must be nonnegative")
        seen = set()
        for s in self.sets:
            if not s:
                raise InvalidParameterError("sets must be nonempty")
            if any(not 0 <= e < self.m for e in s):
                raise InvalidParameterError(f"set {s} leaves the ground set 0..{self.m - 1}")
            if list(s) != sorted(set(s)):
                raise InvalidParameterError(f"set {s} is not sorted without repeats")
            if s in seen:
                raise InvalidParameterError(f"duplicate set {s}")
            seen.add(s)

    @classmethod
    def build(cls, m: int, sets: Iterable[Iterable[int]], label: str = "") -> "SetSystem":
        out, seen = [], set()
        for s in sets:
            t = tuple(sorted(set(s)))
            if t not in seen:
                seen.add(t)
                out.append(t)
        return cls(m, tuple(out), label)

    @property
    def n(self) -> int:
        return len(self.sets)

    def incidence_matrix(self) -> list[list[int]]:
        """``M[j][i] = 1`` iff element ``j`` lies in set ``i``."""
        M = [[0] * self.n for _ in range(self.m)]
        for i, s in enumerate(self.sets):
            for j in s:
                M[j][i] = 1
        return M

    def containing(self) -> list[list[int]]:
        """For each element, the indices of the sets that contain it."""
        out: list[list[int]] = [[] for _ in range(self.m)]
        for i, s in enumerate(self.sets):
            for j in s:
                out[j].append(i)
        return out

    def is_packing(self, chosen: Iterable[int]) -> bool:
        used: set[int] = set()
        for i in chosen:
            s = self.sets[i]
            if used.intersection(s):
                return False
            used.update(s)
        return True

    def is_hitting_set(self, elements: Iterable[int]) -> bool:
        hit = set(elements)
        return all(hit.intersection(s) for s in self.sets)


@dataclass(frozen=True)
class PackingResult:
    fractional_value: Fraction
    integral_value: int | None = None
    witness: tuple[int, ...] | None = None
    system_label: str = ""

    def __post_init__(self):
        if self.integral_value is not None and self.integral_value > self.fractional_value:
            raise InvalidParameterError("integral value exceeds the fractional value")
        if self.witness is not None and len(self.witness) != self.integral_value:
            raise InvalidParameterError("witness size differs from the integral value")


@dataclass(frozen=True)
class IntegralSolution:
    value: int
    witness: tuple[int, ...]


def incidence_graph(S: SetSystem) -> Graph:
    """Bipartite graph with ground elements colored 0 and sets colored 1.

    Element ``j`` is vertex ``j``; set ``i`` is vertex ``m + i``.
    """
    edges = [(j, S.m + i) for i, s in enumerate(S.sets) for j in s]
    return Graph(S.m + S.n, edges, [0] * S.m + [1] * S.n)


def matching_lp(S: SetSystem) -> RationalLP:
    """``max sum x_i  s.t.  sum_{i : j in S_i} x_i <= 1  for every element j``."""
    rows = [{i: 1 for i in cont} for cont in S.containing()]
    return RationalLP.build([1] * S.n, rows, [1] * S.m, "max")


def hitting_lp(S: SetSystem) -> RationalLP:
    """``min sum y_j  s.t.  sum_{j in S_i} y_j >= 1  for every set i``."""
    rows = [{j: -1 for j in s} for s in S.sets]
    return RationalLP.build([1] * S.m, rows, [-1] * S.n, "min")


def _value(lp: RationalLP, max_variables: int) -> Fraction:
    res = solve(lp, max_variables)
    if res.status != OPTIMAL:  # pragma: no cover - both programs are always bounded
        raise ArithmeticError(f"unexpected LP status {res.status}")
    return res.value


def frac_matching(S: SetSystem, max_variables: int = DEFAULT_MAX_VARIABLES) -> Fraction:
    return _value(matching_lp(S), max_variables)


def frac_hitting(S: SetSystem, max_variables: int = DEFAULT_MAX_VARIABLES) -> Fraction:
    return _value(hitting_lp(S), max_variables)


def closed_neighborhood_system(g: Graph) -> SetSystem:
    return SetSystem.build(g.n, ((v,) + g.neighbors(v) for v in range(g.n)),
                           label=f"closed-neighborhoods {g.label or ''}".strip())


def frac_domination(g: Graph, max_variables: int = DEFAULT_MAX_VARIABLES) -> Fraction:
    return frac_hitting(closed_neighborhood_system(g), max_variables)


# ---------------------------------------------------------------------------
# branch and bound


@dataclass(order=True)
class _Node:
    key: tuple
    state: object = field(compare=False)


def _best_first(root, bound: Callable, branch: Callable, value: Callable,
                node_limit: int, maximize: bool):
    """Generic best-first search.

    ``bound(state)`` is an optimistic integer bound for every completion,
    ``value(state)`` the objective if ``state`` is itself feasible (else
    ``None``), and ``branch(state)`` lists the children.  Ties in the bound
    go to the deeper node, then to the earlier-created one, so the search
    and the returned witness are deterministic.
    """
    sgn = 1 if maximize else -1
    best_val, best_state = None, None
    counter = 0
    heap = [_Node((-sgn * bound(root), 0, 0), (root, 0))]
    nodes = 0

    def better(v):
        return best_val is None or sgn * v > sgn * best_val

    while heap:
        node = heapq.heappop(heap)
        state, depth = node.state
        b = sgn * -node.key[0]
        if best_val is not None and sgn * b <= sgn * best_val:
            break  # every open node is bounded by this one
        nodes += 1
        if nodes > node_limit:
            raise ResourceLimitError(
                f"branch-and-bound exceeded {node_limit} nodes",
                bounds=_bounds(best_val, b, maximize))
        v = value(state)
        if v is not None and better(v):
            best_val, best_state = v, state
        for child in branch(state):
            cb = bound(child)
            if best_val is not None and sgn * cb <= sgn * best_val:
                continue
            counter += 1
            heapq.heappush(heap, _Node((-sgn * cb, -(depth + 1), counter), (child, depth + 1)))
    return best_val, best_state


def _bounds(best, open_bound, maximize):
    if maximize:
        return {"lower": best, "upper": open_bound}
    return {"lower": open_bound, "upper": best}


def _components(S: SetSystem) -> list[list[int]]:
    """Indices of sets grouped by connected components of the hypergraph."""
    parent = list(range(S.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for cont in S.containing():
        for i in cont[1:]:
            ra, rb = find(cont[0]), find(i)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for i in range(S.n):
        groups.setdefault(find(i), []).append(i)
    return [groups[r] for r in sorted(groups)]


def _sub_lp_value(sets: Sequence[tuple[int, ...]], maximize: bool) -> Fraction:
    elements = sorted({e for s in sets for e in s})
    pos = {e: k for k, e in enumerate(elements)}
    sub = SetSystem.build(len(elements), (tuple(pos[e] for e in s) for s in sets))
    return frac_matching(sub) if maximize else frac_hitting(sub)


def integral_packing(S: SetSystem, node_limit: int = DEFAULT_NODE_LIMIT) -> IntegralSolution:
    """Maximum number of pairwise disjoint sets, with a witness.

    Components of the hypergraph are solved independently.  Within a
    component a node fixes a prefix of include/exclude decisions; its bound
    is the number chosen plus the floor of the LP value of what is left.
    """
    value, witness = 0, []
    for comp in _components(S):
        sets = [S.sets[i] for i in comp]
        v, w = _pack_component(sets, node_limit)
        value += v
        witness.extend(comp[i] for i in w)
    return IntegralSolution(value, tuple(sorted(witness)))


def _pack_component(sets: list[tuple[int, ...]], node_limit: int):
    n = len(sets)
    # state: (next index to decide, chosen tuple, used elements)

    def available(state):
        k, _, used = state
        return [i for i in range(k, n) if used.isdisjoint(sets[i])]

    def bound(state):
        _, chosen, _ = state
        rest = available(state)
        if len(rest) <= 1:
            return len(chosen) + len(rest)
        return len(chosen) + math.floor(_sub_lp_value([sets[i] for i in rest], True))

    def branch(state):
        k, chosen, used = state
        rest = available(state)
        if not rest:
            return []
        i = rest[0]
        take = (i + 1, chosen + (i,), used | frozenset(sets[i]))
        skip = (i + 1, chosen, used)
        return [take, skip]

    def value(state):
        return len(state[1])

    best, state = _best_first((0, (), frozenset()), bound, branch, value, node_limit, True)
    return best, state[1]


def integral_hitting(S: SetSystem, node_limit: int = DEFAULT_NODE_LIMIT) -> IntegralSolution:
    """Minimum number of ground elements meeting every set, with a witness.

    Branching picks the unhit set with the fewest allowed elements and tries
    each of them in turn, forbidding the ones tried before.  The bound is
    the larger of the ceiling of the LP value and a greedy count of
    pairwise disjoint unhit sets.
    """
    value, witness = 0, []
    for comp in _components(S):
        sets = [S.sets[i] for i in comp]
        v, w = _hit_component(sets, node_limit)
        value += v
        witness.extend(w)
    return IntegralSolution(value, tuple(sorted(witness)))


def _hit_component(sets: list[tuple[int, ...]], node_limit: int):
    # state: (chosen elements, forbidden elements)

    def unhit(state):
        chosen, forbidden = state
        out = []
        for s in sets:
            if chosen.isdisjoint(s):
                out.append(tuple(e for e in s if e not in forbidden))
        return out

    def bound(state):
        rest = unhit(state)
        if any(not s for s in rest):
            return math.inf  # some set can no longer be hit
        if not rest:
            return len(state[0])
        used: set[int] = set()
        disjoint = 0
        for s in sorted(rest, key=len):
            if used.isdisjoint(s):
                used.update(s)
                disjoint += 1
        lb = disjoint
        if lb < len(rest) and len(rest) > 1:
            lb = max(lb, math.ceil(_sub_lp_value(rest, False)))
        return len(state[0]) + lb

    def branch(state):
        chosen, forbidden = state
        rest = unhit(state)
        if not rest:
            return []
        target = min(rest, key=len)
        out = []
        for k, e in enumerate(target):
            out.append((chosen | {e}, forbidden | frozenset(target[:k])))
        return out

    def value(state):
        return len(state[0]) if not unhit(state) else None

    best, state = _best_first((frozenset(), frozenset()), bound, branch, value,
                              node_limit, False)
    if best is None:  # pragma: no cover - every set is nonempty, so a hitting set exists
        raise ArithmeticError("no hitting set found")
    return best, sorted(state[0])


def domination_number(g: Graph, node_limit: int = DEFAULT_NODE_LIMIT) -> IntegralSolution:
    return integral_hitting(closed_neighborhood_system(g), node_limit)


def packing_result(S: SetSystem, integral: bool = False,
                   node_limit: int = DEFAULT_NODE_LIMIT) -> PackingResult:
    frac = frac_matching(S)
    if not integral:
        return PackingResult(frac, system_label=S.label)
    sol = integral_packing(S, node_limit)
    return PackingResult(frac, sol.value, sol.witness, S.label)

