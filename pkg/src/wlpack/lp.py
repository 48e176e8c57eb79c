"""Exact linear programming over the rationals.

Every LP has the canonical shape ``opt a.x  s.t.  M x <= b, x >= 0``.
Equalities are encoded as two opposite inequalities.  The solver is a
two-phase sparse-tableau simplex with largest-coefficient pricing and a
fallback to Bland's rule on degenerate stalls, so it always terminates; arithmetic is exact throughout (``gmpy2.mpq`` inside
the tableau when available, :class:`fractions.Fraction` at the API).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InvalidParameterError, ParseError, ResourceLimitError
from .graph import Graph

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

DEFAULT_MAX_VARIABLES = 5000
BLAND_AFTER = 20

OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"


def to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    if hasattr(v, "numerator") and hasattr(v, "denominator"):
        return Fraction(int(v.numerator), int(v.denominator))
    raise InvalidParameterError(f"cannot convert {v!r} to an exact rational")


def format_fraction(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


@dataclass(frozen=True)
class RationalLP:
    """``opt objective.x`` subject to ``rows[i].x <= rhs[i]`` and ``x >= 0``.

    ``rows`` are sparse: each maps a column index to a nonzero coefficient.
    """

    objective: tuple[Fraction, ...]
    rows: tuple[Mapping[int, Fraction], ...]
    rhs: tuple[Fraction, ...]
    opt: str = "max"

    def __post_init__(self):
        if self.opt not in ("max", "min"):
            raise InvalidParameterError(f"opt must be 'max' or 'min', got {self.opt!r}")
        if len(self.rows) != len(self.rhs):
            raise InvalidParameterError("row count and rhs length differ")
        n = len(self.objective)
        for row in self.rows:
            for j, v in row.items():
                if not 0 <= j < n:
                    raise InvalidParameterError(f"column {j} out of range for {n} variables")
                if v == 0:
                    raise InvalidParameterError("sparse rows must not store zeros")

    @classmethod
    def build(cls, objective: Iterable, rows: Iterable[Mapping[int, object]],
              rhs: Iterable, opt: str = "max") -> "RationalLP":
        obj = tuple(to_fraction(v) for v in objective)
        sparse = tuple({int(j): to_fraction(v) for j, v in row.items() if v != 0}
                       for row in rows)
        return cls(obj, sparse, tuple(to_fraction(v) for v in rhs), opt)

    @classmethod
    def from_dense(cls, objective: Sequence, matrix: Sequence[Sequence], rhs: Sequence,
                   opt: str = "max") -> "RationalLP":
        n = len(objective)
        for r in matrix:
            if len(r) != n:
                raise InvalidParameterError("matrix row length differs from objective length")
        return cls.build(objective, ({j: v for j, v in enumerate(r) if v != 0} for r in matrix),
                         rhs, opt)

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def dense_matrix(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.num_vars for _ in self.rows]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                out[i][j] = v
        return out

    def is_feasible(self, x: Sequence[Fraction]) -> bool:
        if len(x) != self.num_vars or any(v < 0 for v in x):
            return False
        return all(sum(v * x[j] for j, v in row.items()) <= b
                   for row, b in zip(self.rows, self.rhs))

    def evaluate(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * v for a, v in zip(self.objective, x)), Fraction(0))


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    solution: tuple[Fraction, ...] | None = None
    dual: tuple[Fraction, ...] | None = None
    pivots: int = 0


def dual(lp: RationalLP) -> RationalLP:
    """Standard dual, written back into the canonical ``<=`` form.

    ``max a.x, Mx <= b``  becomes  ``min b.y, -M^T y <= -a``;
    ``min a.x, Mx <= b``  becomes  ``max -b.y, -M^T y <= a``.
    Applying it twice returns the original program.
    """
    cols: list[dict[int, Fraction]] = [{} for _ in range(lp.num_vars)]
    for i, row in enumerate(lp.rows):
        for j, v in row.items():
            cols[j][i] = -v
    if lp.opt == "max":
        return RationalLP(tuple(lp.rhs), tuple(cols), tuple(-a for a in lp.objective), "min")
    return RationalLP(tuple(-b for b in lp.rhs), tuple(cols), tuple(lp.objective), "max")


class _Tableau:
    """Sparse simplex tableau; rows are dicts, ``cols[j]`` indexes rows touching j."""

    def __init__(self, rows, rhs, basis, ncols):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.cols = [set() for _ in range(ncols)]
        for i, row in enumerate(rows):
            for j in row:
                self.cols[j].add(i)
        self.obj: dict[int, object] = {}
        self.zval = _Q(0)
        self.pivots = 0

    def set_objective(self, cost: Mapping[int, object]):
        obj = {j: _Q(c) for j, c in cost.items() if c != 0}
        zval = _Q(0)
        for i, b in enumerate(self.basis):
            cb = cost.get(b, 0)
            if cb == 0:
                continue
            zval += cb * self.rhs[i]
            for j, v in self.rows[i].items():
                nv = obj.get(j, 0) - cb * v
                if nv == 0:
                    obj.pop(j, None)
                else:
                    obj[j] = nv
        for b in self.basis:
            obj.pop(b, None)
        self.obj, self.zval = obj, zval

    def pivot(self, p: int, j: int):
        row = self.rows[p]
        piv = row[j]
        if piv != 1:
            inv = 1 / piv
            for c in row:
                row[c] *= inv
            self.rhs[p] *= inv
        row[j] = _Q(1)
        bp = self.rhs[p]
        for i in list(self.cols[j]):
            if i == p:
                continue
            target = self.rows[i]
            f = target[j]
            for c, v in row.items():
                nv = target.get(c, 0) - f * v
                if nv == 0:
                    if c in target:
                        del target[c]
                        self.cols[c].discard(i)
                else:
                    if c not in target:
                        self.cols[c].add(i)
                    target[c] = nv
            self.rhs[i] -= f * bp
        f = self.obj.get(j, 0)
        if f != 0:
            for c, v in row.items():
                nv = self.obj.get(c, 0) - f * v
                if nv == 0:
                    self.obj.pop(c, None)
                else:
                    self.obj[c] = nv
            self.zval += f * bp
        self.basis[p] = j
        self.pivots += 1

    def run(self, allowed, max_pivots: int | None = None) -> str:
        """Maximize over the columns accepted by ``allowed``.

        Pricing picks the largest reduced cost; after ``BLAND_AFTER``
        consecutive degenerate pivots it switches to Bland's smallest-index
        rule until the objective strictly improves, which rules out cycling.
        """
        degenerate = 0
        while True:
            best_j, best_d = None, None
            for j, d in self.obj.items():
                if d > 0 and allowed(j):
                    if degenerate >= BLAND_AFTER:
                        if best_j is None or j < best_j:
                            best_j = j
                    elif best_d is None or d > best_d or (d == best_d and j < best_j):
                        best_j, best_d = j, d
            if best_j is None:
                return OPTIMAL
            best = None
            for i in self.cols[best_j]:
                a = self.rows[i][best_j]
                if a > 0:
                    key = (self.rhs[i] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            degenerate = degenerate + 1 if best[0][0] == 0 else 0
            self.pivot(best[1], best_j)
            if max_pivots is not None and self.pivots > max_pivots:
                raise ResourceLimitError("simplex pivot budget exhausted")


def _pair_equalities(lp: RationalLP) -> dict[int, int]:
    """Map row ``i`` to ``i'`` when the two rows are exact negations."""
    seen: dict[tuple, int] = {}
    partner: dict[int, int] = {}
    for i, (row, b) in enumerate(zip(lp.rows, lp.rhs)):
        if not row:
            continue
        key = (tuple(sorted(row.items())), b)
        neg = (tuple(sorted((j, -v) for j, v in row.items())), -b)
        if neg in seen and seen[neg] not in partner:
            k = seen.pop(neg)
            partner[k], partner[i] = i, k
        else:
            seen.setdefault(key, i)
    return partner


def solve(lp: RationalLP, max_variables: int = DEFAULT_MAX_VARIABLES) -> LPResult:
    """Solve exactly; the optimum is certified by a matching dual solution.

    Pairs of opposite rows are handled internally as one equality row with
    an artificial basic variable instead of two slack rows.
    """
    n, m = lp.num_vars, lp.num_rows
    if n > max_variables:
        raise ResourceLimitError(f"{n} variables exceed the cap of {max_variables}")
    partner = _pair_equalities(lp)
    # columns: structural 0..n-1, one slack per inequality row, then artificials
    rows, rhs, basis = [], [], []
    slack_of: dict[int, int] = {}
    art_of: dict[int, tuple[int, int]] = {}  # original row -> (artificial column, sign)
    ineq = [i for i in range(m) if i not in partner]
    eq = [i for i in range(m) if i in partner and i < partner[i]]
    for t, i in enumerate(ineq):
        slack_of[i] = n + t
    artificial_start = n + len(ineq)
    next_art = artificial_start
    for i in ineq + eq:
        row = {j: _Q(v) for j, v in lp.rows[i].items()}
        b = _Q(lp.rhs[i])
        if i in slack_of:
            row[slack_of[i]] = _Q(1)
        sign = 1
        if b < 0 or i in partner:
            if b < 0:
                row = {j: -v for j, v in row.items()}
                b, sign = -b, -1
            row[next_art] = _Q(1)
            art_of[i] = (next_art, sign)
            basis.append(next_art)
            next_art += 1
        else:
            basis.append(slack_of[i])
        rows.append(row)
        rhs.append(b)
    tab = _Tableau(rows, rhs, basis, next_art)
    structural = lambda j: j < artificial_start  # noqa: E731

    if next_art > artificial_start:
        tab.set_objective({a: -1 for a in range(artificial_start, next_art)})
        tab.run(structural)
        if tab.zval != 0:
            return LPResult(INFEASIBLE, pivots=tab.pivots)
        _drive_out_artificials(tab, artificial_start)

    sign = 1 if lp.opt == "max" else -1
    tab.set_objective({j: sign * _Q(a) for j, a in enumerate(lp.objective) if a != 0})
    status = tab.run(structural)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, pivots=tab.pivots)

    x = [Fraction(0)] * n
    for i, b in enumerate(tab.basis):
        if b < n:
            x[b] = to_fraction(tab.rhs[i])
    # row multipliers: minus the reduced cost of the row's slack, or of its
    # artificial (sign-corrected) for equality rows
    y = [Fraction(0)] * m
    for i in ineq:
        y[i] = -to_fraction(tab.obj.get(slack_of[i], 0))
    for i in eq:
        a, s = art_of[i]
        pi = -s * to_fraction(tab.obj.get(a, 0))
        y[i], y[partner[i]] = max(pi, Fraction(0)), max(-pi, Fraction(0))
    value = lp.evaluate(x)
    result = LPResult(OPTIMAL, value, tuple(x), tuple(y), tab.pivots)
    _certify(lp, result)
    return result


def _drive_out_artificials(tab: _Tableau, artificial_start: int):
    """Pivot zero-valued artificials out of the basis where possible.

    An artificial left basic sits in a row with no structural entries; such a
    row is redundant and no later pivot can touch it.
    """
    for i, b in enumerate(tab.basis):
        if b < artificial_start:
            continue
        j = min((c for c in tab.rows[i] if c < artificial_start), default=None)
        if j is not None:
            tab.pivot(i, j)


def _certify(lp: RationalLP, result: LPResult):
    x, y = result.solution, result.dual
    if not lp.is_feasible(x):
        raise ArithmeticError("simplex returned an infeasible primal point")
    d = dual(lp)
    if not d.is_feasible(y):
        raise ArithmeticError("simplex returned an infeasible dual point")
    if d.evaluate(y) != result.value:
        raise ArithmeticError("primal and dual objective values differ")


# ---------------------------------------------------------------------------
# reductions between programs


@dataclass(frozen=True)
class ReductionCertificate:
    """Matrices ``Y`` (m x m) and ``Z`` (n x n) witnessing ``L1 <= L2``."""

    Y: tuple[tuple[Fraction, ...], ...]
    Z: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def of(cls, Y, Z) -> "ReductionCertificate":
        conv = lambda A: tuple(tuple(to_fraction(v) for v in r) for r in A)  # noqa: E731
        return cls(conv(Y), conv(Z))

    @classmethod
    def identity(cls, m: int, n: int) -> "ReductionCertificate":
        eye = lambda k: [[int(i == j) for j in range(k)] for i in range(k)]  # noqa: E731
        return cls.of(eye(m), eye(n))

    def transposed(self) -> "ReductionCertificate":
        return ReductionCertificate(tuple(zip(*self.Y)), tuple(zip(*self.Z)))


def _obj_array(rows) -> np.ndarray:
    arr = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            arr[i, j] = v
    return arr


def check_reduction(l1: RationalLP, l2: RationalLP, cert: ReductionCertificate) -> bool:
    """Does ``cert`` witness that ``l1`` reduces to ``l2``?

    With ``l1 = (a, M, b)`` and ``l2 = (c, N, d)`` the conditions are
    ``Y, Z >= 0``, ``a^T Z <= c^T`` (min) or ``>=`` (max), ``M Z <= Y N`` and
    ``Y d <= b``, all checked exactly.
    """
    m, n = l1.num_rows, l1.num_vars
    if (l2.num_rows, l2.num_vars) != (m, n) or l1.opt != l2.opt:
        raise InvalidParameterError("programs must share shape and direction")
    if len(cert.Y) != m or any(len(r) != m for r in cert.Y):
        raise InvalidParameterError("Y must be m x m")
    if len(cert.Z) != n or any(len(r) != n for r in cert.Z):
        raise InvalidParameterError("Z must be n x n")
    if any(v < 0 for r in cert.Y for v in r) or any(v < 0 for r in cert.Z for v in r):
        return False
    Y, Z = _obj_array(cert.Y), _obj_array(cert.Z)
    a = np.array(l1.objective, dtype=object)
    c = np.array(l2.objective, dtype=object)
    aZ = a.dot(Z) if n else a
    if l1.opt == "min":
        if any(u > v for u, v in zip(aZ, c)):
            return False
    elif any(u < v for u, v in zip(aZ, c)):
        return False
    if m and n:
        M, N = _obj_array(l1.dense_matrix()), _obj_array(l2.dense_matrix())
        if np.any(M.dot(Z) > Y.dot(N)):
            return False
    if m:
        d = np.array(l2.rhs, dtype=object)
        if any(u > v for u, v in zip(Y.dot(d), l1.rhs)):
            return False
    return True


def verify_equal_values(l1: RationalLP, l2: RationalLP, cert12: ReductionCertificate,
                        cert21: ReductionCertificate) -> bool:
    """Check both reductions, then confirm the solved values coincide."""
    if not (check_reduction(l1, l2, cert12) and check_reduction(l2, l1, cert21)):
        return False
    r1, r2 = solve(l1), solve(l2)
    if r1.status != r2.status:
        return False
    return r1.status != OPTIMAL or r1.value == r2.value


def all_ones_lp(matrix: Sequence[Sequence[int]], opt: str = "max") -> RationalLP:
    """``LP(1_n, M, 1_m, opt)`` for an m x n matrix."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    return RationalLP.from_dense([1] * n, matrix, [1] * m, opt)


# ---------------------------------------------------------------------------
# fractional isomorphism


def fractional_iso_lp(g: Graph, h: Graph) -> tuple[RationalLP, list[tuple[int, int]]]:
    """Feasibility LP for a doubly stochastic ``X`` with ``A X = X B``.

    Variables exist only for same-colored pairs ``(u, v)``; the returned list
    maps each variable index back to its matrix position.
    """
    n = g.n
    pairs = [(u, v) for u in range(n) for v in range(n) if g.color(u) == h.color(v)]
    index = {p: i for i, p in enumerate(pairs)}
    rows: list[dict[int, int]] = []
    rhs: list[int] = []

    def add_equality(row: dict[int, int], b: int):
        row = {j: c for j, c in row.items() if c != 0}
        if not row:
            if b != 0:
                # 0 = b with b != 0: record an infeasible pair
                rows.extend([{}, {}])
                rhs.extend([b, -b])
            return
        rows.append(row)
        rhs.append(b)
        rows.append({j: -c for j, c in row.items()})
        rhs.append(-b)

    for u in range(n):
        for w in range(n):
            row: dict[int, int] = {}
            # (A X)_{uw} = sum over neighbors v of u of X_{v w}
            for v in g.neighbors(u):
                if (v, w) in index:
                    j = index[(v, w)]
                    row[j] = row.get(j, 0) + 1
            # (X B)_{uw} = sum over neighbors v of w in h of X_{u v}
            for v in h.neighbors(w):
                if (u, v) in index:
                    j = index[(u, v)]
                    row[j] = row.get(j, 0) - 1
            add_equality(row, 0)
    for u in range(n):
        add_equality({index[(u, v)]: 1 for v in range(n) if (u, v) in index}, 1)
    for v in range(n):
        add_equality({index[(u, v)]: 1 for u in range(n) if (u, v) in index}, 1)
    return RationalLP.build([0] * len(pairs), rows, rhs, "max"), pairs


def find_fractional_graph_iso(g: Graph, h: Graph) -> list[list[Fraction]] | None:
    """A doubly stochastic ``X`` with ``A X = X B`` (respecting colors), or None."""
    if g.n != h.n or g.is_colored() != h.is_colored():
        return None
    if sorted(g.color(v) for v in range(g.n)) != sorted(h.color(v) for v in range(h.n)):
        return None
    lp, pairs = fractional_iso_lp(g, h)
    result = solve(lp)
    if result.status != OPTIMAL:
        return None
    X = [[Fraction(0)] * g.n for _ in range(g.n)]
    for (u, v), val in zip(pairs, result.solution):
        X[u][v] = val
    return X


def is_doubly_stochastic(X: Sequence[Sequence[Fraction]]) -> bool:
    n = len(X)
    if any(len(r) != n for r in X) or any(v < 0 for r in X for v in r):
        return False
    return all(sum(r) == 1 for r in X) and all(sum(X[i][j] for i in range(n)) == 1
                                               for j in range(n))


def fractional_matrix_iso_from_graph_iso(X: Sequence[Sequence[Fraction]], m: int, n: int):
    """Split a block-diagonal ``X`` over an incidence graph into ``(Y, Z)``.

    The first ``m`` indices are the ground (red) side, the next ``n`` the set
    (blue) side.
    """
    size = m + n
    if len(X) != size or any(len(r) != size for r in X):
        raise InvalidParameterError("X must be (m + n) x (m + n)")
    for i in range(size):
        for j in range(size):
            if (i < m) != (j < m) and X[i][j] != 0:
                raise InvalidParameterError("X mixes the two color classes")
    Y = [[X[i][j] for j in range(m)] for i in range(m)]
    Z = [[X[m + i][m + j] for j in range(n)] for i in range(n)]
    return Y, Z


def satisfies_fractional_matrix_iso(M, N, Y, Z) -> bool:
    """``M Z = Y N`` and ``N Z^T = Y^T M`` with doubly stochastic ``Y, Z``."""
    if not (is_doubly_stochastic(Y) and is_doubly_stochastic(Z)):
        return False
    M, N, Y, Z = map(_obj_array, (M, N, Y, Z))
    return bool(np.all(M.dot(Z) == Y.dot(N)) and np.all(N.dot(Z.T) == Y.T.dot(M)))


# ---------------------------------------------------------------------------
# text format: "max: c1 c2 ..." then "row: a1 a2 ... <= b" lines

_ROW_RE = re.compile(r"^row\s*:(.*?)(<=|≤)(.*)$")


def parse_lp(text: str) -> RationalLP:
    opt = objective = None
    rows, rhs = [], []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if objective is None:
                head, _, body = line.partition(":")
                if head.strip() not in ("max", "min") or not _:
                    raise ParseError("first line must be 'max: ...' or 'min: ...'", lineno)
                opt = head.strip()
                objective = [Fraction(t) for t in body.split()]
                continue
            match = _ROW_RE.match(line)
            if not match:
                raise ParseError("expected 'row: coeffs <= rhs'", lineno)
            coeffs = [Fraction(t) for t in match.group(1).split()]
            if len(coeffs) != len(objective):
                raise ParseError(f"row has {len(coeffs)} coefficients, "
                                 f"objective has {len(objective)}", lineno)
            rows.append(coeffs)
            rhs.append(Fraction(match.group(3).strip()))
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), lineno) from None
    if objective is None:
        raise ParseError("missing objective line", 1)
    return RationalLP.from_dense(objective, rows, rhs, opt)


def serialize_lp(lp: RationalLP) -> str:
    out = [f"{lp.opt}: " + " ".join(format_fraction(v) for v in lp.objective)]
    for row, b in zip(lp.dense_matrix(), lp.rhs):
        out.append("row: " + " ".join(format_fraction(v) for v in row)
                   + f" <= {format_fraction(b)}")
    return "\n".join(out) + "\n"
