"""Experiment registry, configuration, and report writing.

Each experiment is a function that receives its parameters and the
configuration and returns the values it computed together with the
expected values they are compared against.  Reports serialize rationals
as ``"p/q"`` strings and omit wall-clock timings, so the JSON files are
byte-identical across runs with the same configuration.
"""

from __future__ import annotations

import csv
import io
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .corpus import (fractional_iso_pairs, paley_companion, random_relabel,
                     triangle_rich_graphs, wl1_equivalent_pairs, wl2_equivalent_pairs)
from .errors import InvalidParameterError, ParseError, ResourceLimitError
from .graph import (make_complete, make_complete_bipartite, make_cycle,
                    make_matched_cliques, make_paley, make_rook4, make_shrikhande,
                    scalar_multiple, tensor_power, tensor_product)
from .lp import (DEFAULT_MAX_VARIABLES, ReductionCertificate, all_ones_lp, check_reduction,
                 find_fractional_graph_iso, format_fraction,
                 fractional_matrix_iso_from_graph_iso, satisfies_fractional_matrix_iso,
                 solve)
from .packing import (DEFAULT_NODE_LIMIT, closed_neighborhood_system, frac_hitting,
                      frac_matching, incidence_graph, integral_hitting, integral_packing)
from .patterns import (EDGE, VERTEX, edge_packing_system, enumerate_subgraphs, htw,
                       named_pattern, packing_system, vertex_packing_system)
from .triangles import (fano_free, fano_plane, is_triangle_decomposition, k3_decompose,
                        k_extension, odd_degree_count, triangles_through,
                        uncovered_edges_lower_bound)
from .wl import DEFAULT_MAX_TUPLES, wl_equivalent

CLAIMED, DERIVED, TRIVIAL = "claimed", "derived", "trivial"


@dataclass(frozen=True)
class HarnessConfig:
    max_tuples: int = DEFAULT_MAX_TUPLES
    node_limit: int = DEFAULT_NODE_LIMIT
    max_lp_variables: int = DEFAULT_MAX_VARIABLES
    experiments: tuple[str, ...] | None = None  # None selects the whole registry
    output_dir: str = "wlpack-out"
    seed: int = 20240229
    parallel: bool = False

    def __post_init__(self):
        for name in ("max_tuples", "node_limit", "max_lp_variables"):
            if getattr(self, name) <= 0:
                raise InvalidParameterError(f"{name} must be positive")

    @classmethod
    def parse(cls, text: str) -> "HarnessConfig":
        """Read ``key = value`` lines; ``#`` starts a comment."""
        ints = {"max_tuples", "node_limit", "max_lp_variables", "seed"}
        values: dict[str, object] = {}
        for lineno, raw in enumerate(text.split("\n"), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, eq, value = (p.strip() for p in line.partition("="))
            if not eq:
                raise ParseError("expected key = value", lineno)
            if key in ints:
                try:
                    values[key] = int(value)
                except ValueError:
                    raise ParseError(f"{key} must be an integer", lineno) from None
            elif key == "experiments":
                values[key] = tuple(x.strip() for x in value.split(",") if x.strip())
            elif key == "output_dir":
                values[key] = value
            elif key == "parallel":
                if value.lower() not in ("true", "false", "1", "0", "yes", "no"):
                    raise ParseError("parallel must be a boolean", lineno)
                values[key] = value.lower() in ("true", "1", "yes")
            else:
                raise ParseError(f"unknown key {key!r}", lineno)
        return cls(**values)

    @classmethod
    def load(cls, path: str | Path) -> "HarnessConfig":
        return cls.parse(Path(path).read_text())


@dataclass(frozen=True)
class Expectation:
    name: str
    value: object
    provenance: str
    relation: str = "=="

    def holds(self, actual) -> bool:
        if self.relation == "==":
            return actual == self.value
        if self.relation == "<=":
            return actual <= self.value
        if self.relation == ">=":
            return actual >= self.value
        raise InvalidParameterError(f"unknown relation {self.relation!r}")


@dataclass
class ExperimentReport:
    experiment_id: str
    claim: str
    params: dict
    inputs: list[str]
    computed: list[tuple[str, object]]
    expected: list[Expectation]
    passed: bool
    seed: int
    runtime_ms: int = 0
    status: str = "passed"  # passed | failed | skipped
    reason: str = ""

    @property
    def run_name(self) -> str:
        return self.experiment_id + "".join(f"-{k}{v}" for k, v in sorted(self.params.items()))

    def to_json(self) -> str:
        doc = {
            "experiment_id": self.experiment_id,
            "claim": self.claim,
            "params": self.params,
            "inputs": self.inputs,
            "computed": [{"name": n, "value": _jsonable(v)} for n, v in self.computed],
            "expected": [{"name": e.name, "relation": e.relation, "value": _jsonable(e.value),
                          "provenance": e.provenance} for e in self.expected],
            "passed": self.passed,
            "status": self.status,
            "reason": self.reason,
            "seed": self.seed,
        }
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"

    def key_values(self) -> str:
        return ";".join(f"{n}={_text(v)}" for n, v in self.computed)


def _jsonable(v):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, Fraction):
        return format_fraction(v)
    if isinstance(v, int):
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


def _text(v) -> str:
    j = _jsonable(v)
    return json.dumps(j) if isinstance(j, (bool, list)) or j is None else str(j)


@dataclass(frozen=True)
class Experiment:
    experiment_id: str
    claim: str
    body: Callable  # (params, config) -> (inputs, computed, expected)
    runs: tuple[dict, ...] = ({},)


REGISTRY: dict[str, Experiment] = {}


def register(experiment_id: str, claim: str, runs: tuple[dict, ...] = ({},)):
    def wrap(fn):
        REGISTRY[experiment_id] = Experiment(experiment_id, claim, fn, runs)
        return fn
    return wrap


class _Values:
    """Accumulates computed values and expectations for one experiment."""

    def __init__(self):
        self.inputs: list[str] = []
        self.computed: list[tuple[str, object]] = []
        self.expected: list[Expectation] = []

    def put(self, name, value, expect=None, provenance=DERIVED, relation="=="):
        self.computed.append((name, value))
        if expect is not None:
            self.expected.append(Expectation(name, expect, provenance, relation))
        return value

    def done(self):
        return self.inputs, self.computed, self.expected


def _wl(g, h, k, cfg):
    return wl_equivalent(g, h, k, cfg.max_tuples)


def _nu_f(S, cfg):
    return frac_matching(S, max_variables=cfg.max_lp_variables)


# ---------------------------------------------------------------------------
# registry


@register("ratio-shrikhande-rook",
          "edge-disjoint triangle packing: WL2-equivalent Shrikhande and 4x4 rook "
          "graphs have packing numbers 16 and 8 but equal fractional values")
def _ratio_shrikhande_rook(params, cfg):
    v = _Values()
    S, R = make_shrikhande(), make_rook4()
    v.inputs = [str(S.label), str(R.label)]
    k3 = named_pattern("K3")
    v.put("wl2_equivalent", _wl(S, R, 2, cfg), True, CLAIMED)
    es, er = edge_packing_system(k3, S), edge_packing_system(k3, R)
    v.put("rho_S", integral_packing(es, cfg.node_limit).value, 16, CLAIMED)
    v.put("rho_R", integral_packing(er, cfg.node_limit).value, 8, CLAIMED)
    v.put("rho_f_S", _nu_f(es, cfg), Fraction(16), DERIVED)
    v.put("rho_f_R", _nu_f(er, cfg), Fraction(16), DERIVED)
    return v.done()


@register("separation-2c3-c6",
          "fractional triangle packing separates 2C3 from C6, which WL1 cannot do",
          )
def _separation(params, cfg):
    v = _Values()
    g, h = scalar_multiple(2, make_cycle(3)), make_cycle(6)
    v.inputs = [str(g.label), str(h.label)]
    k3 = named_pattern("K3")
    v.put("wl1_equivalent", _wl(g, h, 1, cfg), True, CLAIMED)
    v.put("wl2_equivalent", _wl(g, h, 2, cfg), False, DERIVED)
    v.put("rho_f_2C3", _nu_f(edge_packing_system(k3, g), cfg), Fraction(2), CLAIMED)
    v.put("rho_f_C6", _nu_f(edge_packing_system(k3, h), cfg), Fraction(0), CLAIMED)
    return v.done()


@register("matching-ratio-cycle",
          "matching numbers of WL1-equivalent graphs differ by at most a factor 3/2, "
          "attained by C_{6s} and 2s C3",
          runs=({"s": 1}, {"s": 2}, {"s": 3}))
def _matching_ratio(params, cfg):
    s = int(params.get("s", 1))
    if s < 1:
        raise InvalidParameterError("s must be positive")
    v = _Values()
    g, h = make_cycle(6 * s), scalar_multiple(2 * s, make_cycle(3))
    v.inputs = [str(g.label), str(h.label)]
    k2 = named_pattern("K2")
    sg, sh = vertex_packing_system(k2, g), vertex_packing_system(k2, h)
    v.put("wl1_equivalent", _wl(g, h, 1, cfg), True, CLAIMED)
    v.put("nu_f_G", _nu_f(sg, cfg), Fraction(3 * s), DERIVED)
    v.put("nu_f_H", _nu_f(sh, cfg), Fraction(3 * s), DERIVED)
    nu_g = v.put("nu_G", integral_packing(sg, cfg.node_limit).value, 3 * s, TRIVIAL)
    nu_h = v.put("nu_H", integral_packing(sh, cfg.node_limit).value, 2 * s, TRIVIAL)
    v.put("ratio", Fraction(nu_g, nu_h), Fraction(3, 2), CLAIMED)
    return v.done()


@register("paley-domination",
          "Paley graphs have fractional domination number at most 2 while their "
          "WL1-equivalent circulant companions have domination number 2",
          runs=({"q": 13}, {"q": 17}, {"q": 29}, {"q": 37}))
def _paley(params, cfg):
    q = int(params.get("q", 13))
    v = _Values()
    g, h = make_paley(q), paley_companion(q)
    v.inputs = [str(g.label), str(h.label)]
    v.put("gamma_f_G", frac_hitting(closed_neighborhood_system(g),
                                    max_variables=cfg.max_lp_variables),
          Fraction(2), CLAIMED, "<=")
    v.put("wl1_equivalent", _wl(g, h, 1, cfg), True, CLAIMED)
    v.put("gamma_H", integral_hitting(closed_neighborhood_system(h), cfg.node_limit).value,
          2, CLAIMED)
    gamma_g = integral_hitting(closed_neighborhood_system(g), cfg.node_limit).value
    if q == 37:
        v.put("extension_2", k_extension(g, 2), True, CLAIMED)
        v.put("gamma_G", gamma_g, 3, DERIVED, ">=")
    else:
        v.put("gamma_G", gamma_g)
    return v.done()


@register("vertex-cover-pair",
          "two matched s-cliques and K_{s,s} are WL1-equivalent with vertex cover "
          "numbers 2s-2 and s but equal fractional values",
          runs=({"s": 3}, {"s": 4}, {"s": 5}))
def _vertex_cover(params, cfg):
    s = int(params.get("s", 3))
    v = _Values()
    g, h = make_matched_cliques(s), make_complete_bipartite(s, s)
    v.inputs = [str(g.label), str(h.label)]
    v.put("wl1_equivalent", _wl(g, h, 1, cfg), True, CLAIMED)
    # vertex cover = hitting set of the edge system
    sg = vertex_packing_system(named_pattern("K2"), g)
    sh = vertex_packing_system(named_pattern("K2"), h)
    v.put("tau_G", integral_hitting(sg, cfg.node_limit).value, 2 * s - 2, CLAIMED)
    v.put("tau_H", integral_hitting(sh, cfg.node_limit).value, s, CLAIMED)
    v.put("tau_f_G", frac_hitting(sg, max_variables=cfg.max_lp_variables), Fraction(s), DERIVED)
    v.put("tau_f_H", frac_hitting(sh, max_variables=cfg.max_lp_variables), Fraction(s), DERIVED)
    return v.done()


@register("htw-classification",
          "homomorphism-hereditary treewidth bounds the WL dimension needed for "
          "fractional F-packing")
def _htw(params, cfg):
    v = _Values()
    for name, want in (("K2", 1), ("P3", 1), ("K3", 2), ("K13", 1), ("P4", 2)):
        v.put(f"htw_{name}", htw(named_pattern(name)), want, CLAIMED if name in
              ("K2", "P3", "K3") else DERIVED)
    p3, k2, k3 = named_pattern("P3"), named_pattern("K2"), named_pattern("K3")
    agree_p3 = agree_k2 = True
    for pair in wl1_equivalent_pairs():
        v.inputs.append(pair.name)
        if _nu_f(packing_system(p3, pair.g, VERTEX), cfg) != \
                _nu_f(packing_system(p3, pair.h, VERTEX), cfg):
            agree_p3 = False
        if _nu_f(packing_system(k2, pair.g, VERTEX), cfg) != \
                _nu_f(packing_system(k2, pair.h, VERTEX), cfg):
            agree_k2 = False
    agree_k3 = True
    for pair in wl2_equivalent_pairs():
        v.inputs.append(pair.name)
        for mode in (VERTEX, EDGE):
            if _nu_f(packing_system(k3, pair.g, mode), cfg) != \
                    _nu_f(packing_system(k3, pair.h, mode), cfg):
                agree_k3 = False
    v.put("pi_f_P3_agrees_on_wl1_pairs", agree_p3, True, CLAIMED)
    v.put("nu_f_agrees_on_wl1_pairs", agree_k2, True, CLAIMED)
    v.put("pi_f_K3_agrees_on_wl2_pairs", agree_k3, True, CLAIMED)
    v.put("wl1_pairs", len(wl1_equivalent_pairs()), 10, TRIVIAL, ">=")
    return v.done()


@register("tensor-square-wl2",
          "tensor products preserve WL2-equivalence: S x S and R x R on 256 vertices")
def _tensor_square(params, cfg):
    v = _Values()
    S, R = make_shrikhande(), make_rook4()
    g, h = tensor_product(S, S), tensor_product(R, R)
    v.inputs = [str(g.label), str(h.label)]
    v.put("vertices", g.n, 256, TRIVIAL)
    v.put("wl2_equivalent", _wl(g, h, 2, cfg), True, CLAIMED)
    return v.done()


@register("k3-decomposition",
          "K3 x K3 splits into 6 edge-disjoint triangles with unique edge extensions, "
          "and so does every triangle product inside S x S")
def _k3_decomposition(params, cfg):
    v = _Values()
    K3, S = make_complete(3), make_shrikhande()
    t = tensor_product(K3, K3)
    ss = tensor_product(S, S)
    v.inputs = [str(t.label), str(ss.label)]
    dt = k3_decompose(t)
    v.put("K3xK3_triangles", len(dt) if dt else 0, 6, CLAIMED)
    v.put("K3xK3_edges", t.m, 18, TRIVIAL)
    v.put("K3xK3_unique_extension",
          all(len(triangles_through(t, a, b)) == 1 for a, b in t.edges), True, CLAIMED)
    ds = k3_decompose(ss)
    v.put("SxS_edges", ss.m, 4608, TRIVIAL)
    v.put("SxS_triangles", len(ds) if ds else 0, 1536, CLAIMED)
    v.put("SxS_partition", ds is not None and is_triangle_decomposition(ss, ds), True, CLAIMED)
    return v.done()


@register("uncovered-edges",
          "edges left uncovered by a triangle packing are at least half the number of "
          "odd-degree vertices, and the rook graph powers lose at least 8^k times that "
          "of (K4)^k")
def _uncovered(params, cfg):
    v = _Values()
    K4, R = make_complete(4), make_rook4()
    k3 = named_pattern("K3")
    rho = v.put("rho_K4", integral_packing(edge_packing_system(k3, K4), cfg.node_limit).value,
                1, DERIVED)
    d_k4 = v.put("uncovered_K4", K4.m - 3 * rho, 3, DERIVED)
    v.put("bound_K4", uncovered_edges_lower_bound(K4), 2, DERIVED)
    rho_r = integral_packing(edge_packing_system(k3, R), cfg.node_limit).value
    d_r = v.put("uncovered_R", R.m - 3 * rho_r, 24, DERIVED)
    v.put("uncovered_R_vs_8_uncovered_K4", d_r >= 8 * d_k4, True, CLAIMED)
    inputs = [str(K4.label), str(R.label)]
    for k in (2, 4):
        K = tensor_power(K4, k)
        inputs.append(f"(K4)^{k}")
        v.put(f"odd_vertices_K4_power_{k}", odd_degree_count(K), 4 ** k, CLAIMED)
        v.put(f"bound_K4_power_{k}", uncovered_edges_lower_bound(K), 2 ** (2 * k - 1), CLAIMED)
    for k in (1, 2):
        v.put(f"power_identity_k{k}", 8 ** k * 2 ** (2 * k - 1) == Fraction(2 ** (5 * k), 2),
              True, CLAIMED)
    v.inputs = inputs
    return v.done()


@register("fano-freeness",
          "triangle systems of graphs never contain a Fano plane, whose fractional "
          "matching number is 7/3")
def _fano(params, cfg):
    v = _Values()
    k3 = named_pattern("K3")
    free = True
    for g in triangle_rich_graphs():
        v.inputs.append(str(g.label) if g.label else f"graph(n={g.n})")
        S = edge_packing_system(k3, g)
        if S.n >= 7 and not fano_free(S):
            free = False
    v.put("corpus_fano_free", free, True, CLAIMED)
    v.put("fano_plane_fano_free", fano_free(fano_plane()), False, TRIVIAL)
    v.put("nu_f_fano", _nu_f(fano_plane(), cfg), Fraction(7, 3), DERIVED)
    return v.done()


def _incidence_pairs():
    k2 = named_pattern("K2")
    out = []
    for g, h in ((make_cycle(6), scalar_multiple(2, make_cycle(3))),
                 (make_cycle(8), scalar_multiple(2, make_cycle(4))),
                 (make_matched_cliques(3), make_complete_bipartite(3, 3))):
        out.append((f"{g.label} / {h.label}", vertex_packing_system(k2, g),
                    vertex_packing_system(k2, h)))
    return out


@register("lp-equal-values",
          "fractionally isomorphic incidence matrices give mutually reducible, hence "
          "equal-valued, all-ones programs")
def _lp_equal(params, cfg):
    v = _Values()
    for name, s1, s2 in _incidence_pairs():
        v.inputs.append(name)
        g1, g2 = incidence_graph(s1), incidence_graph(s2)
        X = find_fractional_graph_iso(g1, g2)
        v.put(f"{name}: fractional_iso", X is not None, True, CLAIMED)
        if X is None:
            continue
        Y, Z = fractional_matrix_iso_from_graph_iso(X, s1.m, s1.n)
        M, N = s1.incidence_matrix(), s2.incidence_matrix()
        v.put(f"{name}: matrix_iso", satisfies_fractional_matrix_iso(M, N, Y, Z), True, CLAIMED)
        l1, l2 = all_ones_lp(M, "max"), all_ones_lp(N, "max")
        cert = ReductionCertificate.of(Y, Z)
        v.put(f"{name}: reduces_forward", check_reduction(l1, l2, cert), True, CLAIMED)
        v.put(f"{name}: reduces_backward", check_reduction(l2, l1, cert.transposed()),
              True, CLAIMED)
        a, b = solve(l1, cfg.max_lp_variables), solve(l2, cfg.max_lp_variables)
        v.put(f"{name}: values_equal", a.value == b.value, True, CLAIMED)
        v.put(f"{name}: value", a.value)
    return v.done()


@register("fractional-iso-cross-check",
          "two graphs are fractionally isomorphic exactly when WL1 cannot tell them apart")
def _cross_check(params, cfg):
    v = _Values()
    pairs = fractional_iso_pairs()
    mismatches = []
    for p in pairs:
        v.inputs.append(p.name)
        lp_says = find_fractional_graph_iso(p.g, p.h) is not None
        if lp_says != _wl(p.g, p.h, 1, cfg):
            mismatches.append(p.name)
    v.put("pairs", len(pairs), 20, TRIVIAL, ">=")
    v.put("mismatches", len(mismatches), 0, CLAIMED)
    return v.done()


@register("permutation-robustness",
          "relabeling vertices at random changes no computed invariant")
def _robustness(params, cfg):
    v = _Values()
    rng = random.Random(cfg.seed)
    S, R = make_shrikhande(), make_rook4()
    S2, R2 = random_relabel(S, rng), random_relabel(R, rng)
    k3 = named_pattern("K3")
    v.inputs = [str(S.label), str(R.label)]
    v.put("wl2_S_relabeled_S", _wl(S, S2, 2, cfg), True, TRIVIAL)
    v.put("wl2_relabeled_pair", _wl(S2, R2, 2, cfg), True, TRIVIAL)
    v.put("triangles_relabeled_S", len(enumerate_subgraphs(k3, S2)), 32, DERIVED)
    v.put("rho_f_relabeled_R", _nu_f(edge_packing_system(k3, R2), cfg), Fraction(16), DERIVED)
    v.put("rho_relabeled_R", integral_packing(edge_packing_system(k3, R2), cfg.node_limit).value,
          8, DERIVED)
    c6, t = make_cycle(6), scalar_multiple(2, make_cycle(3))
    v.put("wl1_relabeled_C6_2C3",
          _wl(random_relabel(c6, rng), random_relabel(t, rng), 1, cfg), True, TRIVIAL)
    return v.done()


# ---------------------------------------------------------------------------
# running


def _execute(experiment: Experiment, params: dict, cfg: HarnessConfig) -> ExperimentReport:
    start = time.perf_counter()
    try:
        inputs, computed, expected = experiment.body(params, cfg)
    except ResourceLimitError as exc:
        ms = int((time.perf_counter() - start) * 1000)
        reason = str(exc) + (f" (bounds: {exc.bounds})" if exc.bounds else "")
        return ExperimentReport(experiment.experiment_id, experiment.claim, dict(params), [],
                                [], [], False, cfg.seed, ms, "skipped", reason)
    ms = int((time.perf_counter() - start) * 1000)
    values = dict(computed)
    passed = all(e.holds(values[e.name]) for e in expected)
    return ExperimentReport(experiment.experiment_id, experiment.claim, dict(params), inputs,
                            computed, expected, passed, cfg.seed, ms,
                            "passed" if passed else "failed")


def run_experiment(experiment_id: str, config: HarnessConfig | None = None,
                   write: bool = False, **params) -> ExperimentReport:
    """Run one registered experiment; ``params`` override its first default run."""
    cfg = config or HarnessConfig()
    if experiment_id not in REGISTRY:
        raise InvalidParameterError(f"unknown experiment {experiment_id!r}")
    exp = REGISTRY[experiment_id]
    merged = {**exp.runs[0], **params}
    report = _execute(exp, merged, cfg)
    if write:
        write_reports([report], cfg.output_dir)
    return report


def _execute_packed(args):
    experiment_id, params, cfg = args
    return _execute(REGISTRY[experiment_id], params, cfg)


def run_all(config: HarnessConfig | None = None, write: bool = True) -> list[ExperimentReport]:
    """Run every selected experiment, each with all of its default parameter sets."""
    cfg = config or HarnessConfig()
    ids = list(REGISTRY) if cfg.experiments is None else list(cfg.experiments)
    for i in ids:
        if i not in REGISTRY:
            raise InvalidParameterError(f"unknown experiment {i!r}")
    jobs = [(i, dict(p), cfg) for i in ids for p in REGISTRY[i].runs]
    if cfg.parallel and len(jobs) > 1:
        with ProcessPoolExecutor() as pool:
            reports = list(pool.map(_execute_packed, jobs))
    else:
        reports = [_execute_packed(j) for j in jobs]
    if write:
        write_reports(reports, cfg.output_dir)
    return reports


def summary_csv(reports: list[ExperimentReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["experiment_id", "passed", "runtime_ms", "key_values"])
    for r in reports:
        kv = r.key_values() if r.status != "skipped" else f"skipped: {r.reason}"
        w.writerow([r.run_name, str(r.passed).lower(), r.runtime_ms, kv])
    return buf.getvalue()


def write_reports(reports: list[ExperimentReport], output_dir: str | Path) -> Path:
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    for r in reports:
        (out / f"{r.run_name}.json").write_text(r.to_json(), newline="\n")
    summary = out / "summary.csv"
    summary.write_text(summary_csv(reports), newline="\n")
    return summary


def exit_code(reports: list[ExperimentReport]) -> int:
    """Nonzero when any experiment failed; skipped ones do not count."""
    return 1 if any(r.status == "failed" for r in reports) else 0


def with_overrides(cfg: HarnessConfig, **changes) -> HarnessConfig:
    return replace(cfg, **{k: v for k, v in changes.items() if v is not None})
