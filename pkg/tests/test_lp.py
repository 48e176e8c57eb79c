from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from wlpack.corpus import wl1_equivalent_pairs, wl1_inequivalent_pairs
from wlpack.errors import InvalidParameterError, ParseError, ResourceLimitError
from wlpack.graph import Graph, make_complete, make_cycle, make_path, disjoint_union, scalar_multiple
from wlpack.lp import (INFEASIBLE, OPTIMAL, UNBOUNDED, RationalLP, ReductionCertificate,
                       all_ones_lp, check_reduction, dual, find_fractional_graph_iso,
                       fractional_matrix_iso_from_graph_iso, is_doubly_stochastic, parse_lp,
                       satisfies_fractional_matrix_iso, serialize_lp, solve,
                       verify_equal_values)
from wlpack.packing import closed_neighborhood_system, frac_hitting, frac_matching, hitting_lp, \
    incidence_graph, matching_lp
from wlpack.patterns import named_pattern, vertex_packing_system


def edge_system(g):
    return vertex_packing_system(named_pattern("K2"), g)


def test_matching_values():
    assert solve(matching_lp(edge_system(make_complete(3)))).value == Fraction(3, 2)
    assert solve(matching_lp(edge_system(make_cycle(6)))).value == 3
    assert oracles.lp_vertex_value([1, 1, 1], [[1, 0, 1], [1, 1, 0], [0, 1, 1]],
                                   [1, 1, 1], "max") == Fraction(3, 2)


def test_statuses():
    assert solve(RationalLP.build([1], [], [], "max")).status == UNBOUNDED
    assert solve(RationalLP.build([1], [{0: 1}, {0: -1}], [1, -2], "max")).status == INFEASIBLE
    res = solve(RationalLP.build([1, 1], [{0: 1, 1: 1}, {0: -1}], [3, -2], "min"))
    assert res.status == OPTIMAL and res.value == 2 and res.solution == (2, 0)


def test_validation():
    with pytest.raises(InvalidParameterError):
        RationalLP.build([1], [{1: 1}], [1])
    with pytest.raises(InvalidParameterError):
        RationalLP.from_dense([1, 1], [[1]], [1])
    with pytest.raises(InvalidParameterError):
        RationalLP.build([1], [{0: 1}], [1], "sup")
    with pytest.raises(ResourceLimitError):
        solve(RationalLP.build([1] * 10, [], [], "min"), max_variables=5)


def test_dual_of_matching_is_hitting():
    S = edge_system(make_cycle(5))
    assert dual(matching_lp(S)) == hitting_lp(S)
    assert dual(dual(matching_lp(S))) == matching_lp(S)
    N = closed_neighborhood_system(make_cycle(5))
    assert frac_matching(N) == frac_hitting(N) == Fraction(5, 3)


@st.composite
def small_lps(draw):
    n = draw(st.integers(1, 3))
    m = draw(st.integers(1, 3))
    coef = st.integers(-3, 4)
    rows = [[draw(coef) for _ in range(n)] for _ in range(m)]
    # a box keeps every program bounded
    rows += [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    rhs = [draw(st.integers(-2, 6)) for _ in range(m)] + [draw(st.integers(1, 5)) for _ in range(n)]
    obj = [draw(coef) for _ in range(n)]
    return obj, rows, rhs, draw(st.sampled_from(["max", "min"]))


@settings(max_examples=80, deadline=None)
@given(small_lps())
def test_against_vertex_enumeration(data):
    obj, rows, rhs, opt = data
    lp = RationalLP.from_dense(obj, rows, rhs, opt)
    res = solve(lp)
    ref = oracles.lp_vertex_value(obj, rows, rhs, opt)
    if ref is None:
        assert res.status == INFEASIBLE
    else:
        assert res.status == OPTIMAL and res.value == ref
        assert lp.is_feasible(res.solution)
        d = dual(lp)
        assert d.is_feasible(res.dual) and d.evaluate(res.dual) == res.value
        assert solve(d).value == ref


def test_strong_duality_on_packing_lps():
    for pair in wl1_equivalent_pairs()[:8]:
        for g in (pair.g, pair.h):
            lp = matching_lp(edge_system(g))
            assert solve(lp).value == solve(dual(lp)).value


def test_reduction_certificates():
    M = edge_system(make_cycle(5)).incidence_matrix()
    lp = all_ones_lp(M, "max")
    ident = ReductionCertificate.identity(lp.num_rows, lp.num_vars)
    assert check_reduction(lp, lp, ident)
    assert verify_equal_values(lp, lp, ident, ident)
    bad = [list(r) for r in ident.Z]
    bad[0][0] = Fraction(-1)
    assert not check_reduction(lp, lp, ReductionCertificate.of(ident.Y, bad))
    other = all_ones_lp(edge_system(make_path(6)).incidence_matrix()[:5], "max")
    zero = ReductionCertificate.of([[0] * 5] * 5, [[0] * 5] * 5)
    assert not verify_equal_values(lp, other, zero, zero)
    with pytest.raises(InvalidParameterError):
        check_reduction(lp, all_ones_lp(M, "min"), ident)


def test_fractional_iso_examples():
    X = find_fractional_graph_iso(make_cycle(6), scalar_multiple(2, make_cycle(3)))
    assert X is not None and is_doubly_stochastic(X)
    A = make_cycle(6).adjacency_matrix()
    B = scalar_multiple(2, make_cycle(3)).adjacency_matrix()
    assert all(sum(A[u][v] * X[v][w] for v in range(6)) == sum(X[u][v] * B[v][w] for v in range(6))
               for u in range(6) for w in range(6))
    assert find_fractional_graph_iso(make_complete(3),
                                     disjoint_union(make_path(3), make_complete(1))) is None
    g = make_path(4)
    I = find_fractional_graph_iso(g, g)
    assert I is not None and is_doubly_stochastic(I)
    assert find_fractional_graph_iso(make_path(3), make_path(4)) is None


def test_colored_fractional_iso_respects_colors():
    g = make_cycle(6).with_colors([0, 1, 0, 1, 0, 1])
    h = make_cycle(6).with_colors([1, 0, 1, 0, 1, 0])
    X = find_fractional_graph_iso(g, h)
    assert X is not None
    assert all(X[u][v] == 0 for u in range(6) for v in range(6) if g.color(u) != h.color(v))


def test_fractional_iso_agrees_with_wl1():
    for pair in wl1_equivalent_pairs()[:4] + wl1_inequivalent_pairs()[:4]:
        from wlpack.wl import wl_equivalent
        assert (find_fractional_graph_iso(pair.g, pair.h) is not None) == \
            wl_equivalent(pair.g, pair.h, 1)


def test_matrix_iso_pipeline():
    s1, s2 = edge_system(make_cycle(6)), edge_system(scalar_multiple(2, make_cycle(3)))
    X = find_fractional_graph_iso(incidence_graph(s1), incidence_graph(s2))
    Y, Z = fractional_matrix_iso_from_graph_iso(X, s1.m, s1.n)
    assert is_doubly_stochastic(Y) and is_doubly_stochastic(Z)
    M, N = s1.incidence_matrix(), s2.incidence_matrix()
    assert satisfies_fractional_matrix_iso(M, N, Y, Z)
    for opt in ("max", "min"):
        l1, l2 = all_ones_lp(M, opt), all_ones_lp(N, opt)
        cert = ReductionCertificate.of(Y, Z)
        assert verify_equal_values(l1, l2, cert, cert.transposed())
    eye = [[Fraction(int(i == j)) for j in range(5)] for i in range(5)]
    Y, Z = fractional_matrix_iso_from_graph_iso(eye, 2, 3)
    assert Y == [[1, 0], [0, 1]] and Z == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    mixed = [row[:] for row in eye]
    mixed[0][0], mixed[0][3], mixed[3][3], mixed[3][0] = 0, 1, 0, 1
    with pytest.raises(InvalidParameterError):
        fractional_matrix_iso_from_graph_iso(mixed, 2, 3)


def test_square_adjacency_lp_is_wl1_invariant():
    def value(g, opt):
        A = g.adjacency_matrix()
        A2 = (A @ A).tolist()
        return solve(all_ones_lp(A2, opt)).value

    for pair in wl1_equivalent_pairs()[:8]:
        assert value(pair.g, "max") == value(pair.h, "max")
        assert value(pair.g, "min") == value(pair.h, "min")


def test_text_format_round_trip():
    lp = parse_lp("max: 1 1\nrow: 1 2 <= 4\nrow: 3/2 1 ≤ 3\n")
    assert solve(lp).value == solve(parse_lp(serialize_lp(lp))).value
    assert solve(lp).value == Fraction(5, 2)
    for text, line in (("maximize: 1\n", 1), ("max: 1 1\nrow: 1 <= 2\n", 2),
                       ("max: 1\nrow 1 <= 2\n", 2), ("max: 1\nrow: x <= 1\n", 2)):
        with pytest.raises(ParseError) as info:
            parse_lp(text)
        assert info.value.line == line


def test_graph_with_no_vertices():
    assert find_fractional_graph_iso(Graph(0), Graph(0)) == []
