import itertools

import pytest

import oracles
from wlpack.errors import InvalidParameterError
from wlpack.graph import (Family, Graph, GraphLabel, cartesian_product, disjoint_union,
                          make_circulant, make_complete, make_complete_bipartite, make_cycle,
                          make_matched_cliques, make_paley, make_path, make_rook4,
                          make_shrikhande, scalar_multiple, tensor_power, tensor_product,
                          validate_graph)


def generator_corpus():
    return [
        make_cycle(3), make_cycle(6), make_path(1), make_path(3), make_complete(4),
        make_complete_bipartite(3, 3), make_circulant(13, [1, -1, 2, -2, 3, -3]),
        make_paley(13), make_shrikhande(), make_rook4(), make_matched_cliques(4),
        scalar_multiple(2, make_cycle(3)), disjoint_union(make_complete(1), make_complete(1)),
        tensor_product(make_complete(3), make_complete(3)),
        cartesian_product(make_complete(2), make_complete(2)),
    ]


def test_cycles():
    c3 = make_cycle(3)
    assert c3.edges == make_complete(3).edges
    c6 = make_cycle(6)
    assert (c6.n, c6.m) == (6, 6) and set(c6.degrees()) == {2}
    # bipartite: no odd cycle, here via proper 2-coloring by parity
    assert all((u + v) % 2 == 1 for u, v in c6.edges)
    assert oracles.triangles(make_cycle(4)) == []
    with pytest.raises(InvalidParameterError):
        make_cycle(2)


def test_simple_families():
    k4 = make_complete(4)
    assert k4.m == 6 and set(k4.degrees()) == {3}
    assert make_complete_bipartite(3, 3).m == 9
    assert make_path(3).m == 2
    for bad in (lambda: make_path(0), lambda: make_complete(0),
                lambda: make_complete_bipartite(0, 2)):
        with pytest.raises(InvalidParameterError):
            bad()


def test_circulants():
    assert make_circulant(5, {1, 4}).edges == make_cycle(5).edges
    h13 = make_circulant(13, [1, -1, 2, -2, 3, -3])
    assert h13.n == 13 and set(h13.degrees()) == {6}
    # {0, 2s} dominates H_13 with s = 3
    closed = {0, 6} | set(h13.neighbors(0)) | set(h13.neighbors(6))
    assert closed == set(range(13))
    assert oracles.domination_number(h13) == 2
    with pytest.raises(InvalidParameterError):
        make_circulant(5, {1})
    with pytest.raises(InvalidParameterError):
        make_circulant(5, {0, 1, 4})


def test_paley():
    assert make_paley(5).edges == make_cycle(5).edges
    p13 = make_paley(13)
    assert set(p13.degrees()) == {6}
    assert oracles.isomorphic(p13, p13.complement())
    for q in (9, 7, 15, 1):
        with pytest.raises(InvalidParameterError):
            make_paley(q)


@pytest.mark.parametrize("maker", [make_shrikhande, make_rook4])
def test_strongly_regular_pair(maker):
    g = maker()
    assert (g.n, g.m) == (16, 48) and set(g.degrees()) == {6}
    assert oracles.common_neighbor_counts(g) == ({2}, {2})
    assert len(oracles.triangles(g)) == 32


def test_shrikhande_and_rook_differ():
    assert not oracles.isomorphic(make_shrikhande(), make_rook4())
    k4 = make_complete(4)
    assert oracles.isomorphic(cartesian_product(k4, k4), make_rook4())


def test_matched_cliques():
    assert oracles.isomorphic(make_matched_cliques(2), make_cycle(4))
    g = make_matched_cliques(3)
    assert set(g.degrees()) == {3} and g.m == 9
    assert oracles.min_vertex_cover(make_matched_cliques(4)) == 6
    with pytest.raises(InvalidParameterError):
        make_matched_cliques(1)


def test_unions():
    two = scalar_multiple(2, make_cycle(3))
    assert (two.n, two.m) == (6, 6)
    assert oracles.max_matching(two) == 2
    assert disjoint_union(make_complete(1), make_complete(1)).m == 0
    assert two.label.family == Family.DISJOINT_UNION


def test_products():
    S = make_shrikhande()
    assert tensor_product(S, S).m == 4608
    k2 = make_complete(2)
    assert tensor_product(k2, k2).edges == {(0, 3), (1, 2)}
    assert set(tensor_product(make_complete(3), make_complete(3)).degrees()) == {4}
    assert oracles.isomorphic(cartesian_product(k2, k2), make_cycle(4))
    assert cartesian_product(make_complete(4), make_complete(4)).m == 48
    assert tensor_power(make_complete(4), 2).n == 16


def test_tensor_edge_count_on_corpus():
    small = [g for g in generator_corpus() if g.n <= 16]
    for g, h in itertools.product(small[:8], repeat=2):
        assert tensor_product(g, h).m == 2 * g.m * h.m


def test_generators_pass_validation():
    for g in generator_corpus():
        validate_graph(g)


def test_graph_invariants_enforced():
    with pytest.raises(InvalidParameterError):
        Graph(3, [(0, 0)])
    with pytest.raises(InvalidParameterError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(InvalidParameterError):
        Graph(3, [(0, 3)])
    with pytest.raises(InvalidParameterError):
        Graph(3, [], [0, 1])
    g = Graph(3, [(2, 0)])
    assert g.edges == {(0, 2)}
    with pytest.raises(AttributeError):
        g.n = 4


def test_relabel_and_colors():
    g = make_path(3).with_colors([0, 1, 0])
    h = g.relabel([2, 0, 1])
    assert h.edges == {(0, 2), (0, 1)}
    assert [h.color(v) for v in range(3)] == [1, 0, 0]
    assert not make_path(3).is_colored() and make_path(3).color(1) == 0


def test_label_arity_checked():
    with pytest.raises(InvalidParameterError):
        GraphLabel(Family.CYCLE, (3, 4))
    assert str(GraphLabel(Family.CYCLE, (5,))) == "cycle(5)"
