import pytest

from pspex.canon import are_isomorphic
from pspex.errors import CapacityError, ParameterError
from pspex.graph import (K2, Family, Graph, GraphFamilyTag, LinearForest,
                         complete, construct, cycle, disjoint_copies,
                         disjoint_union, forest_of, forest_realize, join, path)
from pspex.turan import partitions


def _tag(family, *params):
    return GraphFamilyTag(family, params)


def test_book_is_k2_join_independent_set():
    g = construct(_tag(Family.BOOK, 3))
    assert (g.n, g.m) == (5, 7)
    spine = [v for v in range(g.n) if g.degree(v) == 4]
    assert len(spine) == 2
    assert g.has_edge(*spine)


def test_two_apex_cycle_degree_sequence():
    g = construct(_tag(Family.TWO_APEX_CYCLE, 10))
    assert g.n == 10
    assert g.degree_sequence() == (8, 8, 4, 4, 4, 4, 4, 4, 4, 4)


@pytest.mark.parametrize('n', range(7, 65))
def test_two_apex_cycle_apexes_are_nonadjacent(n):
    g = construct(_tag(Family.TWO_APEX_CYCLE, n))
    apexes = [v for v in range(n) if g.degree(v) == n - 2]
    assert len(apexes) == 2
    assert not g.has_edge(*apexes)


def test_cycle_needs_three_vertices():
    with pytest.raises(ParameterError) as e:
        construct(_tag(Family.CYCLE, 2))
    assert e.value.param == 'k'


def test_construct_rejects_more_than_64_vertices():
    with pytest.raises(ParameterError) as e:
        construct(_tag(Family.PATH, 65))
    assert e.value.param == 'n'


def test_parity_checked_for_k2_matching_families():
    with pytest.raises(ParameterError):
        construct(_tag(Family.JOIN_K2_MATCHING, 9))
    with pytest.raises(ParameterError):
        construct(_tag(Family.JOIN_K2_NEAR_MATCHING, 10))


def test_extra_families():
    assert construct(_tag(Family.COMPLETE_BIPARTITE, 2, 3)).m == 6
    assert construct(_tag(Family.K5_MINUS_EDGE)).m == 9
    assert construct(_tag(Family.JOIN_K2_CYCLE, 8)).m == 1 + 6 + 12
    near = construct(_tag(Family.JOIN_K2_NEAR_MATCHING, 9))
    assert near.degree_sequence() == (8, 8, 3, 3, 3, 3, 3, 3, 2)
    forest = construct(_tag(Family.JOIN_K2_FOREST, 4, 2, 1))
    assert forest.n == 9 and forest.m == 1 + 4 + 14


def test_join_k2_p3_is_k5_minus_edge():
    g = join(K2, path(3))
    assert (g.n, g.m) == (5, 9)
    assert are_isomorphic(g, construct(_tag(Family.K5_MINUS_EDGE)))


def test_join_empty_pair_with_cycle_is_two_apex_cycle():
    assert join(Graph.empty(2), cycle(8)) == construct(_tag(Family.TWO_APEX_CYCLE, 10))


def test_join_single_vertex_with_independent_set_is_star():
    g = join(Graph.empty(1), Graph.empty(3))
    assert g.degree_sequence() == (3, 1, 1, 1)


@pytest.mark.parametrize('a, b', [
    (K2, path(4)), (cycle(5), Graph.empty(3)), (complete(4), cycle(6)),
    (forest_realize(LinearForest.of(3, 2)), Graph.from_edges(4, [(0, 1), (2, 3)])),
])
def test_join_edge_count_and_commutativity(a, b):
    g = join(a, b)
    assert g.m == a.m + b.m + a.n * b.n
    assert are_isomorphic(g, join(b, a))


def test_disjoint_union_examples():
    assert disjoint_union(K2, K2).m == 2
    assert disjoint_union(path(3), Graph.empty(1)) == forest_realize(LinearForest.of(3, 1))
    assert disjoint_copies(path(3), 3) == forest_realize(LinearForest.of(3, 3, 3))


def test_capacity_is_enforced():
    with pytest.raises(CapacityError):
        join(Graph.empty(40), Graph.empty(30))
    with pytest.raises(CapacityError):
        disjoint_union(Graph.empty(64), Graph.empty(1))
    with pytest.raises(CapacityError):
        Graph.empty(65)


def test_forest_of_examples():
    assert forest_of(cycle(5)) is None
    assert forest_of(forest_realize(LinearForest.of(4, 2, 1))) == LinearForest.of(4, 2, 1)
    assert forest_of(join(Graph.empty(1), Graph.empty(3))) is None


@pytest.mark.parametrize('n', range(1, 11))
def test_forest_round_trip_and_edge_count(n):
    for parts in partitions(n):
        f = LinearForest(parts)
        g = forest_realize(f)
        assert g.m == f.n - len(f)
        assert forest_of(g) == f


def test_linear_forest_is_sorted_and_validated():
    assert LinearForest.of(1, 4, 2).parts == (4, 2, 1)
    assert str(LinearForest.of(2, 3)) == '{3,2}'
    with pytest.raises(ParameterError):
        LinearForest.of(2, 0)
    with pytest.raises(ParameterError):
        LinearForest(())


def test_graph_rejects_asymmetric_or_looped_rows():
    with pytest.raises(ParameterError):
        Graph(2, (0b10, 0))
    with pytest.raises(ParameterError):
        Graph(1, (1,))
    with pytest.raises(ParameterError):
        Graph.from_edges(3, [(0, 3)])


def test_edge_count_matches_row_popcounts():
    g = construct(_tag(Family.TWO_APEX_CYCLE, 12))
    assert g.m == sum(bin(r).count('1') for r in g.rows) // 2
    assert g.m == len(list(g.edges()))
    assert len(list(g.non_edges())) == g.n * (g.n - 1) // 2 - g.m


def test_relabel_induced_and_components():
    g = path(4)
    h = g.relabel([3, 2, 1, 0])
    assert h == g
    assert g.relabel([1, 0, 2, 3]).has_edge(1, 2) is False
    assert g.induced([0, 1, 3]).m == 1
    assert disjoint_union(cycle(3), path(2)).components() == [[0, 1, 2], [3, 4]]
    assert not Graph.empty(2).is_connected()
    assert cycle(6).is_bipartite() and not cycle(5).is_bipartite()


def test_networkx_round_trip():
    g = construct(_tag(Family.BOOK, 4))
    assert Graph.from_networkx(g.to_networkx()) == g
    a = g.adjacency_matrix()
    assert a.sum() == 2 * g.m
