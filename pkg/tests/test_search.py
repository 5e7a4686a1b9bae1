from math import sqrt

import networkx as nx
import pytest
from networkx.algorithms import isomorphism

from pspex.canon import are_isomorphic, canonical_key
from pspex.errors import DisconnectedError, ParameterError, SearchCapError
from pspex.graph import (K2, Family, Graph, GraphFamilyTag, LinearForest,
                         complete, construct, cycle, disjoint_union,
                         forest_realize, join, path)
from pspex.patterns import is_F_free
from pspex.planarity import is_planar
from pspex.search import (Agreement, StructureCase, admissible, check_cap,
                          enumerate_candidates, predict, predicted_keys,
                          spex_search, split_join_k2, structure_profile,
                          verify_structure_dichotomy)
from pspex.turan import Outcome


def _tag(family, *params):
    return construct(GraphFamilyTag(family, params))


K5E = _tag(Family.K5_MINUS_EDGE)
K2_2K2 = join(K2, forest_realize(LinearForest.of(2, 2)))
K2_P4 = join(K2, path(4))
BOOK3 = _tag(Family.BOOK, 3)
FORBIDDEN = [K5E, K2_2K2, K2_P4, BOOK3]


def _oracle_admissible(nxg, fx):
    if not nx.check_planarity(nxg)[0]:
        return False
    return not isomorphism.GraphMatcher(nxg, fx).subgraph_is_monomorphic()


def _oracle_classes(n, forbidden):
    """Edge-maximal planar F-free graphs on n vertices, straight from the atlas."""
    fx = forbidden.to_networkx()
    out = []
    for a in nx.graph_atlas_g():
        if a.number_of_nodes() != n or not _oracle_admissible(a, fx):
            continue
        grows = False
        for u, v in nx.non_edges(a):
            b = a.copy()
            b.add_edge(u, v)
            if _oracle_admissible(b, fx):
                grows = True
                break
        if not grows:
            out.append(a)
    return out


def _assert_complete(n, forbidden):
    found = list(enumerate_candidates(n, forbidden))
    expected = _oracle_classes(n, forbidden)
    assert len(found) == len(expected)
    keys = {canonical_key(g) for g in found}
    assert len(keys) == len(found)
    for a in expected:
        assert canonical_key(Graph.from_networkx(a)) in keys


def test_check_cap():
    check_cap(9)
    check_cap(10, allow_large=True)
    with pytest.raises(SearchCapError):
        check_cap(10)
    with pytest.raises(SearchCapError):
        check_cap(11, allow_large=True)
    with pytest.raises(SearchCapError):
        check_cap(9, n_cap=8)
    with pytest.raises(ParameterError):
        check_cap(2)


def test_admissible():
    assert admissible(_tag(Family.TWO_APEX_CYCLE, 8), K5E)
    assert not admissible(complete(5), None)
    assert not admissible(K5E, K5E)


def test_candidates_at_five_avoiding_k5_minus_edge():
    found = list(enumerate_candidates(5, K5E))
    assert found
    for g in found:
        assert is_planar(g).planar and is_F_free(g, K5E)
        assert not are_isomorphic(g, K5E)
        for u, v in g.non_edges():
            assert not admissible(g.add_edge(u, v), K5E)


def test_candidates_at_seven_include_two_apex_cycle():
    found = list(enumerate_candidates(7, K2_2K2))
    target = canonical_key(_tag(Family.TWO_APEX_CYCLE, 7))
    assert target in {canonical_key(g) for g in found}


@pytest.mark.parametrize('forbidden', FORBIDDEN, ids=['k5-e', 'k2+2k2', 'k2+p4', 'book3'])
@pytest.mark.parametrize('n', [5, 6])
def test_enumeration_matches_atlas_oracle(n, forbidden):
    _assert_complete(n, forbidden)


@pytest.mark.slow
@pytest.mark.parametrize('forbidden', FORBIDDEN, ids=['k5-e', 'k2+2k2', 'k2+p4', 'book3'])
def test_enumeration_matches_atlas_oracle_at_seven(forbidden):
    _assert_complete(7, forbidden)


@pytest.mark.slow
def test_enumeration_matches_labelled_oracle_at_six():
    pairs = [(u, v) for u in range(6) for v in range(u + 1, 6)]
    fx = K5E.to_networkx()
    ok = {}
    for mask in range(1 << len(pairs)):
        g = nx.Graph()
        g.add_nodes_from(range(6))
        g.add_edges_from(e for i, e in enumerate(pairs) if mask >> i & 1)
        ok[mask] = _oracle_admissible(g, fx)
    classes = []
    for mask, good in ok.items():
        if not good or any(ok[mask | 1 << i] for i in range(len(pairs)) if not mask >> i & 1):
            continue
        g = nx.Graph()
        g.add_nodes_from(range(6))
        g.add_edges_from(e for i, e in enumerate(pairs) if mask >> i & 1)
        if not any(nx.is_isomorphic(g, c) for c in classes):
            classes.append(g)
    assert len(list(enumerate_candidates(6, K5E))) == len(classes)


def test_spex_search_at_five_avoiding_k5():
    report = spex_search(5, complete(5))
    assert len(report.argmax) == 1
    assert are_isomorphic(report.argmax[0].graph, K5E)
    lo, hi = report.spex
    assert sqrt(6) <= lo <= hi <= sqrt(30)
    assert report.prediction.outcome is Outcome.JOIN_K2_PATH
    assert report.agreement is Agreement.AGREES
    assert not report.unresolved


def test_spex_search_at_six_avoiding_k2_p4():
    report = spex_search(6, K2_P4)
    assert report.prediction.outcome is Outcome.JOIN_K2_MAXIMAL
    assert report.agreement in (Agreement.AGREES, Agreement.DIFFERS)
    for c in report.argmax:
        assert is_planar(c.graph).planar and is_F_free(c.graph, K2_P4)
        assert c.interval[0] <= report.spex[1] and report.spex[0] <= c.interval[1]


def test_spex_search_is_deterministic_across_threads():
    one = spex_search(6, K5E, threads=1)
    two = spex_search(6, K5E, threads=2)
    assert one.to_dict(timing=False) == two.to_dict(timing=False)


def test_spex_search_rejects_large_n():
    with pytest.raises(SearchCapError):
        spex_search(11, K5E, allow_large=True)


@pytest.mark.slow
@pytest.mark.parametrize('forbidden', FORBIDDEN, ids=['k5-e', 'k2+2k2', 'k2+p4', 'book3'])
@pytest.mark.parametrize('n', [5, 6, 7, 8])
def test_small_n_certification(n, forbidden):
    report = spex_search(n, forbidden)
    assert report.argmax
    assert not report.unresolved
    lo, hi = report.spex
    assert sqrt(2 * n - 4) - 1e-9 <= lo <= hi <= sqrt(6 * n)
    for c in report.argmax:
        assert is_planar(c.graph).planar
        assert is_F_free(c.graph, forbidden)
    assert report.agreement in (Agreement.AGREES, Agreement.DIFFERS, Agreement.NO_PREDICTION)
    assert report.to_dict()['counts']['evaluated'] == report.evaluated


def test_split_join_k2():
    assert split_join_k2(K5E) == LinearForest.of(3)
    assert split_join_k2(BOOK3) == LinearForest.of(1, 1, 1)
    assert split_join_k2(K2_2K2) == LinearForest.of(2, 2)
    assert split_join_k2(cycle(5)) is None


def test_predict():
    assert predict(9, BOOK3).outcome is Outcome.TWO_APEX_CYCLE
    assert predict(9, complete(5)).outcome is Outcome.JOIN_K2_PATH
    assert predict(9, K2_P4).outcome is Outcome.JOIN_K2_MAXIMAL
    assert predict(9, K5E).outcome is Outcome.TWO_APEX_CYCLE
    assert predict(9, cycle(5)).outcome is Outcome.OPEN
    assert predict(9, _tag(Family.BOOK, 2)).outcome is Outcome.OPEN


def test_predicted_keys():
    keys, exact = predicted_keys(8, predict(8, K5E))
    assert exact and keys == {canonical_key(_tag(Family.TWO_APEX_CYCLE, 8))}
    keys, exact = predicted_keys(8, predict(8, K2_P4))
    assert not exact
    assert canonical_key(join(K2, forest_realize(LinearForest.of(3, 3)))) in keys
    assert predicted_keys(8, predict(8, cycle(5))) is None


def test_structure_profile_of_two_apex_cycle():
    p = structure_profile(_tag(Family.TWO_APEX_CYCLE, 12))
    assert {p.x, p.w} == {0, 1}
    assert p.case is StructureCase.CYCLE_IN_B
    assert len(p.b) == 10 and p.a == ()
    assert not p.x_adjacent_w


def test_structure_profile_of_k2_joined_matching():
    p = structure_profile(join(K2, forest_realize(LinearForest.of(2, 2, 2, 2))))
    assert p.case is StructureCase.B_LINEAR_FOREST
    assert len(p.b) == 8
    assert p.b_forest == LinearForest.of(2, 2, 2, 2)
    assert p.x_adjacent_w


def test_structure_profile_of_complete_bipartite():
    p = structure_profile(_tag(Family.COMPLETE_BIPARTITE, 2, 8))
    assert p.case is StructureCase.B_LINEAR_FOREST
    assert p.b_forest == LinearForest((1,) * 8)
    assert p.large == 10 and p.small == 0


def test_structure_profile_other_and_errors():
    wheel = join(Graph.empty(1), cycle(6))
    hub_pair = join(K2, join(Graph.empty(1), Graph.empty(3)))
    assert structure_profile(hub_pair).case is StructureCase.OTHER
    assert structure_profile(wheel).x == 0
    with pytest.raises(DisconnectedError):
        structure_profile(disjoint_union(cycle(3), cycle(3)))
    with pytest.raises(ParameterError):
        structure_profile(cycle(5), epsilon=0.1)


@pytest.mark.parametrize('n', range(6, 17))
def test_structure_dichotomy(n):
    g = _tag(Family.TWO_APEX_CYCLE, n)
    assert verify_structure_dichotomy(g, K5E)
    assert structure_profile(g).case is StructureCase.CYCLE_IN_B
    rest = n - 2
    for parts in [(2,) * (rest // 2) + (1,) * (rest % 2),
                  (3,) * (rest // 3) + ((rest % 3,) if rest % 3 else ())]:
        h = join(K2, forest_realize(LinearForest(parts)))
        assert verify_structure_dichotomy(h, K2_P4)
        assert structure_profile(h).case is StructureCase.B_LINEAR_FOREST


def test_structure_dichotomy_examples():
    assert verify_structure_dichotomy(_tag(Family.TWO_APEX_CYCLE, 9), K5E)
    assert verify_structure_dichotomy(join(K2, forest_realize(LinearForest.of(2, 2, 2, 1))), K2_P4)
    assert not verify_structure_dichotomy(cycle(9), K5E)
    with pytest.raises(ParameterError):
        verify_structure_dichotomy(complete(5), K2_P4)
    with pytest.raises(ParameterError):
        verify_structure_dichotomy(K5E, K5E)
