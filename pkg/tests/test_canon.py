from itertools import permutations

import networkx as nx
import numpy as np
import pytest

from pspex.canon import (are_isomorphic, canonical_form, canonical_key,
                         canonical_labeling, equitable_partition, refine)
from pspex.graph import Family, Graph, GraphFamilyTag, construct, cycle, path


def _atlas(hi):
    return [Graph.from_networkx(a) for a in nx.graph_atlas_g()
            if 1 <= a.number_of_nodes() <= hi]


def _shuffled(g, rng):
    return g.relabel([int(v) for v in rng.permutation(g.n)])


def _keys_are_invariant_and_distinct(graphs, seed):
    rng = np.random.default_rng(seed)
    keys = set()
    for g in graphs:
        key = canonical_key(g)
        for _ in range(3):
            assert canonical_key(_shuffled(g, rng)) == key
        keys.add((g.n, key))
    assert len(keys) == len(graphs)


def test_atlas_keys_up_to_six_vertices():
    _keys_are_invariant_and_distinct(_atlas(6), seed=1)


@pytest.mark.slow
def test_atlas_keys_up_to_seven_vertices():
    _keys_are_invariant_and_distinct(_atlas(7), seed=2)


def test_matches_naive_minimisation_on_five_vertices():
    pairs = [(u, v) for u in range(5) for v in range(u + 1, 5)]
    perms = list(permutations(range(5)))
    naive_classes = {}
    ours_classes = {}
    for mask in range(1 << len(pairs)):
        g = Graph.from_edges(5, [e for i, e in enumerate(pairs) if mask >> i & 1])
        naive = max(g.relabel(p).rows for p in perms)
        naive_classes.setdefault(naive, set()).add(mask)
        ours_classes.setdefault(canonical_key(g), set()).add(mask)
    assert len(naive_classes) == 34
    assert sorted(map(sorted, naive_classes.values())) == \
        sorted(map(sorted, ours_classes.values()))


def test_canonical_form_is_a_relabelling():
    g = construct(GraphFamilyTag(Family.TWO_APEX_CYCLE, (9,)))
    perm = canonical_labeling(g)
    assert sorted(perm) == list(range(g.n))
    assert canonical_form(g) == g.relabel(perm)
    assert canonical_form(canonical_form(g)) == canonical_form(g)


def test_are_isomorphic():
    assert are_isomorphic(cycle(6), cycle(6).relabel([2, 4, 0, 1, 5, 3]))
    assert not are_isomorphic(cycle(6), path(6))
    two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    assert not are_isomorphic(cycle(6), two_triangles)


def _is_equitable(g, cells):
    for cell in cells:
        for other in cells:
            mask = sum(1 << v for v in other)
            counts = {(g.rows[v] & mask).bit_count() for v in cell}
            if len(counts) != 1:
                return False
    return True


def test_equitable_partition_of_two_apex_cycle():
    g = construct(GraphFamilyTag(Family.TWO_APEX_CYCLE, (10,)))
    cells = equitable_partition(g)
    assert sorted(len(c) for c in cells) == [2, 8]
    assert _is_equitable(g, cells)


def test_refine_always_returns_equitable_cells():
    for g in _atlas(6)[::7]:
        cells = equitable_partition(g)
        assert sorted(v for c in cells for v in c) == list(range(g.n))
        assert _is_equitable(g, cells)
        split = refine(g, [[0], [v for v in range(1, g.n)]]) if g.n > 1 else cells
        assert _is_equitable(g, split)
