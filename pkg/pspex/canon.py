"""Colour refinement and canonical labelling by individualisation-refinement.

The canonical key of a graph is the lexicographically largest row tuple
over the leaves of the search tree. Two kinds of pruning keep the tree
small: cells whose vertices are pairwise twins branch only once, and
automorphisms found at equal leaves skip equivalent siblings.
"""
from __future__ import annotations
from typing import Dict, List, Optional, Sequence, Tuple

from .graph import Graph

Cells = List[List[int]]
Key = Tuple[int, ...]


def refine(g: Graph, cells: Cells) -> Cells:
    """Coarsest equitable refinement of ``cells``; cell order is label-free."""
    while True:
        masks = [sum(1 << v for v in cell) for cell in cells]
        split: Cells = []
        for ci, cell in enumerate(cells):
            groups: Dict[Tuple[int, ...], List[int]] = {}
            for v in cell:
                sig = tuple((g.rows[v] & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            split.extend(groups[s] for s in sorted(groups))
        if len(split) == len(cells):
            return split
        cells = split


def equitable_partition(g: Graph) -> Cells:
    return refine(g, _unit(g))


def _unit(g: Graph) -> Cells:
    return [list(range(g.n))]


def _twins(g: Graph, cell: Sequence[int]) -> bool:
    first = cell[0]
    base = g.rows[first]
    for v in cell[1:]:
        if (g.rows[v] & ~(1 << first)) != (base & ~(1 << v)):
            return False
    return True


def _leaf_key(g: Graph, order: Sequence[int]) -> Key:
    perm = [0] * g.n
    for new, old in enumerate(order):
        perm[old] = new
    return g.relabel(perm).rows


class _Search:
    def __init__(self, g: Graph):
        self.g = g
        self.best: Optional[Key] = None
        self.best_order: Optional[List[int]] = None
        self.autos: List[List[int]] = []

    def run(self, cells: Cells, prefix: Tuple[int, ...]) -> None:
        cells = refine(self.g, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            self._leaf([c[0] for c in cells])
            return
        cell = cells[target]
        if _twins(self.g, cell):
            choices = [cell[0]]
        else:
            choices = list(cell)
        tried: List[int] = []
        for v in choices:
            if any(self._equivalent(u, v, prefix) for u in tried):
                continue
            tried.append(v)
            rest = [w for w in cell if w != v]
            self.run(cells[:target] + [[v], rest] + cells[target + 1:], prefix + (v,))

    def _equivalent(self, u: int, v: int, prefix: Tuple[int, ...]) -> bool:
        for gamma in self.autos:
            if gamma[u] == v and all(gamma[p] == p for p in prefix):
                return True
        return False

    def _leaf(self, order: List[int]) -> None:
        key = _leaf_key(self.g, order)
        if self.best is None or key > self.best:
            self.best, self.best_order = key, order
        elif key == self.best:
            # both orders give the same graph: their composition is an automorphism
            gamma = [0] * self.g.n
            for a, b in zip(self.best_order, order):
                gamma[a] = b
            self.autos.append(gamma)


def canonical_labeling(g: Graph) -> List[int]:
    """``perm`` with ``g.relabel(perm)`` equal for all isomorphic inputs."""
    search = _Search(g)
    search.run(_unit(g), ())
    perm = [0] * g.n
    for new, old in enumerate(search.best_order):
        perm[old] = new
    return perm


def canonical_form(g: Graph) -> Graph:
    return g.relabel(canonical_labeling(g))


def canonical_key(g: Graph) -> Key:
    return canonical_form(g).rows


def are_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.m != b.m or a.degree_sequence() != b.degree_sequence():
        return False
    return canonical_key(a) == canonical_key(b)
