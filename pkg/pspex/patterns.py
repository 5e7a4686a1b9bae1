"""Subgraph containment, colouring and linear-forest packing."""
from __future__ import annotations
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple

from .config import CHROMATIC_LIMIT
from .errors import SizeLimitError
from .graph import Graph, LinearForest, _bits, join

CLAW = join(Graph.empty(1), Graph.empty(3))


@dataclass(frozen=True)
class ContainmentWitness:
    mapping: Optional[Tuple[int, ...]] = None   # pattern vertex -> host vertex

    @property
    def present(self) -> bool:
        return self.mapping is not None

    def verify(self, host: Graph, pattern: Graph) -> bool:
        if self.mapping is None:
            return False
        if len(set(self.mapping)) != pattern.n:
            return False
        return all(host.has_edge(self.mapping[u], self.mapping[v])
                   for u, v in pattern.edges())


def _search_order(pattern: Graph) -> List[int]:
    """Highest degree first, then always the vertex with most placed neighbours."""
    deg = pattern.degrees()
    order: List[int] = []
    placed = 0
    remaining = set(range(pattern.n))
    while remaining:
        v = max(remaining,
                key=lambda u: ((pattern.rows[u] & placed).bit_count(), deg[u], -u))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def _degree_dominated(host: Graph, pattern: Graph) -> bool:
    hd = host.degree_sequence()
    pd = pattern.degree_sequence()
    return all(p <= h for p, h in zip(pd, hd))


def contains_subgraph(host: Graph, pattern: Graph) -> ContainmentWitness:
    if pattern.n > host.n or pattern.m > host.m or not _degree_dominated(host, pattern):
        return ContainmentWitness()
    order = _search_order(pattern)
    hdeg = host.degrees()
    pdeg = pattern.degrees()
    # per host degree threshold, the set of host vertices reaching it
    at_least = [0] * (max(pdeg) + 1)
    for d in range(len(at_least)):
        for v in range(host.n):
            if hdeg[v] >= d:
                at_least[d] |= 1 << v
    earlier = []
    seen = 0
    for v in order:
        earlier.append([u for u in _bits(pattern.rows[v] & seen)])
        seen |= 1 << v
    image = [0] * pattern.n
    full = (1 << host.n) - 1

    def place(i: int, used: int) -> bool:
        if i == len(order):
            return True
        p = order[i]
        cand = at_least[pdeg[p]] & ~used & full
        for q in earlier[i]:
            cand &= host.rows[image[q]]
        for h in _bits(cand):
            image[p] = h
            if place(i + 1, used | (1 << h)):
                return True
        return False

    if place(0, 0):
        return ContainmentWitness(tuple(image))
    return ContainmentWitness()


def is_F_free(host: Graph, pattern: Graph) -> bool:
    return not contains_subgraph(host, pattern).present


def is_claw_free(g: Graph) -> bool:
    return not contains_subgraph(g, CLAW).present


def _colourable(g: Graph, k: int, order: List[int]) -> bool:
    colour = [-1] * g.n

    def assign(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        taken = {colour[u] for u in _bits(g.rows[v]) if colour[u] >= 0}
        # a fresh colour only needs trying once
        for c in range(min(k, used + 1)):
            if c in taken:
                continue
            colour[v] = c
            if assign(i + 1, max(used, c + 1)):
                return True
        colour[v] = -1
        return False

    return assign(0, 0)


def chromatic_number(g: Graph) -> int:
    if g.n > CHROMATIC_LIMIT:
        raise SizeLimitError(g.n, CHROMATIC_LIMIT, 'chromatic_number')
    if g.m == 0:
        return 1
    if g.is_bipartite():
        return 2
    order = _search_order(g)
    k = 3
    while not _colourable(g, k, order):
        k += 1
    return k


# ── Linear forests ──────────────────────────────────────────────────────────

@lru_cache(maxsize=1 << 16)
def _packs(bins: Tuple[int, ...], items: Tuple[int, ...]) -> bool:
    # items sorted descending; bins are remaining capacities
    if not items:
        return True
    first, rest = items[0], items[1:]
    tried = set()
    for i, cap in enumerate(bins):
        if cap < first or cap in tried:
            continue
        tried.add(cap)
        left = bins[:i] + (cap - first,) + bins[i + 1:]
        if _packs(tuple(sorted(left, reverse=True)), rest):
            return True
    return False


def forest_contains(host: LinearForest, pattern: LinearForest) -> bool:
    """True iff the paths of ``pattern`` fit disjointly inside those of ``host``.

    A host path of order m holds any pattern parts of total order <= m.
    Only the len(pattern) largest host parts can ever be used.
    """
    if pattern.n > host.n or pattern.parts[0] > host.parts[0]:
        return False
    return _packs(host.parts[:len(pattern)], pattern.parts)


def merges(candidate: LinearForest) -> List[LinearForest]:
    """Every forest obtained by joining two parts of ``candidate`` with an edge."""
    parts = candidate.parts
    out = []
    seen = set()
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            key = (parts[i], parts[j])
            if key in seen:
                continue
            seen.add(key)
            rest = parts[:i] + parts[i + 1:j] + parts[j + 1:]
            out.append(LinearForest(rest + (parts[i] + parts[j],)))
    return out


def is_H_maximal(candidate: LinearForest, h: LinearForest) -> bool:
    if forest_contains(candidate, h):
        return False
    return all(forest_contains(bigger, h) for bigger in merges(candidate))
