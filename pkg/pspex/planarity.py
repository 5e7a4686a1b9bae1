from __future__ import annotations
from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Tuple

import networkx as nx

from .errors import ParameterError
from .graph import Graph

Edge = Tuple[int, int]


@dataclass(frozen=True)
class PlanarityVerdict:
    planar: bool
    rotation: Optional[Dict[int, Tuple[int, ...]]] = None   # clockwise neighbours
    witness: Optional[FrozenSet[Edge]] = None
    kind: Optional[str] = None                               # 'K5' or 'K3,3'

    def verify(self, g: Graph) -> bool:
        """Check the certificate against ``g`` without trusting the verdict."""
        if self.planar:
            return self.rotation is not None and _euler_ok(g, self.rotation)
        if not self.witness or not all(g.has_edge(u, v) for u, v in self.witness):
            return False
        return kuratowski_kind(self.witness) is not None


def _euler_ok(g: Graph, rotation: Dict[int, Tuple[int, ...]]) -> bool:
    for v in range(g.n):
        if sorted(rotation.get(v, ())) != g.neighbors(v):
            return False
    comps = g.components()
    comp_of = {v: i for i, comp in enumerate(comps) for v in comp}
    faces = Counter()
    seen = set()
    # face walk: dart (a, b) -> (b, c) with c just before a in b's clockwise order
    for u in range(g.n):
        for v in rotation.get(u, ()):
            if (u, v) in seen:
                continue
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                ring = rotation[b]
                a, b = b, ring[ring.index(a) - 1]
            faces[comp_of[u]] += 1
    for i, comp in enumerate(comps):
        e = sum(g.degree(v) for v in comp) // 2
        f = faces[i] or 1
        if len(comp) - e + f != 2:
            return False
    return True


def kuratowski_kind(edges) -> Optional[str]:
    """'K5' or 'K3,3' when ``edges`` form a subdivision of that graph."""
    edges = list(edges)
    adj: Dict[int, list] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if any(len(nb) not in (2, 3, 4) for nb in adj.values()):
        return None
    branch = [v for v, nb in adj.items() if len(nb) >= 3]
    threads = Counter()
    walked = 0
    for b in branch:
        for nxt in adj[b]:
            prev, cur = b, nxt
            walked += 1
            while len(adj[cur]) == 2:
                a, c = adj[cur]
                prev, cur = cur, (c if a == prev else a)
                walked += 1
            if cur == b:
                return None
            threads[frozenset((b, cur))] += 1
    # each thread is walked once from either end
    if walked != 2 * len(edges) or any(c != 2 for c in threads.values()):
        return None
    degrees = {len(adj[b]) for b in branch}
    if len(branch) == 5 and degrees == {4} and len(threads) == 10:
        return 'K5'
    if len(branch) == 6 and degrees == {3} and len(threads) == 9:
        h = nx.Graph([tuple(t) for t in threads])
        if nx.is_connected(h) and nx.is_bipartite(h):
            left, right = nx.bipartite.sets(h)
            if len(left) == 3 and len(right) == 3:
                return 'K3,3'
    return None


def is_planar(g: Graph) -> PlanarityVerdict:
    planar, cert = nx.check_planarity(g.to_networkx(), counterexample=True)
    if planar:
        rotation = {v: tuple(nb) for v, nb in cert.get_data().items()}
        for v in range(g.n):
            rotation.setdefault(v, ())
        return PlanarityVerdict(True, rotation=rotation)
    witness = frozenset(tuple(sorted(e)) for e in cert.edges())
    return PlanarityVerdict(False, witness=witness, kind=kuratowski_kind(witness))


def planar(g: Graph) -> bool:
    """Verdict only, for hot loops that do not need a certificate."""
    if g.n >= 3 and not edge_bound_check(g):
        return False
    return nx.check_planarity(g.to_networkx())[0]


def edge_bound_check(g: Graph) -> bool:
    if g.n < 3:
        raise ParameterError('n', g.n, 'edge bounds need at least 3 vertices')
    if g.m > 3 * g.n - 6:
        return False
    if g.m > 2 * g.n - 4 and g.is_bipartite():
        return False
    return True
