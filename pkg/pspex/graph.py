"""Simple undirected graphs on at most 64 vertices, plus linear forests.

A graph stores one Python int per vertex as its neighbour bitset; vertex
labels are always 0..n-1. Values are immutable and hashable.
"""
from __future__ import annotations
import enum
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .config import MAX_VERTICES
from .errors import CapacityError, ParameterError


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    rows: Tuple[int, ...]
    m: int = field(init=False, compare=False)

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise CapacityError(self.n, MAX_VERTICES)
        if len(self.rows) != self.n:
            raise ParameterError('rows', len(self.rows), f'expected {self.n} rows')
        full = (1 << self.n) - 1
        for u, row in enumerate(self.rows):
            if row & ~full or row >> u & 1:
                raise ParameterError('rows', u, 'loop or out-of-range neighbour')
            for v in _bits(row):
                if not self.rows[v] >> u & 1:
                    raise ParameterError('rows', (u, v), 'adjacency is not symmetric')
        object.__setattr__(self, 'm', sum(r.bit_count() for r in self.rows) // 2)

    # ── Construction ────────────────────────────────────────────────────────

    @classmethod
    def _trusted(cls, n: int, rows: Tuple[int, ...]) -> 'Graph':
        """Skip validation; callers derive ``rows`` from a valid graph."""
        g = object.__new__(cls)
        object.__setattr__(g, 'n', n)
        object.__setattr__(g, 'rows', rows)
        object.__setattr__(g, 'm', sum(r.bit_count() for r in rows) // 2)
        return g

    @classmethod
    def empty(cls, n: int) -> 'Graph':
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> 'Graph':
        if not 1 <= n <= MAX_VERTICES:
            raise CapacityError(n, MAX_VERTICES)
        rows = [0] * n
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise ParameterError('edge', (u, v), f'not an edge on {n} vertices')
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> 'Graph':
        index = {v: i for i, v in enumerate(g.nodes())}
        return cls.from_edges(len(index),
                              ((index[u], index[v]) for u, v in g.edges()))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    def adjacency_matrix(self, dtype=np.float64) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    # ── Queries ─────────────────────────────────────────────────────────────

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> List[int]:
        return list(_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> List[int]:
        return [r.bit_count() for r in self.rows]

    def degree_sequence(self) -> Tuple[int, ...]:
        return tuple(sorted(self.degrees(), reverse=True))

    def max_degree(self) -> int:
        return max(self.degrees())

    def edges(self) -> Iterator[Tuple[int, int]]:
        for u, row in enumerate(self.rows):
            for v in _bits(row >> (u + 1)):
                yield u, u + 1 + v

    def non_edges(self) -> Iterator[Tuple[int, int]]:
        full = (1 << self.n) - 1
        for u, row in enumerate(self.rows):
            missing = ~row & full & ~((1 << (u + 1)) - 1)
            for v in _bits(missing):
                yield u, v

    def components(self) -> List[List[int]]:
        seen = 0
        out: List[List[int]] = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = frontier = 1 << s
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= self.rows[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            out.append(list(_bits(comp)))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def is_bipartite(self) -> bool:
        side: Dict[int, int] = {}
        for comp in self.components():
            side[comp[0]] = 0
            stack = [comp[0]]
            while stack:
                u = stack.pop()
                for v in _bits(self.rows[u]):
                    if v not in side:
                        side[v] = 1 - side[u]
                        stack.append(v)
                    elif side[v] == side[u]:
                        return False
        return True

    # ── Derived graphs ──────────────────────────────────────────────────────

    def add_edge(self, u: int, v: int) -> 'Graph':
        if u == v or not (0 <= u < self.n and 0 <= v < self.n):
            raise ParameterError('edge', (u, v), f'not an edge on {self.n} vertices')
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph._trusted(self.n, tuple(rows))

    def remove_edge(self, u: int, v: int) -> 'Graph':
        rows = list(self.rows)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph._trusted(self.n, tuple(rows))

    def relabel(self, perm: Sequence[int]) -> 'Graph':
        """Graph with old vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ParameterError('perm', tuple(perm), 'not a permutation')
        rows = [0] * self.n
        for u, row in enumerate(self.rows):
            new = 0
            for v in _bits(row):
                new |= 1 << perm[v]
            rows[perm[u]] = new
        return Graph._trusted(self.n, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> 'Graph':
        """Subgraph induced on ``vertices``, relabelled in the given order."""
        pos = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            new = 0
            for w in _bits(self.rows[v]):
                if w in pos:
                    new |= 1 << pos[w]
            rows.append(new)
        return Graph._trusted(len(rows), tuple(rows))


# ── Linear forests ──────────────────────────────────────────────────────────

@dataclass(frozen=True)
class LinearForest:
    parts: Tuple[int, ...]

    def __post_init__(self):
        if not self.parts:
            raise ParameterError('parts', (), 'a forest needs at least one part')
        if any(not isinstance(p, int) or p < 1 for p in self.parts):
            raise ParameterError('parts', self.parts, 'every part must be >= 1')
        object.__setattr__(self, 'parts', tuple(sorted(self.parts, reverse=True)))

    @classmethod
    def of(cls, *parts: int) -> 'LinearForest':
        return cls(tuple(parts))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def edges(self) -> int:
        return self.n - len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return '{' + ','.join(str(p) for p in self.parts) + '}'


def forest_realize(f: LinearForest) -> Graph:
    """Paths laid out on consecutive labels, longest part first."""
    edges = []
    start = 0
    for p in f.parts:
        edges.extend((start + i, start + i + 1) for i in range(p - 1))
        start += p
    return Graph.from_edges(f.n, edges)


def forest_of(g: Graph) -> Optional[LinearForest]:
    if g.max_degree() > 2:
        return None
    parts = []
    for comp in g.components():
        e = sum(g.degree(v) for v in comp) // 2
        if e != len(comp) - 1:
            return None
        parts.append(len(comp))
    return LinearForest(tuple(parts))


def path_order(g: Graph, vertices: Sequence[int]) -> List[int]:
    """Vertices of a path component listed from one end to the other."""
    inside = set(vertices)
    ends = [v for v in vertices
            if sum(1 for w in g.neighbors(v) if w in inside) <= 1]
    order = [min(ends)]
    prev = None
    while len(order) < len(vertices):
        cur = order[-1]
        nxt = [w for w in g.neighbors(cur) if w in inside and w != prev]
        prev = cur
        order.append(nxt[0])
    return order


# ── Algebra ─────────────────────────────────────────────────────────────────

def _check_capacity(a: Graph, b: Graph) -> None:
    if a.n + b.n > MAX_VERTICES:
        raise CapacityError(a.n + b.n, MAX_VERTICES)


def join(a: Graph, b: Graph) -> Graph:
    """``a`` on labels 0..a.n-1, ``b`` after it, every cross pair adjacent."""
    _check_capacity(a, b)
    mask_a = (1 << a.n) - 1
    mask_b = ((1 << b.n) - 1) << a.n
    rows = [r | mask_b for r in a.rows] + [(r << a.n) | mask_a for r in b.rows]
    return Graph._trusted(a.n + b.n, tuple(rows))


def disjoint_union(a: Graph, b: Graph) -> Graph:
    _check_capacity(a, b)
    return Graph._trusted(a.n + b.n, a.rows + tuple(r << a.n for r in b.rows))


def disjoint_copies(g: Graph, count: int) -> Graph:
    out = g
    for _ in range(count - 1):
        out = disjoint_union(out, g)
    return out


# ── Named families ──────────────────────────────────────────────────────────

class Family(enum.Enum):
    PATH = 'path'
    CYCLE = 'cycle'
    EMPTY = 'empty'
    COMPLETE = 'complete'
    MATCHING = 'matching'
    BOOK = 'book'
    TWO_APEX_CYCLE = 'two-apex-cycle'
    JOIN_K2_FOREST = 'k2-forest'
    COMPLETE_BIPARTITE = 'k'
    JOIN_K2_PATH = 'k2-path'
    JOIN_K2_CYCLE = 'k2-cycle'
    JOIN_K2_MATCHING = 'k2-matching'
    JOIN_K2_NEAR_MATCHING = 'k2-near-matching'
    K5_MINUS_EDGE = 'k5-e'


# family -> (parameter names, minimum per parameter)
_ARITY: Dict[Family, Tuple[Tuple[str, int], ...]] = {
    Family.PATH: (('k', 1),),
    Family.CYCLE: (('k', 3),),
    Family.EMPTY: (('k', 1),),
    Family.COMPLETE: (('k', 1),),
    Family.MATCHING: (('p', 1),),
    Family.BOOK: (('p', 1),),
    Family.TWO_APEX_CYCLE: (('n', 5),),
    Family.COMPLETE_BIPARTITE: (('a', 1), ('b', 1)),
    Family.JOIN_K2_PATH: (('n', 3),),
    Family.JOIN_K2_CYCLE: (('n', 5),),
    Family.JOIN_K2_MATCHING: (('n', 4),),
    Family.JOIN_K2_NEAR_MATCHING: (('n', 3),),
    Family.K5_MINUS_EDGE: (),
}


@dataclass(frozen=True)
class GraphFamilyTag:
    family: Family
    params: Tuple[int, ...] = ()

    def __str__(self) -> str:
        if not self.params:
            return self.family.value
        return f"{self.family.value}:{','.join(str(p) for p in self.params)}"

    def order(self) -> int:
        """Vertex count of the graph this tag names (parameters unchecked)."""
        f, p = self.family, self.params
        if f in (Family.PATH, Family.CYCLE, Family.EMPTY, Family.COMPLETE):
            return p[0]
        if f is Family.MATCHING:
            return 2 * p[0]
        if f is Family.BOOK:
            return p[0] + 2
        if f is Family.JOIN_K2_FOREST:
            return sum(p) + 2
        if f is Family.COMPLETE_BIPARTITE:
            return p[0] + p[1]
        if f is Family.K5_MINUS_EDGE:
            return 5
        return p[0]


def validate_tag(tag: GraphFamilyTag) -> None:
    f, params = tag.family, tag.params
    if f is Family.JOIN_K2_FOREST:
        if not params:
            raise ParameterError('parts', params, 'k2-forest needs at least one part')
        for p in params:
            if p < 1:
                raise ParameterError('parts', params, 'every part must be >= 1')
    else:
        arity = _ARITY[f]
        if len(params) != len(arity):
            raise ParameterError(f.value, params,
                                 f'expected {len(arity)} parameter(s)')
        for (name, low), value in zip(arity, params):
            if value < low:
                raise ParameterError(name, value, f'{f.value} needs {name} >= {low}')
        if f is Family.JOIN_K2_MATCHING and params[0] % 2:
            raise ParameterError('n', params[0], 'k2-matching needs even n')
        if f is Family.JOIN_K2_NEAR_MATCHING and not params[0] % 2:
            raise ParameterError('n', params[0], 'k2-near-matching needs odd n')
    if tag.order() > MAX_VERTICES:
        raise ParameterError('n', tag.order(),
                             f'at most {MAX_VERTICES} vertices are supported')


def path(k: int) -> Graph:
    return Graph.from_edges(k, ((i, i + 1) for i in range(k - 1)))


def cycle(k: int) -> Graph:
    return Graph.from_edges(k, ((i, (i + 1) % k) for i in range(k)))


def complete(k: int) -> Graph:
    full = (1 << k) - 1
    return Graph(k, tuple(full & ~(1 << v) for v in range(k)))


def matching(p: int) -> Graph:
    return Graph.from_edges(2 * p, ((2 * i, 2 * i + 1) for i in range(p)))


K2 = complete(2)


def construct(tag: GraphFamilyTag) -> Graph:
    validate_tag(tag)
    f, p = tag.family, tag.params
    if f is Family.PATH:
        return path(p[0])
    if f is Family.CYCLE:
        return cycle(p[0])
    if f is Family.EMPTY:
        return Graph.empty(p[0])
    if f is Family.COMPLETE:
        return complete(p[0])
    if f is Family.MATCHING:
        return matching(p[0])
    if f is Family.BOOK:
        return join(K2, Graph.empty(p[0]))
    if f is Family.TWO_APEX_CYCLE:
        return join(Graph.empty(2), cycle(p[0] - 2))
    if f is Family.JOIN_K2_FOREST:
        return join(K2, forest_realize(LinearForest(p)))
    if f is Family.COMPLETE_BIPARTITE:
        return join(Graph.empty(p[0]), Graph.empty(p[1]))
    if f is Family.JOIN_K2_PATH:
        return join(K2, path(p[0] - 2))
    if f is Family.JOIN_K2_CYCLE:
        return join(K2, cycle(p[0] - 2))
    if f is Family.JOIN_K2_MATCHING:
        return join(K2, matching((p[0] - 2) // 2))
    if f is Family.JOIN_K2_NEAR_MATCHING:
        rest = Graph.empty(1)
        if p[0] > 3:
            rest = disjoint_union(matching((p[0] - 3) // 2), rest)
        return join(K2, rest)
    return complete(5).remove_edge(3, 4)
