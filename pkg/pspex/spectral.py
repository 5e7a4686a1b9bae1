"""Perron vectors, Rayleigh quotients, certified enclosures and graph surgery."""
from __future__ import annotations
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
import sympy as sp

from .canon import equitable_partition
from .closedform import ClosedFormRadius, Ordering, compare_radii, largest_root
from .config import DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE
from .errors import ConvergenceError, ParameterError
from .graph import Graph, _bits, forest_of, path_order

log = logging.getLogger(__name__)

Interval = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class PerronResult:
    lam: float
    vector: Tuple[float, ...]         # max entry exactly 1, zero off the component
    residual: float
    iterations: int
    component: Optional[Tuple[int, ...]] = None   # set when g is disconnected

    def to_dict(self) -> dict:
        return {
            'lambda': self.lam,
            'vector': list(self.vector),
            'residual': self.residual,
            'iterations': self.iterations,
            'component': list(self.component) if self.component else None,
        }


def _power_iteration(a: np.ndarray, tol: float, max_iterations: int):
    """Power iteration on A + I; returns (lambda, x, residual, iterations)."""
    shifted = a + np.eye(a.shape[0])
    x = np.ones(a.shape[0])
    residual = float('inf')
    for it in range(1, max_iterations + 1):
        y = shifted @ x
        x = y / y.max()
        ax = a @ x
        lam = float(x @ ax) / float(x @ x)
        residual = float(np.abs(ax - lam * x).max())
        if residual <= tol:
            return lam, x, residual, it
    raise ConvergenceError(max_iterations, residual)


def _component_perron(g: Graph, comp: Sequence[int], tol: float, max_iterations: int):
    sub = g.induced(comp)
    return _power_iteration(sub.adjacency_matrix(), tol, max_iterations)


def perron(g: Graph, tol: float = DEFAULT_TOLERANCE,
           max_iterations: int = DEFAULT_MAX_ITERATIONS) -> PerronResult:
    if tol <= 0:
        raise ParameterError('tol', tol, 'must be positive')
    comps = g.components()
    if len(comps) == 1:
        lam, x, residual, its = _power_iteration(g.adjacency_matrix(), tol, max_iterations)
        return PerronResult(lam, tuple(float(t) for t in x), residual, its)
    best = None
    total = 0
    for comp in comps:
        lam, x, residual, its = _component_perron(g, comp, tol, max_iterations)
        total += its
        if best is None or lam > best[0] + tol:
            best = (lam, x, residual, comp)
    lam, x, residual, comp = best
    vector = [0.0] * g.n
    for v, weight in zip(comp, x):
        vector[v] = float(weight)
    log.debug('disconnected graph: %d components, max on %s', len(comps), comp)
    return PerronResult(lam, tuple(vector), residual, total, tuple(comp))


def _is_exact(v: Sequence) -> bool:
    return all(isinstance(t, (int, Fraction)) for t in v)


def quadratic_form(g: Graph, v: Sequence):
    """v^T A v; exact when v is rational."""
    if len(v) != g.n:
        raise ParameterError('v', len(v), f'expected {g.n} entries')
    return 2 * sum(v[a] * v[b] for a, b in g.edges())


def rayleigh(g: Graph, v: Sequence):
    num = quadratic_form(g, v)
    den = sum(t * t for t in v)
    if den == 0:
        raise ParameterError('v', tuple(v), 'zero vector')
    if _is_exact(v):
        return Fraction(num) / Fraction(den)
    return float(num) / float(den)


def _collatz_wielandt(sub: Graph, x: np.ndarray) -> Interval:
    """Exact [min, max] of (Ax)_i / x_i, which brackets the spectral radius."""
    xs = [Fraction(float(t)) for t in x]
    ratios = [sum((xs[w] for w in _bits(sub.rows[v])), Fraction(0)) / xs[v]
              for v in range(sub.n)]
    lo = max(min(ratios), rayleigh(sub, xs))
    return lo, max(ratios)


def certified_interval(g: Graph, tol: float = DEFAULT_TOLERANCE,
                       max_iterations: int = DEFAULT_MAX_ITERATIONS) -> Interval:
    """Rational [lo, hi] that provably contains the spectral radius of ``g``."""
    lo = hi = Fraction(0)
    for comp in g.components():
        if len(comp) == 1:
            continue
        sub = g.induced(comp)
        _, x, _, _ = _power_iteration(sub.adjacency_matrix(), tol, max_iterations)
        c_lo, c_hi = _collatz_wielandt(sub, x)
        lo, hi = max(lo, c_lo), max(hi, c_hi)
    return lo, hi


def charpoly(g: Graph) -> sp.Poly:
    return sp.Matrix(g.adjacency_matrix(dtype=int).tolist()).charpoly(sp.Symbol('x'))


# ── Equitable quotients ─────────────────────────────────────────────────────

def equitable_quotient(g: Graph) -> Tuple[List[List[int]], Tuple[Tuple[int, ...], ...]]:
    """Coarsest equitable partition and its quotient matrix.

    Entry (i, j) counts the neighbours in cell j of any vertex of cell i.
    """
    cells = equitable_partition(g)
    masks = [sum(1 << v for v in cell) for cell in cells]
    matrix = tuple(tuple((g.rows[cell[0]] & m).bit_count() for m in masks)
                   for cell in cells)
    return cells, matrix


def quotient_radius(g: Graph) -> ClosedFormRadius:
    """Spectral radius as the largest root of the quotient characteristic polynomial."""
    _, matrix = equitable_quotient(g)
    poly = sp.Matrix([list(row) for row in matrix]).charpoly(sp.Symbol('x'))
    return largest_root(poly)


def compare_spectral_radii(a: Graph, b: Graph) -> Ordering:
    return compare_radii(quotient_radius(a), quotient_radius(b))


# ── Surgery ─────────────────────────────────────────────────────────────────

def transform(g: Graph, v: int, targets: Sequence[int],
              deleted_edge: Optional[Tuple[int, int]] = None) -> Graph:
    """Detach ``v``, join it to ``targets`` and optionally drop one more edge."""
    if not 0 <= v < g.n:
        raise ParameterError('v', v, f'not a vertex of a {g.n}-vertex graph')
    targets = set(targets)
    if v in targets:
        raise ParameterError('targets', sorted(targets), f'contains the moved vertex {v}')
    if any(not 0 <= t < g.n for t in targets):
        raise ParameterError('targets', sorted(targets), 'vertex out of range')
    out = g
    for w in g.neighbors(v):
        out = out.remove_edge(v, w)
    if deleted_edge is not None:
        a, b = deleted_edge
        if a == b or not (0 <= a < g.n and 0 <= b < g.n):
            raise ParameterError('deleted_edge', deleted_edge,
                                 f'needs two distinct vertices of a {g.n}-vertex graph')
        if v in (a, b):
            raise ParameterError('deleted_edge', deleted_edge, f'is incident to {v}')
        if not g.has_edge(a, b):
            raise ParameterError('deleted_edge', deleted_edge, 'is not an edge')
        out = out.remove_edge(a, b)
    for t in sorted(targets):
        out = out.add_edge(v, t)
    return out


def quadratic_form_delta(g: Graph, g2: Graph, v: Sequence):
    """v^T A(g2) v - v^T A(g) v over the symmetric difference of the edge sets."""
    if g.n != g2.n:
        raise ParameterError('g2', g2.n, f'vertex count differs from {g.n}')
    if len(v) != g.n:
        raise ParameterError('v', len(v), f'expected {g.n} entries')
    total = 0
    for a in range(g.n):
        changed = (g.rows[a] ^ g2.rows[a]) >> (a + 1)
        for b in _bits(changed):
            b += a + 1
            term = v[a] * v[b]
            total += term if g2.has_edge(a, b) else -term
    return 2 * total


def cycle_completion(g: Graph, x: int, w: int) -> Graph:
    """Delete xw and close the common neighbourhood of x and w into one cycle.

    Requires x and w to dominate every other vertex and the common
    neighbourhood to induce a linear forest on at least three vertices.
    """
    others = [v for v in range(g.n) if v not in (x, w)]
    if x == w or not others:
        raise ParameterError('x,w', (x, w), 'need two distinct vertices and a rest')
    common = g.rows[x] & g.rows[w]
    if any(not common >> v & 1 for v in others):
        raise ParameterError('x,w', (x, w), 'do not dominate every other vertex')
    if len(others) < 3:
        raise ParameterError('n', g.n, 'need at least 3 common neighbours')
    inner = g.induced(others)
    if forest_of(inner) is None:
        raise ParameterError('x,w', (x, w), 'common neighbourhood is not a linear forest')
    ring: List[int] = []
    for comp in inner.components():
        ring.extend(others[i] for i in path_order(inner, comp))
    out = g.remove_edge(x, w) if g.has_edge(x, w) else g
    for a, b in zip(ring, ring[1:] + ring[:1]):
        if not out.has_edge(a, b):
            out = out.add_edge(a, b)
    return out
