"""Exhaustive search for the spectral extremal planar F-free graphs at small n.

Candidates are the isomorphism classes of planar F-free graphs to which
no edge can be added without losing one of the two properties. Adding an
edge never lowers the spectral radius, so every extremal graph is such a
candidate. Classes are generated level by level from the empty graph,
one level per edge count, deduplicated by canonical form.
"""
from __future__ import annotations
import enum
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import repeat
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from tqdm import tqdm

from . import graph6
from .canon import Key, are_isomorphic, canonical_form
from .closedform import Ordering
from .config import DEFAULT_EPSILON, DEFAULT_N_CAP, DEFAULT_PI_HORIZON, DEFAULT_TOLERANCE, OVERRIDE_N_CAP
from .errors import DisconnectedError, ParameterError, RefinementError, SearchCapError
from .graph import (Family, Graph, GraphFamilyTag, K2, LinearForest, construct,
                    forest_of, forest_realize, join)
from .patterns import contains_subgraph, is_claw_free, is_F_free
from .planarity import edge_bound_check, planar
from .spectral import Interval, certified_interval, compare_spectral_radii, perron
from .turan import Outcome, Prediction, classify_spex, maximal_forests

log = logging.getLogger(__name__)

RESTRICTION_NOTE = (
    'only edge-maximal planar F-free graphs are evaluated: adding an edge never '
    'decreases the spectral radius, so every extremal graph is edge-maximal')


def check_cap(n: int, n_cap: int = DEFAULT_N_CAP, allow_large: bool = False) -> None:
    if n < 3:
        raise ParameterError('n', n, 'search needs n >= 3')
    cap = OVERRIDE_N_CAP if allow_large else min(n_cap, OVERRIDE_N_CAP)
    if n > cap:
        raise SearchCapError(n, cap, None if allow_large else OVERRIDE_N_CAP)


def admissible(g: Graph, forbidden: Optional[Graph]) -> bool:
    if not planar(g):
        return False
    return forbidden is None or is_F_free(g, forbidden)


def _expand(parents: Sequence[Graph], forbidden: Optional[Graph]):
    """Split ``parents`` into edge-maximal ones and admissible children."""
    verdicts: Dict[Key, bool] = {}
    children: Dict[Key, Graph] = {}
    maximal: List[Graph] = []
    for g in parents:
        grows = False
        for u, v in g.non_edges():
            child = g.add_edge(u, v)
            if child.n >= 3 and not edge_bound_check(child):
                continue
            canon = canonical_form(child)
            ok = verdicts.get(canon.rows)
            if ok is None:
                ok = verdicts[canon.rows] = admissible(canon, forbidden)
            if ok:
                grows = True
                children[canon.rows] = canon
        if not grows:
            maximal.append(g)
    return maximal, children, len(verdicts)


@dataclass
class CandidateSearch:
    n: int
    forbidden: Optional[Graph]
    threads: int = 1
    progress: bool = False
    visited: int = 0
    checked: int = 0
    maximal: int = 0

    def _batches(self, level: List[Graph]) -> List[List[Graph]]:
        size = max(1, -(-len(level) // (self.threads * 4)))
        return [level[i:i + size] for i in range(0, len(level), size)]

    def run(self) -> Iterator[Graph]:
        root = Graph.empty(self.n)
        if not admissible(root, self.forbidden):
            log.info('the empty graph on %d vertices already contains F', self.n)
            return
        level = [root]
        pool = ProcessPoolExecutor(max_workers=self.threads) if self.threads > 1 else None
        bar = tqdm(desc=f'n={self.n}', unit='graph', disable=not self.progress, leave=False)
        try:
            while level:
                self.visited += len(level)
                bar.update(len(level))
                if pool is None:
                    results = [_expand(level, self.forbidden)]
                else:
                    results = list(pool.map(_expand, self._batches(level), repeat(self.forbidden)))
                found: List[Graph] = []
                children: Dict[Key, Graph] = {}
                for maximal, kids, checked in results:
                    found.extend(maximal)
                    children.update(kids)
                    self.checked += checked
                self.maximal += len(found)
                log.debug('level m=%d: %d classes, %d maximal', level[0].m, len(level), len(found))
                yield from sorted(found, key=lambda g: g.rows)
                level = [children[k] for k in sorted(children)]
        finally:
            bar.close()
            if pool is not None:
                pool.shutdown()


def enumerate_candidates(n: int, forbidden: Optional[Graph], *,
                         n_cap: int = DEFAULT_N_CAP, allow_large: bool = False,
                         threads: int = 1, progress: bool = False) -> Iterator[Graph]:
    """One canonical representative per class of edge-maximal planar F-free graphs."""
    check_cap(n, n_cap, allow_large)
    return CandidateSearch(n, forbidden, threads, progress).run()


# ── Predictions from the asymptotic theory ──────────────────────────────────

def split_join_k2(forbidden: Graph) -> Optional[LinearForest]:
    """H when ``forbidden`` is K2 joined with the linear forest H, else None."""
    if forbidden.n < 3:
        return None
    dominating = [v for v in range(forbidden.n) if forbidden.degree(v) == forbidden.n - 1]
    for i, a in enumerate(dominating):
        for b in dominating[i + 1:]:
            rest = [v for v in range(forbidden.n) if v not in (a, b)]
            h = forest_of(forbidden.induced(rest))
            if h is not None:
                return h
    return None


def predict(n: int, forbidden: Graph, horizon: int = DEFAULT_PI_HORIZON) -> Prediction:
    if n >= 3 and not contains_subgraph(construct(GraphFamilyTag(Family.JOIN_K2_PATH, (n,))),
                                        forbidden).present:
        return Prediction(Outcome.JOIN_K2_PATH, 'F is not a subgraph of K2+P_(n-2)')
    h = split_join_k2(forbidden)
    if h is None:
        return Prediction(Outcome.OPEN, 'F is not K2 joined with a linear forest')
    if h.edges == 0:
        if h.n >= 3:
            return Prediction(Outcome.TWO_APEX_CYCLE, f'F is the book B_{h.n} with p >= 3', h)
        return Prediction(Outcome.OPEN, f'F is the book B_{h.n} with p < 3', h)
    return classify_spex(h, horizon)


def predicted_keys(n: int, prediction: Prediction) -> Optional[Tuple[set, bool]]:
    """Canonical keys of the predicted graphs and whether equality is claimed."""
    if prediction.outcome is Outcome.TWO_APEX_CYCLE and n >= 5:
        g = construct(GraphFamilyTag(Family.TWO_APEX_CYCLE, (n,)))
        return {canonical_form(g).rows}, True
    if prediction.outcome is Outcome.JOIN_K2_PATH:
        g = construct(GraphFamilyTag(Family.JOIN_K2_PATH, (n,)))
        return {canonical_form(g).rows}, True
    if prediction.outcome is Outcome.JOIN_K2_MAXIMAL and n >= 3:
        family = {canonical_form(join(K2, forest_realize(f))).rows
                  for f in maximal_forests(n - 2, prediction.h)}
        return family, False
    return None


class Agreement(enum.Enum):
    AGREES = 'AGREES'
    DIFFERS = 'DIFFERS'
    NO_PREDICTION = 'NO_PREDICTION'


# ── Certification ───────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Candidate:
    graph: Graph
    interval: Interval

    def to_dict(self) -> dict:
        return {
            'graph6': graph6.encode(self.graph),
            'degree_sequence': list(self.graph.degree_sequence()),
            'edges': self.graph.m,
            'interval': {'lo': self.interval[0], 'hi': self.interval[1]},
        }


@dataclass
class SpexReport:
    n: int
    forbidden: Graph
    spex: Interval
    argmax: List[Candidate]
    enumerated: int
    evaluated: int
    exact_comparisons: int
    prediction: Prediction
    agreement: Agreement
    unresolved: bool = False
    threads: int = 1
    wall_time: float = 0.0
    note: str = RESTRICTION_NOTE

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            'n': self.n,
            'forbidden': graph6.encode(self.forbidden),
            'spex': {'lo': self.spex[0], 'hi': self.spex[1]},
            'argmax': [c.to_dict() for c in self.argmax],
            'counts': {'enumerated': self.enumerated, 'evaluated': self.evaluated,
                       'exact_comparisons': self.exact_comparisons},
            'prediction': self.prediction.to_dict(),
            'agreement': self.agreement.value,
            'unresolved': self.unresolved,
            'note': self.note,
        }
        if timing:
            out['threads'] = self.threads
            out['wall_time'] = round(self.wall_time, 3)
        return out


def _order(a: Candidate, b: Candidate) -> Tuple[Ordering, bool]:
    """Exact order of the radii of two candidates; the flag counts exact work."""
    if a.interval[1] < b.interval[0]:
        return Ordering.LESS, False
    if a.interval[0] > b.interval[1]:
        return Ordering.GREATER, False
    return compare_spectral_radii(a.graph, b.graph), True


def spex_search(n: int, forbidden: Graph, *, tol: float = DEFAULT_TOLERANCE,
                n_cap: int = DEFAULT_N_CAP, allow_large: bool = False,
                threads: int = 1, progress: bool = False,
                horizon: int = DEFAULT_PI_HORIZON) -> SpexReport:
    check_cap(n, n_cap, allow_large)
    started = time.perf_counter()
    search = CandidateSearch(n, forbidden, threads, progress)
    pool = [Candidate(g, certified_interval(g, tol)) for g in search.run()]
    if not pool:
        raise ParameterError('forbidden', graph6.encode(forbidden),
                             f'no {n}-vertex graph avoids it')
    floor = max(c.interval[0] for c in pool)
    contenders = [c for c in pool if c.interval[1] >= floor]
    best: List[Candidate] = [contenders[0]]
    exact = 0
    unresolved = False
    for c in contenders[1:]:
        try:
            order, used = _order(c, best[0])
        except RefinementError as e:
            log.warning('%s; keeping both candidates', e)
            order, used, unresolved = Ordering.EQUAL, True, True
        exact += used
        if order is Ordering.GREATER:
            best = [c]
        elif order is Ordering.EQUAL:
            best.append(c)
    best.sort(key=lambda c: graph6.encode(c.graph))
    spex = (floor, min(c.interval[1] for c in best))

    prediction = predict(n, forbidden, horizon)
    expected = predicted_keys(n, prediction)
    if expected is None:
        agreement = Agreement.NO_PREDICTION
    else:
        keys, exact_set = expected
        found = {c.graph.rows for c in best}
        ok = found == keys if exact_set else found <= keys
        agreement = Agreement.AGREES if ok else Agreement.DIFFERS
    elapsed = time.perf_counter() - started
    log.info('n=%d: %d classes, %d candidates, argmax %d, %s in %.1fs',
             n, search.visited, len(pool), len(best), agreement.value, elapsed)
    return SpexReport(n, forbidden, spex, best, search.visited, len(pool), exact,
                      prediction, agreement, unresolved, threads, elapsed)


# ── Structure of a candidate ────────────────────────────────────────────────

class StructureCase(enum.Enum):
    CYCLE_IN_B = 'CYCLE_IN_B'
    B_LINEAR_FOREST = 'B_LINEAR_FOREST'
    OTHER = 'OTHER'


@dataclass(frozen=True)
class StructureProfile:
    x: int
    w: int
    b: Tuple[int, ...]
    a: Tuple[int, ...]
    case: StructureCase
    epsilon: float
    large: int                          # vertices with weight > epsilon
    small: int
    weight_w: float
    x_adjacent_w: bool
    b_claw_free: bool
    b_forest: Optional[LinearForest] = field(default=None)

    def to_dict(self) -> dict:
        return {
            'x': self.x, 'w': self.w, 'weight_w': self.weight_w,
            'x_adjacent_w': self.x_adjacent_w,
            'B': list(self.b), 'A': list(self.a),
            'case': self.case.value,
            'B_forest': list(self.b_forest.parts) if self.b_forest else None,
            'B_claw_free': self.b_claw_free,
            'epsilon': self.epsilon, 'L': self.large, 'S': self.small,
        }


def structure_profile(g: Graph, epsilon: float = DEFAULT_EPSILON,
                      tol: float = DEFAULT_TOLERANCE) -> StructureProfile:
    if not 0 < epsilon <= DEFAULT_EPSILON:
        raise ParameterError('epsilon', epsilon, f'must be in (0, {DEFAULT_EPSILON}]')
    if g.n < 2 or not g.is_connected():
        raise DisconnectedError('structure_profile needs a connected graph on >= 2 vertices')
    vec = perron(g, tol).vector
    x = max(range(g.n), key=lambda v: (vec[v], -v))
    w = max((v for v in range(g.n) if v != x), key=lambda v: (vec[v], -v))
    common = g.rows[x] & g.rows[w]
    b = tuple(v for v in range(g.n) if common >> v & 1 and v not in (x, w))
    a = tuple(v for v in range(g.n) if v not in b and v not in (x, w))
    forest = None
    claw_free = True
    if b:
        inner = g.induced(b)
        claw_free = is_claw_free(inner)
        if inner.max_degree() >= 3:
            case = StructureCase.OTHER
        else:
            forest = forest_of(inner)
            case = StructureCase.B_LINEAR_FOREST if forest else StructureCase.CYCLE_IN_B
    else:
        case = StructureCase.B_LINEAR_FOREST
    large = sum(1 for t in vec if t > epsilon)
    return StructureProfile(x, w, b, a, case, epsilon, large, g.n - large,
                            vec[w], g.has_edge(x, w), claw_free, forest)


def verify_structure_dichotomy(g: Graph, forbidden: Graph) -> bool:
    """True iff g is 2K1+C_(n-2) or has two adjacent vertices dominating the rest."""
    if not g.is_connected():
        raise ParameterError('g', graph6.encode(g), 'must be connected')
    if not planar(g):
        raise ParameterError('g', graph6.encode(g), 'must be planar')
    if not is_F_free(g, forbidden):
        raise ParameterError('g', graph6.encode(g), 'must be F-free')
    if g.n >= 5 and are_isomorphic(g, construct(GraphFamilyTag(Family.TWO_APEX_CYCLE, (g.n,)))):
        return True
    # any two vertices of degree n-1 are adjacent and dominate the rest
    return sum(1 for d in g.degrees() if d == g.n - 1) >= 2
