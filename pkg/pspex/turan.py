"""Extremal numbers of linear forests among linear forests.

An h-free linear forest never has a part of order >= |h|, and whether it
contains h depends only on its len(h) largest parts. So the optimum is a
choice of those top parts plus as few further parts, each no longer than
the smallest top part, as fill the rest.
"""
from __future__ import annotations
import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

from .config import DEFAULT_PI_HORIZON, MAX_VERTICES, PI_CLEAN_PERIODS
from .errors import EdgelessForestError, ParameterError
from .graph import LinearForest
from .patterns import forest_contains, is_H_maximal

log = logging.getLogger(__name__)

Parts = Tuple[int, ...]


def _require_edge(h: LinearForest) -> None:
    if h.edges == 0:
        raise EdgelessForestError(str(h))


def partitions(n: int, max_part: Optional[int] = None,
               max_len: Optional[int] = None) -> Iterator[Parts]:
    """Partitions of ``n`` as nonincreasing tuples, largest first."""
    max_part = n if max_part is None else min(max_part, n)
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first,
                               None if max_len is None else max_len - 1):
            yield (first,) + rest


@lru_cache(maxsize=256)
def _free_tops(h: LinearForest) -> Tuple[Parts, ...]:
    k, cap = len(h), h.n - 1
    out: List[Parts] = []

    def extend(prefix: Parts, bound: int) -> None:
        if len(prefix) == k:
            out.append(prefix)
            return
        for s in range(bound, 0, -1):
            cand = prefix + (s,)
            if not forest_contains(LinearForest(cand), h):
                extend(cand, s)

    if cap >= 1:
        extend((), cap)
    log.debug('%s: %d h-free top signatures', h, len(out))
    return tuple(out)


def exf(n: int, h: LinearForest) -> Tuple[int, LinearForest]:
    """Max edges of an n-vertex h-free linear forest, with a witness.

    A forest with c parts has n - c edges, so the search minimises c.
    Forests with fewer than len(h) parts are enumerated outright. Any other
    forest is its top signature (its len(h) largest parts, which alone
    decide whether h fits) plus further parts no longer than the smallest
    top part s. Given the signature, the r leftover vertices need at least
    ceil(r / s) further parts, and s, ..., s, r mod s reaches that bound
    without changing the signature. So the memoised table over
    (n, signature) reduces to one fill per h-free signature.

    Among optimal forests the witness has the lexicographically largest
    sorted part list.
    """
    _require_edge(h)
    if not 1 <= n <= MAX_VERTICES:
        raise ParameterError('n', n, f'must be in 1..{MAX_VERTICES}')
    best: Optional[Parts] = None

    def consider(parts: Parts) -> None:
        nonlocal best
        if best is None or (-len(parts), parts) > (-len(best), best):
            best = parts

    for top in _free_tops(h):
        rest = n - sum(top)
        if rest < 0:
            continue
        smallest = top[-1]
        q, r = divmod(rest, smallest)
        consider(top + (smallest,) * q + ((r,) if r else ()))
    for parts in partitions(n, h.n - 1, len(h) - 1):
        if not forest_contains(LinearForest(parts), h):
            consider(parts)
    witness = LinearForest(best)
    return witness.edges, witness


@dataclass(frozen=True)
class TuranRow:
    n: int
    value: int
    witness: LinearForest


@dataclass(frozen=True)
class TuranTable:
    h: LinearForest
    rows: Tuple[TuranRow, ...]

    def to_dict(self) -> dict:
        return {
            'h': list(self.h.parts),
            'rows': [{'n': r.n, 'exf': r.value, 'witness': list(r.witness.parts)}
                     for r in self.rows],
        }


def turan_table(h: LinearForest, n_max: int, n_min: int = 1) -> TuranTable:
    if n_min > n_max:
        raise ParameterError('n_min', n_min, f'exceeds n_max={n_max}')
    rows = []
    for n in range(n_min, n_max + 1):
        value, witness = exf(n, h)
        rows.append(TuranRow(n, value, witness))
    return TuranTable(h, tuple(rows))


# ── The limit pi(h) ─────────────────────────────────────────────────────────

class Trichotomy(enum.Enum):
    BELOW_HALF = 'BELOW_HALF'
    EQUAL_HALF = 'EQUAL_HALF'
    ABOVE_HALF = 'ABOVE_HALF'
    UNCERTIFIED = 'UNCERTIFIED'


HALF = Fraction(1, 2)


@dataclass(frozen=True)
class PiVerdict:
    lower: Fraction
    upper: Fraction
    trichotomy: Trichotomy
    value: Optional[Fraction] = None
    period: Optional[int] = None
    horizon: int = DEFAULT_PI_HORIZON

    @property
    def certified(self) -> bool:
        return self.value is not None

    def to_dict(self) -> dict:
        return {
            'value': self.value,
            'lower': self.lower,
            'upper': self.upper,
            'trichotomy': self.trichotomy.value,
            'period': self.period,
            'horizon': self.horizon,
        }


def _trichotomy(value: Fraction) -> Trichotomy:
    if value < HALF:
        return Trichotomy.BELOW_HALF
    if value > HALF:
        return Trichotomy.ABOVE_HALF
    return Trichotomy.EQUAL_HALF


def pi(h: LinearForest, horizon: int = DEFAULT_PI_HORIZON) -> PiVerdict:
    """Limit of exf(n, h)/n, certified when the tail is arithmetic.

    The tail is n in [horizon//2, horizon]. A period T with slope D/T is
    accepted when exf(n + T) - exf(n) = D for every n of the tail with
    n + T <= horizon, and those n cover at least PI_CLEAN_PERIODS periods.
    The smallest such T wins.
    """
    _require_edge(h)
    if not 2 <= horizon <= MAX_VERTICES:
        raise ParameterError('horizon', horizon, f'must be in 2..{MAX_VERTICES}')
    values = [0] + [exf(n, h)[0] for n in range(1, horizon + 1)]
    start = max(1, horizon // 2)
    period = 1
    while PI_CLEAN_PERIODS * period <= horizon - period - start + 1:
        steps = {values[n + period] - values[n] for n in range(start, horizon - period + 1)}
        if len(steps) == 1:
            value = Fraction(steps.pop(), period)
            log.debug('pi(%s): period %d, slope %s', h, period, value)
            return PiVerdict(value, value, _trichotomy(value), value, period, horizon)
        period += 1
    tail = [Fraction(values[n], n) for n in range(horizon // 2, horizon + 1)]
    log.info('pi(%s): no period up to horizon %d', h, horizon)
    return PiVerdict(min(tail), max(tail), Trichotomy.UNCERTIFIED, horizon=horizon)


def hk_construction(n: int, k: int) -> LinearForest:
    """floor(n/(k-1)) copies of P_{k-1} plus one shorter path for the rest."""
    if k < 4:
        raise ParameterError('k', k, 'must be >= 4')
    if n < k - 1:
        raise ParameterError('n', n, f'must be >= k-1 = {k - 1}')
    q, r = divmod(n, k - 1)
    return LinearForest((k - 1,) * q + ((r,) if r else ()))


def maximal_forests(n: int, h: LinearForest) -> List[LinearForest]:
    """Every h-maximal linear forest on n vertices, largest parts first."""
    _require_edge(h)
    if not 1 <= n <= MAX_VERTICES:
        raise ParameterError('n', n, f'must be in 1..{MAX_VERTICES}')
    return [LinearForest(p) for p in partitions(n, h.n - 1)
            if is_H_maximal(LinearForest(p), h)]


# ── Predictions ─────────────────────────────────────────────────────────────

class Outcome(enum.Enum):
    TWO_APEX_CYCLE = 'two-apex-cycle'
    JOIN_K2_MAXIMAL = 'k2-join-maximal'
    JOIN_K2_PATH = 'k2-path'
    OPEN = 'open'
    UNCERTIFIED = 'uncertified'


@dataclass(frozen=True)
class Prediction:
    outcome: Outcome
    reason: str
    h: Optional[LinearForest] = None
    pi: Optional[PiVerdict] = field(default=None, compare=False)

    def describe(self) -> str:
        if self.outcome is Outcome.TWO_APEX_CYCLE:
            return '{2K1+C_(n-2)}'
        if self.outcome is Outcome.JOIN_K2_MAXIMAL:
            return f"{{K2+H' : H' {self.h}-maximal}}"
        if self.outcome is Outcome.JOIN_K2_PATH:
            return '{K2+P_(n-2)}'
        return self.outcome.value.upper()

    def to_dict(self) -> dict:
        return {
            'outcome': self.outcome.value,
            'describe': self.describe(),
            'reason': self.reason,
            'h': list(self.h.parts) if self.h else None,
            'pi': self.pi.to_dict() if self.pi else None,
        }


def classify_spex(h: LinearForest, horizon: int = DEFAULT_PI_HORIZON) -> Prediction:
    verdict = pi(h, horizon)
    t = verdict.trichotomy
    if t is Trichotomy.BELOW_HALF:
        return Prediction(Outcome.TWO_APEX_CYCLE, f'pi({h}) = {verdict.value} < 1/2', h, verdict)
    if t is Trichotomy.ABOVE_HALF:
        return Prediction(Outcome.JOIN_K2_MAXIMAL, f'pi({h}) = {verdict.value} > 1/2', h, verdict)
    if t is Trichotomy.EQUAL_HALF:
        if h.parts == (3,):
            return Prediction(Outcome.TWO_APEX_CYCLE, 'h is a single P3', h, verdict)
        return Prediction(Outcome.OPEN, f'pi({h}) = 1/2 and h is not P3', h, verdict)
    return Prediction(Outcome.UNCERTIFIED,
                      f'no period of exf(n, {h}) found up to n = {verdict.horizon}', h, verdict)
