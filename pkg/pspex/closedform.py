"""Exact spectral radii of the extremal families and exact comparisons.

A radius is either ``p + sqrt(q)`` with rational p, q, or the largest real
root of an integer polynomial. Both carry a rational enclosure narrower
than 2**-INTERVAL_WIDTH_BITS.
"""
from __future__ import annotations
import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Tuple

import sympy as sp

from .config import INTERVAL_WIDTH_BITS, REFINEMENT_LIMIT
from .errors import ParameterError, ParityError, RefinementError, UnsupportedFamilyError
from .graph import Family, GraphFamilyTag, validate_tag

log = logging.getLogger(__name__)

X = sp.Symbol('x')
N = sp.Symbol('n')


class Ordering(enum.Enum):
    LESS = 'LESS'
    EQUAL = 'EQUAL'
    GREATER = 'GREATER'

    @classmethod
    def of_sign(cls, s: int) -> 'Ordering':
        return cls.LESS if s < 0 else cls.GREATER if s > 0 else cls.EQUAL


class RadiusKind(enum.Enum):
    SQRT_AFFINE = 'sqrt-affine'
    ROOT = 'root'


def _fraction(r) -> Fraction:
    r = sp.Rational(r)
    return Fraction(int(r.p), int(r.q))


def _fmt_rational(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f'{r.numerator}/{r.denominator}'


@dataclass(frozen=True)
class ClosedFormRadius:
    kind: RadiusKind
    lo: Fraction
    hi: Fraction
    p: Fraction = Fraction(0)
    q: Fraction = Fraction(0)
    coefficients: Tuple[int, ...] = ()      # descending, for ROOT

    @property
    def value(self) -> float:
        return float((self.lo + self.hi) / 2)

    def polynomial(self) -> sp.Poly:
        if self.kind is RadiusKind.ROOT:
            return sp.Poly(list(self.coefficients), X)
        p, q = sp.Rational(self.p.numerator, self.p.denominator), \
            sp.Rational(self.q.numerator, self.q.denominator)
        return sp.Poly((X - p) ** 2 - q, X).clear_denoms(convert=True)[1]

    def symbolic(self) -> str:
        if self.kind is RadiusKind.ROOT:
            return f'root({sp.Poly(list(self.coefficients), X).as_expr()})'
        radical = f'sqrt({_fmt_rational(self.q)})'
        if self.p == 0:
            return radical
        return f'{_fmt_rational(self.p)}+{radical}'

    def to_dict(self) -> dict:
        out = {'kind': self.kind.value, 'symbolic': self.symbolic(),
               'lo': self.lo, 'hi': self.hi}
        if self.kind is RadiusKind.SQRT_AFFINE:
            out.update(p=self.p, q=self.q)
        else:
            out['coefficients'] = list(self.coefficients)
        return out


def sqrt_affine(p, q) -> ClosedFormRadius:
    p, q = Fraction(p), Fraction(q)
    if q < 0:
        raise ParameterError('q', q, 'radicand must be nonnegative')
    # sqrt(a/b) = sqrt(a*b)/b, bracketed by integer square roots
    a, b = q.numerator, q.denominator
    scale = 1 << (INTERVAL_WIDTH_BITS + 2)
    s = isqrt(a * b * scale * scale)
    lo = p + Fraction(s, b * scale)
    hi = lo if s * s == a * b * scale * scale else p + Fraction(s + 1, b * scale)
    return ClosedFormRadius(RadiusKind.SQRT_AFFINE, lo, hi, p=p, q=q)


def _isolate_largest(poly: sp.Poly) -> Tuple[sp.Rational, sp.Rational]:
    poly = poly.sqf_part()
    intervals = poly.intervals()
    if not intervals:
        raise ParameterError('polynomial', str(poly.as_expr()), 'no real root')
    a, b = max((iv for iv, _ in intervals), key=lambda iv: iv[1])
    if a != b:
        a, b = poly.refine_root(a, b, eps=sp.Rational(1, 2 ** INTERVAL_WIDTH_BITS))
    return sp.Rational(a), sp.Rational(b)


def largest_root(poly: sp.Poly) -> ClosedFormRadius:
    poly = sp.Poly(poly.all_coeffs(), X)
    _, poly = poly.clear_denoms(convert=True)
    _, poly = poly.primitive()
    if poly.LC() < 0:
        poly = -poly
    a, b = _isolate_largest(poly)
    coeffs = tuple(int(c) for c in poly.all_coeffs())
    return ClosedFormRadius(RadiusKind.ROOT, _fraction(a), _fraction(b),
                            coefficients=coeffs)


@lru_cache(maxsize=None)
def near_matching_polynomial() -> sp.Expr:
    """Eliminate the two non-apex weights from the odd-order eigen-equations.

    Apex weight 1, matched vertices c, the lone vertex d:
    ``mu*d = 2``, ``mu*c = c + 2``, ``mu = (n-3)*c + d + 1``.
    """
    c, d = sp.symbols('c d')
    weights = sp.solve([sp.Eq(X * d, 2), sp.Eq(X * c, c + 2)], [c, d], dict=True)[0]
    num, _ = sp.fraction(sp.together((N - 3) * weights[c] + weights[d] + 1 - X))
    return sp.expand(num)


def closed_form(tag: GraphFamilyTag) -> ClosedFormRadius:
    family = tag.family
    if family not in (Family.TWO_APEX_CYCLE, Family.JOIN_K2_CYCLE,
                      Family.JOIN_K2_MATCHING, Family.JOIN_K2_NEAR_MATCHING):
        raise UnsupportedFamilyError(f'no closed form for {tag}')
    if len(tag.params) != 1:
        raise ParameterError(family.value, tag.params, 'expected one parameter n')
    n = tag.params[0]
    if family is Family.JOIN_K2_MATCHING and n % 2:
        raise ParityError('n', n, 'k2-matching needs even n')
    if family is Family.JOIN_K2_NEAR_MATCHING and not n % 2:
        raise ParityError('n', n, 'k2-near-matching needs odd n')
    validate_tag(tag)
    if family is Family.TWO_APEX_CYCLE:
        return sqrt_affine(1, 2 * n - 3)
    if family is Family.JOIN_K2_CYCLE:
        return sqrt_affine(Fraction(3, 2), 2 * n - Fraction(15, 4))
    if family is Family.JOIN_K2_MATCHING:
        return sqrt_affine(1, 2 * n - 4)
    return largest_root(sp.Poly(near_matching_polynomial().subs(N, n), X))


# ── Exact comparison ────────────────────────────────────────────────────────

def _sign_radical_sum(r: Fraction, t: Fraction) -> int:
    """sign(r + sqrt(t)) for t >= 0."""
    if r >= 0:
        return 0 if r == 0 and t == 0 else 1
    diff = t - r * r
    return (diff > 0) - (diff < 0)


def _sign_sqrt_difference(a: Fraction, b: Fraction, c: Fraction) -> int:
    """sign(a + sqrt(b) - sqrt(c)) for b, c >= 0, by isolating and squaring."""
    s = (b > c) - (b < c)            # sign(sqrt(b) - sqrt(c))
    sa = (a > 0) - (a < 0)
    if sa == 0 or s == 0 or sa == s:
        return sa or s
    # opposite signs: compare a**2 with (sqrt(b) - sqrt(c))**2 = b + c - 2*sqrt(b*c)
    bigger = _sign_radical_sum(a * a - b - c, 4 * b * c)
    if bigger > 0:
        return sa
    if bigger < 0:
        return s
    return 0


def _narrow(poly: sp.Poly, a, b):
    if a == b:
        return a, b
    return tuple(sp.Rational(v) for v in poly.refine_root(a, b, eps=(b - a) / 4))


def _same_rational_root(r, poly: sp.Poly, a, b) -> bool:
    return a <= r <= b and poly.eval(r) == 0


def compare_roots(pa: sp.Poly, ia, pb: sp.Poly, ib) -> Ordering:
    """Order two real algebraic numbers given by isolating intervals."""
    pa, pb = pa.sqf_part(), pb.sqf_part()
    a0, a1 = (sp.Rational(str(v)) for v in ia)
    b0, b1 = (sp.Rational(str(v)) for v in ib)
    common = pa.gcd(pb)
    for _ in range(REFINEMENT_LIMIT):
        if a1 < b0:
            return Ordering.LESS
        if b1 < a0:
            return Ordering.GREATER
        if a0 == a1 and _same_rational_root(a0, pb, b0, b1):
            return Ordering.EQUAL
        if b0 == b1 and _same_rational_root(b0, pa, a0, a1):
            return Ordering.EQUAL
        if common.degree() > 0 and a0 < a1 and b0 < b1:
            if (common.count_roots(a0, a1) and common.count_roots(b0, b1)
                    and common.count_roots(min(a0, b0), max(a1, b1)) == 1):
                log.debug('equal roots through common factor %s', common.as_expr())
                return Ordering.EQUAL
        a0, a1 = _narrow(pa, a0, a1)
        b0, b1 = _narrow(pb, b0, b1)
    raise RefinementError(f'could not separate roots of {pa.as_expr()} and {pb.as_expr()}')


def compare_radii(a: ClosedFormRadius, b: ClosedFormRadius) -> Ordering:
    if a.kind is RadiusKind.SQRT_AFFINE and b.kind is RadiusKind.SQRT_AFFINE:
        return Ordering.of_sign(_sign_sqrt_difference(a.p - b.p, a.q, b.q))
    return compare_roots(a.polynomial(), (a.lo, a.hi), b.polynomial(), (b.lo, b.hi))
