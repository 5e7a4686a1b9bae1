from __future__ import annotations
import enum
from fractions import Fraction
from typing import Sequence, Tuple

from .graph import LinearForest


def fmt_fraction(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def fmt_decimal(r, digits: int = 12) -> str:
    return f"{float(r):.{digits}f}"


def fmt_interval(iv: Tuple[Fraction, Fraction], digits: int = 12) -> str:
    return f"[{fmt_decimal(iv[0], digits)}, {fmt_decimal(iv[1], digits)}]"


def fmt_degree_sequence(seq: Sequence[int]) -> str:
    return '(' + ','.join(str(d) for d in seq) + ')'


def fmt_seconds(seconds: float) -> str:
    if seconds < 1:
        return f"{seconds * 1000:.0f}ms"
    if seconds < 60:
        return f"{seconds:.1f}s"
    mins, secs = divmod(int(seconds), 60)
    return f"{mins}m {secs}s"


def json_default(obj):
    """``json.dumps`` hook: rationals keep their exact form next to a decimal."""
    if isinstance(obj, Fraction):
        return {'num': obj.numerator, 'den': obj.denominator,
                'decimal': fmt_decimal(obj, 17)}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, LinearForest):
        return list(obj.parts)
    return str(obj)
