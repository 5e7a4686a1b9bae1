"""Exception hierarchy shared by the library and the CLI.

Library code raises; only ``cli.main`` turns these into exit statuses.
"""
from __future__ import annotations
from typing import Optional


class SpexError(Exception):
    pass


class UsageError(SpexError):
    """Bad command-line input detected after argparse (exit status 2)."""


class ParameterError(SpexError, ValueError):
    def __init__(self, param: str, value=None, reason: str = ''):
        msg = f"bad parameter {param}={value!r}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)
        self.param = param
        self.value = value
        self.reason = reason


class CapacityError(SpexError):
    def __init__(self, n: int, limit: int):
        super().__init__(f"{n} vertices exceeds the {limit}-vertex capacity")
        self.n = n
        self.limit = limit


class Graph6Error(SpexError, ValueError):
    def __init__(self, offset: int, reason: str):
        super().__init__(f"malformed graph6 at byte {offset}: {reason}")
        self.offset = offset
        self.reason = reason


class SizeLimitError(SpexError):
    def __init__(self, n: int, limit: int, what: str = 'exact search'):
        super().__init__(f"{what} is limited to {limit} vertices (got {n})")
        self.n = n
        self.limit = limit


class ConvergenceError(SpexError, ArithmeticError):
    def __init__(self, iterations: int, residual: float):
        super().__init__(
            f"power iteration did not converge after {iterations} iterations "
            f"(residual {residual:.3e})")
        self.iterations = iterations
        self.residual = residual


class DisconnectedError(SpexError):
    pass


class UnsupportedFamilyError(SpexError):
    pass


class ParityError(ParameterError):
    pass


class EdgelessForestError(SpexError, ValueError):
    def __init__(self, forest: str):
        super().__init__(
            f"forest {forest} has no edge: every linear forest contains it, "
            f"so ex^F and pi are not meaningful")
        self.forest = forest


class SearchCapError(SpexError):
    def __init__(self, n: int, cap: int, override: Optional[int] = None):
        hint = (f" (pass --allow-large to raise the cap to {override})"
                if override and n <= override else '')
        super().__init__(f"n={n} is above the enumeration cap {cap}{hint}")
        self.n = n
        self.cap = cap


class RefinementError(SpexError, ArithmeticError):
    """Exact comparison could not separate two algebraic numbers."""
