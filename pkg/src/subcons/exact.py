"""Exhaustive reference solvers over all ``2**n`` subsets (``n <= 20``).

Ties are broken toward the numerically smallest bitmask, which is what
``numpy.argmin``/``argmax`` return on the value tables.
"""

from __future__ import annotations

import numpy as np

from .errors import InfeasibleError, ParameterError
from .oracles import FunctionOracle
from .properties import value_table
from .report import GuaranteeCert, SolveReport, make_report
from .sets import TOL

BRUTE_FORCE_LIMIT = 20


class ExactReferee:
    """Value tables of an ``(f, g)`` pair, reused across many bound values."""

    def __init__(self, f: FunctionOracle, g: FunctionOracle):
        if f.n != g.n:
            raise ParameterError("f and g must share one ground set")
        if f.n > BRUTE_FORCE_LIMIT:
            raise ParameterError(f"brute force is limited to n <= {BRUTE_FORCE_LIMIT}, got {f.n}")
        self.f = f
        self.g = g
        self.f_table = value_table(f)
        self.g_table = value_table(g)
        self._cards = None

    @property
    def cards(self) -> np.ndarray:
        if self._cards is None:
            self._cards = _cards(self.f.n)
        return self._cards

    def scsc_bits(self, c: float) -> int:
        feasible = self.g_table >= c - TOL
        if not feasible[-1]:
            raise InfeasibleError(f"g(V) = {self.g_table[-1]!r} < c = {c!r}")
        return int(np.argmin(np.where(feasible, self.f_table, np.inf)))

    def scsk_bits(self, b: float) -> int:
        if b < 0:
            raise ParameterError("budget must be non-negative")
        feasible = self.f_table <= b + TOL
        return int(np.argmax(np.where(feasible, self.g_table, -np.inf)))

    def scsc(self, c: float) -> SolveReport:
        bits = self.scsc_bits(c)
        cert = GuaranteeCert("brute_force", 1.0, 1.0, "exact")
        return make_report("brute_force", "scsc", self.f, self.g, c, bits, cert, iterations=1 << self.f.n)

    def scsk(self, b: float) -> SolveReport:
        bits = self.scsk_bits(b)
        cert = GuaranteeCert("brute_force", 1.0, 1.0, "exact")
        return make_report("brute_force", "scsk", self.f, self.g, b, bits, cert, iterations=1 << self.f.n)

    def scsc_value(self, c: float) -> float:
        return float(self.f_table[self.scsc_bits(c)])

    def scsk_value(self, b: float) -> float:
        return float(self.g_table[self.scsk_bits(b)])


def brute_force_scsc(f: FunctionOracle, g: FunctionOracle, c: float) -> SolveReport:
    """Exact ``min f(X) s.t. g(X) >= c``."""
    return ExactReferee(f, g).scsc(c)


def brute_force_scsk(f: FunctionOracle, g: FunctionOracle, b: float) -> SolveReport:
    """Exact ``max g(X) s.t. f(X) <= b``."""
    return ExactReferee(f, g).scsk(b)


def _cards(n: int) -> np.ndarray:
    cards = np.zeros(1 << n, dtype=np.int64)
    for j in range(n):
        cards[1 << j : 1 << (j + 1)] = cards[: 1 << j] + 1
    return cards


def max_card_below(table: np.ndarray, c: float) -> int:
    """``max{|X| : g(X) < c}`` from a value table (``-1`` if no such set)."""
    n = table.size.bit_length() - 1
    below = table < c - TOL
    return int(_cards(n)[below].max()) if below.any() else -1


def max_card_within(table: np.ndarray, b: float) -> int:
    """``max{|X| : f(X) <= b}`` from a value table."""
    n = table.size.bit_length() - 1
    return int(_cards(n)[table <= b + TOL].max())


def min_maximal_card(table: np.ndarray, b: float) -> int:
    """Smallest cardinality of a maximal set in ``{X : f(X) <= b}``."""
    n = table.size.bit_length() - 1
    feasible = table <= b + TOL
    maximal = feasible.copy()
    masks = np.arange(table.size, dtype=np.int64)
    for j in range(n):
        bj = 1 << j
        # adding j to a set without j must break feasibility
        maximal &= ((masks & bj) != 0) | ~feasible[masks | bj]
    return int(_cards(n)[maximal].min())
