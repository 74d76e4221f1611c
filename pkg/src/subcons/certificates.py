"""Ingredients of the guarantee certificates: harmonic factors and extremal cardinalities.

``K_g``, ``K_f`` and ``k_f`` are exact when the function is modular (by
sorting) or the ground set is small (by enumeration). Otherwise they are
replaced by bounds on the conservative side of every formula that uses them
and the certificate is flagged ``estimated``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exact import max_card_below, max_card_within, min_maximal_card
from .oracles import FunctionOracle
from .properties import value_table
from .sets import TOL

#: Largest ground set for which extremal cardinalities are enumerated.
EXACT_LIMIT = 12
#: Stopping slack of the ln-based harmonic bound for non-integral coverage.
EPS_STOP = 1e-9


@dataclass(frozen=True)
class Quantity:
    """A certificate ingredient and whether it is exact."""

    value: float
    exact: bool = True


def harmonic(d: int) -> float:
    """``H(d) = sum_{i=1}^d 1/i`` (``H(0) = 0``)."""
    total = 0.0
    for i in range(1, int(d) + 1):
        total += 1.0 / i
    return total


def _near_int(x: float) -> bool:
    return abs(x - round(x)) <= TOL


def is_integral(oracle: FunctionOracle) -> bool:
    """Integrality test on the singletons and on ``V`` (the only values inspected)."""
    vals = list(oracle.singletons()) + [oracle._value(oracle.full)]
    return all(_near_int(v) for v in vals)


def harmonic_factor(g: FunctionOracle) -> tuple[float, tuple[str, ...]]:
    """``H_g`` for the greedy cover guarantee, with flags."""
    if is_integral(g):
        return harmonic(round(float(g.singletons().max()))), ()
    top = g._value(g.full)
    return 1.0 + math.log(max(top, EPS_STOP) / EPS_STOP), ("non-integral",)


def _tail_gains(oracle: FunctionOracle) -> np.ndarray:
    full = oracle.full
    top = oracle._value(full)
    return np.array([top - oracle._value(full & ~(1 << j)) for j in range(oracle.n)])


def _prefix_count(values: np.ndarray, limit: float, strict: bool) -> int:
    """Largest ``k`` with the sum of the ``k`` smallest values below ``limit``."""
    total = 0.0
    k = 0
    for v in np.sort(values):
        total += v
        if (total < limit - TOL) if strict else (total <= limit + TOL):
            k += 1
        else:
            break
    return k


def cover_cardinality(g: FunctionOracle, c: float, exact_limit: int = EXACT_LIMIT) -> Quantity:
    """``K_g = 1 + max{|X| : g(X) < c}`` (upper bound when estimated)."""
    w = g.modular_weights()
    if w is not None:
        return Quantity(1 + _prefix_count(w, c, strict=True))
    if g.n <= exact_limit:
        return Quantity(1 + max_card_below(value_table(g), c))
    # g(X) >= sum of tail gains over X, so few-tail-gain sets bound the count
    below = min(_prefix_count(_tail_gains(g), c, strict=True), g.n - 1)
    return Quantity(1 + below, exact=False)


def budget_cardinality(f: FunctionOracle, b: float, exact_limit: int = EXACT_LIMIT) -> Quantity:
    """``K_f = max{|X| : f(X) <= b}`` (upper bound when estimated)."""
    w = f.modular_weights()
    if w is not None:
        return Quantity(_prefix_count(w, b, strict=False))
    if f.n <= exact_limit:
        return Quantity(max_card_within(value_table(f), b))
    return Quantity(_prefix_count(_tail_gains(f), b, strict=False), exact=False)


def maximal_cardinality(f: FunctionOracle, b: float, exact_limit: int = EXACT_LIMIT) -> Quantity:
    """``k_f``: fewest elements of a maximal set within budget (lower bound when estimated)."""
    single = f.singletons()
    if b < single.min() - TOL:
        return Quantity(0)
    if b >= f._value(f.full) - TOL:
        return Quantity(f.n)
    if f.n <= exact_limit:
        return Quantity(min_maximal_card(value_table(f), b))
    # a maximal X has b < f(X + j) <= (|X| + 1) * max_j f(j)
    return Quantity(max(1, math.floor(b / single.max() + TOL)), exact=False)


def issc_factor(K_g: float, H_g: float, kappa_f: float) -> float:
    """``K_g H_g / (1 + (K_g - 1)(1 - kappa_f))``."""
    return K_g * H_g / (1.0 + (K_g - 1.0) * (1.0 - kappa_f))


def curvature_shrink(K_f: float, kappa_f: float) -> float:
    """``(1 + (K_f - 1)(1 - kappa_f)) / K_f``: how far the modular bound may overshoot ``f``."""
    if K_f <= 0:
        return 1.0
    return (1.0 + (K_f - 1.0) * (1.0 - kappa_f)) / K_f


def gr_factor(kappa_g: float, K_f: float, k_f: float) -> float:
    """``(1/kappa_g)(1 - (1 - kappa_g/K_f)^k_f)``; ``k_f/K_f`` in the modular limit."""
    if K_f <= 0:
        return 1.0
    if kappa_g <= 1e-12:
        return min(1.0, k_f / K_f)
    return min(1.0, (1.0 - (1.0 - kappa_g / K_f) ** k_f) / kappa_g)


def ea_reference_factor(n: int, kappa_f: float, H_g: float = 1.0) -> float:
    """``sqrt(n) ln(n) H_g / (1 + (sqrt(n) ln(n) - 1)(1 - kappa_f))`` with constant 1."""
    t = max(1.0, math.sqrt(n) * math.log(max(n, 2)))
    return t * H_g / (1.0 + (t - 1.0) * (1.0 - kappa_f))


ONE_MINUS_INV_E = 1.0 - math.exp(-1.0)
