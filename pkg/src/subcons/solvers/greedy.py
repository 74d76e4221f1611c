"""Greedy solvers for a modular cost: set cover (SSC) and knapsack (SK)."""

from __future__ import annotations

import math
from itertools import combinations
from typing import Callable, Literal

import numpy as np

from ..certificates import ONE_MINUS_INV_E, harmonic_factor, is_integral
from ..errors import InfeasibleError, ParameterError
from ..oracles import FunctionOracle
from ..report import GuaranteeCert, SolveReport, make_report
from ..sets import TOL
from ._common import Memo, check_pair, modular_cost

Enumeration = Literal["none", "triples"]
Values = Callable[[int], float]

HALF_ONE_MINUS_INV_E = 0.5 * ONE_MINUS_INV_E


def ssc_bits(w: np.ndarray, gval: Values, n: int, c: float, integral: bool) -> tuple[int, int]:
    """Greedy cover with gains truncated at the cover level; returns ``(bits, steps)``.

    Each step picks the smallest ``w[j] / (min(g(S + j), c) - min(g(S), c))``
    over elements with a positive truncated gain (ties: smallest index).
    """
    full = (1 << n) - 1
    if gval(full) < c - TOL:
        raise InfeasibleError(f"g(V) = {gval(full)!r} < c = {c!r}")
    # for integral g, g(X) >= c is the same as g(X) >= ceil(c)
    cap = math.ceil(c - TOL) if integral else c
    S = 0
    gs = gval(0)
    steps = 0
    while gs < c - TOL:
        base = min(gs, cap)
        best, best_ratio = -1, math.inf
        for j in range(n):
            if S >> j & 1:
                continue
            gain = min(gval(S | (1 << j)), cap) - base
            if gain <= 0.0:
                continue
            ratio = w[j] / gain
            if ratio < best_ratio:
                best, best_ratio = j, ratio
        if best < 0:
            raise InfeasibleError(f"all gains vanished at g(S) = {gs!r} below c = {c!r}")
        S |= 1 << best
        gs = gval(S)
        steps += 1
    return S, steps


def sk_greedy_from(w: np.ndarray, gval: Values, n: int, budget: float, start: int = 0) -> int:
    """Ratio greedy ``argmax g(j | S) / w[j]`` over elements that still fit, from ``start``."""
    S = start
    spent = 0.0
    for j in range(n):
        if S >> j & 1:
            spent += w[j]
    gs = gval(S)
    while True:
        best, best_ratio = -1, -1.0
        for j in range(n):
            if S >> j & 1 or spent + w[j] > budget + TOL:
                continue
            gain = gval(S | (1 << j)) - gs
            if w[j] > 0:
                ratio = gain / w[j]
            else:
                ratio = math.inf if gain > 0 else 0.0
            if ratio > best_ratio:
                best, best_ratio = j, ratio
        if best < 0:
            return S
        S |= 1 << best
        spent += w[best]
        gs = gval(S)


def sk_bits(w: np.ndarray, gval: Values, n: int, budget: float, enumeration: Enumeration) -> tuple[int, int]:
    """Knapsack greedy in simple or partial-enumeration mode; returns ``(bits, restarts)``."""
    if enumeration == "none":
        best = sk_greedy_from(w, gval, n, budget)
        best_g = gval(best)
        for j in range(n):
            if w[j] <= budget + TOL and gval(1 << j) > best_g:
                best, best_g = 1 << j, gval(1 << j)
        return best, 1
    if enumeration != "triples":
        raise ParameterError(f"unknown enumeration mode {enumeration!r} (use none or triples)")
    best, best_g = 0, gval(0)
    restarts = 0
    # all feasible sets of one or two elements, then greedy from every feasible triple
    for size in (1, 2, 3):
        for combo in combinations(range(n), size):
            if sum(w[j] for j in combo) > budget + TOL:
                continue
            bits = 0
            for j in combo:
                bits |= 1 << j
            if size == 3:
                bits = sk_greedy_from(w, gval, n, budget, bits)
                restarts += 1
            v = gval(bits)
            if v > best_g:
                best, best_g = bits, v
    return best, max(restarts, 1)


def ssc_greedy(f_mod, g: FunctionOracle, c: float, *, f: FunctionOracle | None = None) -> SolveReport:
    """Greedy submodular set cover under a modular cost.

    ``f_mod`` is a modular oracle, a :class:`~subcons.bounds.ModularSurrogate`
    or a weight vector; ``f`` (default: ``f_mod`` itself) is the function the
    report is scored with.
    """
    w, _, f_rep = modular_cost(f_mod)
    f = f_rep if f is None else f
    check_pair(f, g)
    if w.shape[0] != g.n:
        raise ParameterError("cost weights do not match the ground set")
    H_g, flags = harmonic_factor(g)
    bits, steps = ssc_bits(w, Memo(g), g.n, c, is_integral(g))
    cert = GuaranteeCert("ssc_greedy", H_g, 1.0, "H_g", {"H_g": H_g}, flags)
    return make_report("ssc_greedy", "scsc", f, g, c, bits, cert, iterations=steps)


def sk_greedy(
    f_mod, g: FunctionOracle, b: float, enumeration: Enumeration = "none", *, f: FunctionOracle | None = None
) -> SolveReport:
    """Greedy submodular knapsack under a modular (or affine) cost.

    ``enumeration="none"`` returns the better of the ratio greedy and the best
    feasible singleton; ``"triples"`` adds every feasible set of up to two
    elements and a greedy completion of every feasible triple.
    """
    w, offset, f_rep = modular_cost(f_mod)
    f = f_rep if f is None else f
    check_pair(f, g)
    if b < 0:
        raise ParameterError("budget must be non-negative")
    bits, restarts = sk_bits(w, Memo(g), g.n, b - offset, enumeration)
    rho = ONE_MINUS_INV_E if enumeration == "triples" else HALF_ONE_MINUS_INV_E
    formula = "1 - 1/e" if enumeration == "triples" else "(1 - 1/e) / 2"
    cert = GuaranteeCert("sk_greedy", 1.0, rho, formula, {"enumeration": enumeration})
    return make_report("sk_greedy", "scsk", f, g, b, bits, cert, iterations=restarts)
