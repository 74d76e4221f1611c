"""Solvers for a submodular cost: cost-blind greedy and the majorize-minimize iterations."""

from __future__ import annotations

from typing import Literal

from ..bounds import upper_bound
from ..certificates import (
    EXACT_LIMIT,
    ONE_MINUS_INV_E,
    budget_cardinality,
    cover_cardinality,
    curvature_shrink,
    gr_factor,
    harmonic_factor,
    is_integral,
    issc_factor,
    maximal_cardinality,
)
from ..errors import ParameterError
from ..oracles import FunctionOracle
from ..properties import curvature
from ..report import GuaranteeCert, SolveReport, TraceEntry, make_report
from ..sets import TOL
from ._common import Memo, check_pair
from .greedy import HALF_ONE_MINUS_INV_E, Enumeration, sk_bits, ssc_bits

Variant = Literal["m1", "m2"]
IskMode = Literal["feasible", "type1"]

MAX_ITERS = 50


def gr(f: FunctionOracle, g: FunctionOracle, b: float, *, exact_limit: int = EXACT_LIMIT) -> SolveReport:
    """Greedy on ``g`` gains among elements that keep ``f(S + j) <= b``.

    The returned set is maximal within the budget.
    """
    check_pair(f, g)
    if b < 0:
        raise ParameterError("budget must be non-negative")
    fv, gv = Memo(f), Memo(g)
    S = 0
    steps = 0
    while True:
        gs = gv(S)
        best, best_gain = -1, -1.0
        for j in range(g.n):
            if S >> j & 1:
                continue
            T = S | (1 << j)
            if fv(T) > b + TOL:
                continue
            gain = gv(T) - gs
            if gain > best_gain:
                best, best_gain = j, gain
        if best < 0:
            break
        S |= 1 << best
        steps += 1

    kappa_g = curvature(g)
    K_f = budget_cardinality(f, b, exact_limit)
    k_f = maximal_cardinality(f, b, exact_limit)
    rho = gr_factor(kappa_g, K_f.value, k_f.value)
    flags = () if K_f.exact and k_f.exact else ("estimated",)
    cert = GuaranteeCert(
        "gr", 1.0, rho, "(1/kappa_g)(1 - (1 - kappa_g/K_f)^k_f)",
        {"kappa_g": kappa_g, "K_f": K_f.value, "k_f": k_f.value,
         "rho_relaxed": 1.0 / K_f.value if K_f.value > 0 else 1.0},
        flags,
    )
    return make_report("gr", "scsk", f, g, b, S, cert, iterations=steps)


def issc(
    f: FunctionOracle,
    g: FunctionOracle,
    c: float,
    variant: Variant = "m2",
    max_iters: int = MAX_ITERS,
    *,
    exact_limit: int = EXACT_LIMIT,
) -> SolveReport:
    """Iterated greedy cover on modular upper bounds of ``f``, starting at the empty set.

    An iterate replaces the incumbent only if the true cost drops by more than
    the tolerance; otherwise the incumbent is returned.
    """
    check_pair(f, g)
    if max_iters < 1:
        raise ParameterError("max_iters must be at least 1")
    gv = Memo(g)
    integral = is_integral(g)
    X, best_f = 0, None
    trace = []
    it = 0
    for it in range(1, max_iters + 1):
        m = upper_bound(f, X, variant)
        cand, _ = ssc_bits(m.weights, gv, g.n, c, integral)
        fc = f._value(cand)
        improved = best_f is None or fc < best_f - TOL
        trace.append(TraceEntry(m.label, fc, gv(cand), improved))
        if not improved:
            break
        X, best_f = cand, fc

    H_g, flags = harmonic_factor(g)
    kappa_f = curvature(f)
    K_g = cover_cardinality(g, c, exact_limit)
    if not K_g.exact:
        flags += ("estimated",)
    sigma = issc_factor(K_g.value, H_g, kappa_f)
    cert = GuaranteeCert(
        "issc", sigma, 1.0, "K_g H_g / (1 + (K_g - 1)(1 - kappa_f))",
        {"K_g": K_g.value, "H_g": H_g, "kappa_f": kappa_f, "variant": variant}, flags,
    )
    return make_report("issc", "scsc", f, g, c, X, cert, iterations=it, trace=trace)


def isk(
    f: FunctionOracle,
    g: FunctionOracle,
    b: float,
    variant: Variant = "m2",
    max_iters: int = MAX_ITERS,
    mode: IskMode = "feasible",
    enumeration: Enumeration = "none",
    *,
    exact_limit: int = EXACT_LIMIT,
) -> SolveReport:
    """Iterated knapsack greedy on modular upper bounds of ``f`` (an ascent on ``g``).

    ``mode="feasible"`` keeps ``f(X) <= b`` and is guaranteed against the
    optimum at the shrunk budget ``b (1 + (K_f - 1)(1 - kappa_f)) / K_f``.
    ``mode="type1"`` runs at the inflated budget ``b K_f / (1 + (K_f - 1)(1 - kappa_f))``
    and is guaranteed against the optimum at ``b``, overshooting by that factor.
    """
    check_pair(f, g)
    if b < 0:
        raise ParameterError("budget must be non-negative")
    if max_iters < 1:
        raise ParameterError("max_iters must be at least 1")
    if mode not in ("feasible", "type1"):
        raise ParameterError(f"unknown mode {mode!r} (use feasible or type1)")
    kappa_f = curvature(f)
    K_f = budget_cardinality(f, b, exact_limit)
    shrink = curvature_shrink(K_f.value, kappa_f)
    run_budget = b if mode == "feasible" else b / shrink

    gv = Memo(g)
    X, best_g = 0, None
    trace = []
    it = 0
    for it in range(1, max_iters + 1):
        m = upper_bound(f, X, variant)
        cand, _ = sk_bits(m.weights, gv, g.n, run_budget - m.offset, enumeration)
        gc = gv(cand)
        improved = best_g is None or gc > best_g + TOL
        trace.append(TraceEntry(m.label, f._value(cand), gc, improved))
        if not improved:
            break
        X, best_g = cand, gc

    rho = ONE_MINUS_INV_E if enumeration == "triples" else HALF_ONE_MINUS_INV_E
    flags = () if K_f.exact else ("estimated",)
    ingredients = {"K_f": K_f.value, "kappa_f": kappa_f, "variant": variant, "mode": mode,
                   "enumeration": enumeration}
    if mode == "feasible":
        ingredients["shrunk_budget"] = b * shrink
        cert = GuaranteeCert("isk", 1.0, rho, "rho vs optimum at shrunk budget", ingredients, flags)
    else:
        ingredients["run_budget"] = run_budget
        cert = GuaranteeCert("isk", 1.0 / shrink, rho, "[rho, K_f / (1 + (K_f - 1)(1 - kappa_f))]",
                             ingredients, flags)
    return make_report("isk", "scsk", f, g, b, X, cert, iterations=it, trace=trace)
