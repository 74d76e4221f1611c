"""Solvers that replace the cost ``f`` by its EA-shaped surrogate.

Guarantees are stated relative to the supplied weights: with
``alpha = min f / f^ea`` and ``beta = max f / f^ea`` over nonempty sets, a
solution good for ``f^ea`` loses at most ``beta / alpha`` on ``f``. Both are
measured exhaustively on small ground sets. On larger ones ``alpha >= 1`` is
assumed (it holds for the default weights) and ``beta`` is bounded by
Cauchy-Schwarz.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..bounds import EASurrogate, ea_surrogate, measure_sandwich
from ..certificates import EXACT_LIMIT, ONE_MINUS_INV_E, ea_reference_factor, harmonic_factor, is_integral
from ..errors import ParameterError, PreconditionError
from ..oracles import FunctionOracle
from ..properties import curvature
from ..report import GuaranteeCert, SolveReport, TraceEntry, make_report
from ..sets import TOL
from ..transforms import EPS, InnerSolver, scsk_via_scsc_linear
from ._common import Memo, check_pair
from .greedy import Enumeration, HALF_ONE_MINUS_INV_E, sk_bits, ssc_bits

GRID_SIZE = 32


@dataclass(frozen=True)
class SandwichFactors:
    alpha: float
    beta: float
    flags: tuple[str, ...] = ()

    @property
    def ratio(self) -> float:
        return self.beta / self.alpha


def sandwich_factors(f: FunctionOracle, sur: EASurrogate, exact_limit: int = EXACT_LIMIT) -> SandwichFactors:
    if f.n <= exact_limit:
        s = measure_sandwich(f, sur)
        flags = () if s.lower >= 1.0 - 1e-9 else ("weights-overshoot",)
        return SandwichFactors(s.lower, s.upper, flags)
    # f(X) <= max(f^k(X) / sqrt(w(X)), 1) f^ea(X) and f^k(X) <= sum_{X} f(j)
    w, single = sur.ea_weights, sur.singleton_weights
    if np.any(w <= 0):
        return SandwichFactors(1.0, math.inf, ("estimated", "lower-sandwich-assumed"))
    beta = max(1.0, math.sqrt(float(np.sum(single**2 / w))))
    return SandwichFactors(1.0, beta, ("estimated", "lower-sandwich-assumed"))


def _prepare(f: FunctionOracle, g: FunctionOracle, ea_weights, kappa=None) -> EASurrogate:
    check_pair(f, g)
    if ea_weights is not None and len(ea_weights) != f.n:
        raise ParameterError("one EA weight per element")
    return ea_surrogate(f, ea_weights, kappa)


def root_surrogate(sur: EASurrogate) -> EASurrogate:
    """``sqrt(w(X))``: the surrogate with its modular part dropped."""
    return sur if sur.kappa == 1.0 else EASurrogate(1.0, sur.ea_weights, sur.singleton_weights)


def eassc_c(f: FunctionOracle, g: FunctionOracle, c: float, ea_weights=None, *,
            exact_limit: int = EXACT_LIMIT, surrogate: EASurrogate | None = None,
            sandwich: SandwichFactors | None = None) -> SolveReport:
    """One greedy cover with the modular cost ``w``: minimizes ``sqrt(w(X))`` up to ``sqrt(H_g)``."""
    sur = surrogate or _prepare(f, g, ea_weights)
    bits, steps = ssc_bits(sur.ea_weights, Memo(g), g.n, c, is_integral(g))
    H_g, flags = harmonic_factor(g)
    sw = sandwich or sandwich_factors(f, root_surrogate(sur), exact_limit)
    sigma = math.sqrt(H_g) * sw.ratio
    cert = GuaranteeCert(
        "eassc_c", sigma, 1.0, "sqrt(H_g) * beta / alpha",
        {"H_g": H_g, "alpha": sw.alpha, "beta": sw.beta, "kappa_f": sur.kappa,
         "reference": math.sqrt(H_g) * ea_reference_factor(f.n, 1.0)},
        flags + sw.flags + ("relative to supplied weights",),
    )
    return make_report("eassc_c", "scsc", f, g, c, bits, cert, iterations=steps)


def _mu_grid(kappa: float, w: np.ndarray, size: int) -> tuple[list[float], float]:
    """Tangent slopes ``kappa / (2 sqrt(t))`` for a geometric grid of ``t`` in ``[min w_j, w(V)]``."""
    pos = w[w > 0]
    t_lo, t_hi = float(pos.min()), float(w.sum())
    if size < 2 or t_hi <= t_lo:
        ts = [t_lo]
        r = 1.0
    else:
        r = (t_hi / t_lo) ** (1.0 / (size - 1))
        ts = list(np.geomspace(t_lo, t_hi, size))
    slack = 0.5 * (r**0.25 + r**-0.25)
    return [kappa / (2.0 * math.sqrt(t)) for t in ts], slack


def eassc(f: FunctionOracle, g: FunctionOracle, c: float, ea_weights=None,
          lambda_grid_size: int = GRID_SIZE, *, exact_limit: int = EXACT_LIMIT,
          surrogate: EASurrogate | None = None, sandwich: SandwichFactors | None = None) -> SolveReport:
    """Parametric sweep for ``min f^ea(X) s.t. g(X) >= c``.

    For every slope ``mu`` the greedy cover runs on ``mu w(X) + (1 - kappa) sum_X f(j)``,
    the tangent upper bound of ``f^ea`` at ``w(X) = (kappa / 2 mu)^2``. The
    candidate with the least ``f^ea`` (then the least ``f``) wins. With a
    geometric grid of ratio ``r`` in ``w``, the winner is within
    ``slack = (r^(1/4) + r^(-1/4)) / 2`` times ``H_g`` of the surrogate optimum.
    """
    sur = surrogate or _prepare(f, g, ea_weights)
    if sur.kappa >= 1.0:
        return eassc_c(f, g, c, surrogate=sur, exact_limit=exact_limit, sandwich=sandwich)
    w, single, kappa = sur.ea_weights, sur.singleton_weights, sur.kappa
    mus, slack = _mu_grid(kappa, w, lambda_grid_size)
    flags: tuple[str, ...] = ()
    if np.any(w <= 0):
        flags += ("zero-weights: grid slack not guaranteed",)
    gv = Memo(g)
    integral = is_integral(g)
    costs = [(f"mu=0", (1.0 - kappa) * single)]
    costs += [(f"mu={mu!r}", mu * w + (1.0 - kappa) * single) for mu in mus]
    costs.append(("mu=inf", w))
    best = None
    trace = []
    seen: dict[int, tuple[float, float]] = {}
    for label, cost in costs:
        bits, _ = ssc_bits(cost, gv, g.n, c, integral)
        if bits not in seen:
            seen[bits] = (sur._value(bits), f._value(bits))
        key = seen[bits]
        better = best is None or key[0] < best[0][0] - TOL or (
            abs(key[0] - best[0][0]) <= TOL and key[1] < best[0][1] - TOL)
        trace.append(TraceEntry(label, key[1], gv(bits), better))
        if better:
            best = (key, bits)

    H_g, hflags = harmonic_factor(g)
    sw = sandwich or sandwich_factors(f, sur, exact_limit)
    sigma = H_g * slack * sw.ratio
    cert = GuaranteeCert(
        "eassc", sigma, 1.0, "H_g * slack * beta / alpha",
        {"H_g": H_g, "slack": slack, "alpha": sw.alpha, "beta": sw.beta, "kappa_f": kappa,
         "grid_size": len(mus), "reference": ea_reference_factor(f.n, kappa, H_g)},
        hflags + flags + sw.flags + ("relative to supplied weights",),
    )
    return make_report("eassc", "scsc", f, g, c, best[1], cert, iterations=len(costs), trace=trace)


def eask_c(f: FunctionOracle, g: FunctionOracle, b: float, ea_weights=None,
           enumeration: Enumeration = "none", *, drop_modular: bool = False,
           exact_limit: int = EXACT_LIMIT) -> SolveReport:
    """Knapsack greedy on ``w(X) <= b^2``: the squared form of ``sqrt(w(X)) <= b``."""
    sur = _prepare(f, g, ea_weights)
    if sur.kappa < 1.0 and not drop_modular:
        raise PreconditionError(
            f"curvature {sur.kappa:.6g} < 1: use eask, or pass drop_modular=True to ignore the modular part"
        )
    if b < 0:
        raise ParameterError("budget must be non-negative")
    bits, restarts = sk_bits(sur.ea_weights, Memo(g), g.n, b * b, enumeration)
    sw = sandwich_factors(f, root_surrogate(sur), exact_limit)
    rho = ONE_MINUS_INV_E if enumeration == "triples" else HALF_ONE_MINUS_INV_E
    fv = f._value(bits)
    flags = sw.flags + ("relative to supplied weights",)
    cert = GuaranteeCert(
        "eask_c", max(1.0, sw.beta), rho, "[rho, beta]",
        {"alpha": sw.alpha, "beta": sw.beta, "kappa_f": sur.kappa, "enumeration": enumeration,
         "violation": fv / b if b > 0 else (0.0 if fv == 0 else math.inf),
         "reference": ea_reference_factor(f.n, 1.0)},
        flags,
    )
    return make_report("eask_c", "scsk", f, g, b, bits, cert, iterations=restarts)


def eask(f: FunctionOracle, g: FunctionOracle, b: float, ea_weights=None, eps: float = EPS,
         lambda_grid_size: int = GRID_SIZE, *, enumeration: Enumeration = "none",
         exact_limit: int = EXACT_LIMIT) -> SolveReport:
    """Knapsack through the cover sweep: ``eassc`` inside the shrinking cover-level search.

    The surrogate (and its weights) is built once and shared by every probe.
    Fully curved ``f`` goes to :func:`eask_c` with the given ``enumeration``.
    """
    check_pair(f, g)
    kappa = curvature(f)
    if kappa <= 0:
        raise PreconditionError("f is modular (curvature 0): use sk_greedy directly")
    if kappa >= 1.0:
        return eask_c(f, g, b, ea_weights, enumeration, exact_limit=exact_limit)
    sur = _prepare(f, g, ea_weights, kappa)
    sw = sandwich_factors(f, sur, exact_limit)

    def solve(c: float) -> SolveReport:
        return eassc(f, g, c, surrogate=sur, lambda_grid_size=lambda_grid_size,
                     exact_limit=exact_limit, sandwich=sw)

    _, slack = _mu_grid(kappa, sur.ea_weights, lambda_grid_size)
    sigma = max(1.0, harmonic_factor(g)[0] * slack * sw.ratio)
    inner = InnerSolver(solve, sigma, 1.0, "eassc")
    rep = scsk_via_scsc_linear(inner, f, g, b, eps)
    cert = GuaranteeCert(
        "eask", rep.certificate.sigma, rep.certificate.rho, rep.certificate.formula,
        {**rep.certificate.ingredients, "kappa_f": kappa}, ("relative to supplied weights",),
    )
    return make_report("eask", "scsk", f, g, b, rep.solution.bits, cert,
                       iterations=rep.iterations, trace=rep.trace)
