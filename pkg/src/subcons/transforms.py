"""Bicriteria conversions between submodular cover (SCSC) and knapsack (SCSK).

A cover solver that returns ``X`` with ``g(X) >= rho c`` and
``f(X) <= sigma f(OPT_c)`` becomes a knapsack solver by searching over the
cover level ``c``; a knapsack solver becomes a cover solver by searching over
the budget ``b``. Linear searches move geometrically by ``1 -/+ eps``;
binary searches bisect and become exact when the searched function is
integer valued.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ParameterError, SearchExhaustedError
from .exact import ExactReferee
from .oracles import FunctionOracle, Sum, truncate
from .report import GuaranteeCert, SolveReport, TraceEntry, make_report
from .sets import TOL

EPS = 0.05
#: Probe cap as a multiple of the theoretical probe bound.
CAP_FACTOR = 10


@dataclass(frozen=True)
class BiCriterion:
    sigma: float
    rho: float
    eps: float = EPS

    def __post_init__(self) -> None:
        if not self.sigma >= 1:
            raise ParameterError(f"sigma must be >= 1, got {self.sigma}")
        if not 0 < self.rho <= 1:
            raise ParameterError(f"rho must lie in (0, 1], got {self.rho}")
        if not self.eps > 0:
            raise ParameterError(f"eps must be positive, got {self.eps}")


@dataclass(frozen=True)
class InnerSolver:
    """A cover solver (called with ``c``) or knapsack solver (called with ``b``) and its factors."""

    solve: Callable[[float], SolveReport]
    sigma: float
    rho: float
    name: str = "inner"

    def __post_init__(self) -> None:
        BiCriterion(self.sigma, self.rho)


def exact_cover_solver(f: FunctionOracle, g: FunctionOracle, referee: ExactReferee | None = None) -> InnerSolver:
    """Brute-force SCSC as an inner solver (``sigma = rho = 1``)."""
    ref = referee or ExactReferee(f, g)
    return InnerSolver(ref.scsc, 1.0, 1.0, "brute_force")


def exact_knapsack_solver(f: FunctionOracle, g: FunctionOracle, referee: ExactReferee | None = None) -> InnerSolver:
    """Brute-force SCSK as an inner solver (``sigma = rho = 1``)."""
    ref = referee or ExactReferee(f, g)
    return InnerSolver(ref.scsk, 1.0, 1.0, "brute_force")


def is_integral_pair(oracle: FunctionOracle) -> bool:
    vals = np.append(oracle.singletons(), oracle._value(oracle.full))
    return bool(np.all(np.abs(vals - np.round(vals)) <= TOL))


def linear_cover_probes(g_top: float, g_min: float, eps: float) -> int:
    """``ceil(log_{1/(1-eps)}(g(V) / min_j g(j))) + 1``."""
    return math.ceil(math.log(g_top / g_min) / -math.log1p(-eps) - 1e-12) + 1


def linear_budget_probes(f_top: float, f_min: float, eps: float) -> int:
    """``ceil(log_{1+eps}(f(V) / min_j f(j))) + 1``."""
    return math.ceil(math.log(f_top / f_min) / math.log1p(eps) - 1e-12) + 1


def binary_probes(top: float, low: float, eps: float, integral: bool) -> int:
    """Probe bound of the bisection searches."""
    if integral:
        return max(0, math.ceil(math.log2(top) - 1e-12)) if top > 1 else 0
    return math.ceil(math.log2(2.0 * top / (low * eps))) + 1


def _trace(rep: SolveReport, label: str) -> TraceEntry:
    return TraceEntry(label, rep.f_value, rep.g_value, True)


def _finish(name, problem, f, g, bound, rep, cert, probes, trace) -> SolveReport:
    return make_report(name, problem, f, g, bound, rep.solution.bits, cert, iterations=probes, trace=trace)


def scsk_via_scsc_linear(inner: InnerSolver, f: FunctionOracle, g: FunctionOracle, b: float,
                         eps: float = EPS) -> SolveReport:
    """Shrink the cover level from ``g(V)`` by ``1 - eps`` until the cover fits ``sigma b``."""
    BiCriterion(inner.sigma, inner.rho, eps)
    if not eps < 1:
        raise ParameterError("eps must be below 1 for a shrinking search")
    f_min = float(f.singletons().min())
    if b < f_min - TOL:
        raise ParameterError(f"budget {b!r} below min_j f(j) = {f_min!r}")
    g_top, g_min = g._value(g.full), float(g.singletons().min())
    bound = linear_cover_probes(g_top, g_min, eps)
    c = g_top
    trace = []
    for probe in range(1, CAP_FACTOR * bound + 1):
        rep = inner.solve(c)
        trace.append(_trace(rep, f"c={c!r}"))
        if rep.f_value <= inner.sigma * b + TOL:
            cert = GuaranteeCert(
                f"scsk_via_scsc_linear[{inner.name}]", inner.sigma, (1.0 - eps) * inner.rho, "[(1 - eps) rho, sigma]",
                {"inner_sigma": inner.sigma, "inner_rho": inner.rho, "eps": eps, "c": c,
                 "probe_bound": bound},
            )
            return _finish(cert.algorithm, "scsk", f, g, b, rep, cert, probe, trace)
        c *= 1.0 - eps
    raise SearchExhaustedError(f"no cover level fit the budget within {CAP_FACTOR * bound} probes")


def scsc_via_scsk_linear(inner: InnerSolver, f: FunctionOracle, g: FunctionOracle, c: float,
                         eps: float = EPS) -> SolveReport:
    """Grow the budget from ``min_j f(j)`` by ``1 + eps`` until the knapsack covers ``rho c``."""
    BiCriterion(inner.sigma, inner.rho, eps)
    g_top = g._value(g.full)
    if not 0 < c <= g_top + TOL:
        raise ParameterError(f"cover {c!r} outside (0, g(V) = {g_top!r}]")
    f_top, f_min = f._value(f.full), float(f.singletons().min())
    bound = linear_budget_probes(f_top, f_min, eps)
    b = f_min
    trace = []
    for probe in range(1, CAP_FACTOR * bound + 1):
        rep = inner.solve(b)
        trace.append(_trace(rep, f"b={b!r}"))
        if rep.g_value >= inner.rho * c - TOL:
            cert = GuaranteeCert(
                f"scsc_via_scsk_linear[{inner.name}]", (1.0 + eps) * inner.sigma, inner.rho, "[(1 + eps) sigma, rho]",
                {"inner_sigma": inner.sigma, "inner_rho": inner.rho, "eps": eps, "b": b,
                 "probe_bound": bound},
            )
            return _finish(cert.algorithm, "scsc", f, g, c, rep, cert, probe, trace)
        b *= 1.0 + eps
    raise SearchExhaustedError(f"no budget reached the cover within {CAP_FACTOR * bound} probes")


def scsk_via_scsc_binary(inner: InnerSolver, f: FunctionOracle, g: FunctionOracle, b: float,
                         eps: float = EPS, integral: bool | None = None) -> SolveReport:
    """Bisect the cover level between ``min_j g(j)`` (fits) and a level that does not fit."""
    BiCriterion(inner.sigma, inner.rho, eps)
    single_f = f.singletons()
    if b < single_f.min() - TOL:
        raise ParameterError(f"budget {b!r} below min_j f(j) = {single_f.min()!r}")
    g_top, g_min = g._value(g.full), float(g.singletons().min())
    integral = is_integral_pair(g) if integral is None else integral
    bound = binary_probes(g_top, g_min, eps, integral)
    cap = CAP_FACTOR * max(bound, 1)
    limit = inner.sigma * b + TOL

    # the cheapest singleton covers min_j g(j) within the budget, no probe needed
    lo = round(g_min) if integral else g_min
    lo_bits = 1 << int(np.argmin(single_f))
    lo_rep = None
    trace = []
    probes = 0

    def probe(level: float) -> SolveReport:
        nonlocal probes
        probes += 1
        if probes > cap:
            raise SearchExhaustedError(f"binary search exceeded {cap} probes")
        rep = inner.solve(level)
        trace.append(_trace(rep, f"c={level!r}"))
        return rep

    if g_top - g_min <= TOL:
        pass  # every nonempty set covers g(V): the cheapest singleton is optimal
    elif integral:
        hi = round(g_top) + 1  # unreachable level: nothing fits it
        while hi - lo > 1:
            mid = (lo + hi) // 2
            rep = probe(mid)
            if rep.f_value <= limit:
                lo, lo_rep = mid, rep
            else:
                hi = mid
            assert lo < hi
    else:
        hi = g_top
        rep = probe(hi)
        if rep.f_value <= limit:
            lo, lo_rep = hi, rep
        else:
            while hi - lo >= eps * hi:
                mid = 0.5 * (lo + hi)
                rep = probe(mid)
                if rep.f_value <= limit:
                    lo, lo_rep = mid, rep
                else:
                    hi = mid
                assert lo < hi
    rho = inner.rho if integral else (1.0 - eps) * inner.rho
    assert lo_rep is None or lo_rep.f_value <= limit
    bits = lo_bits if lo_rep is None else lo_rep.solution.bits
    cert = GuaranteeCert(
        f"scsk_via_scsc_binary[{inner.name}]", inner.sigma, rho,
        "[rho, sigma]" if integral else "[(1 - eps) rho, sigma]",
        {"inner_sigma": inner.sigma, "inner_rho": inner.rho, "eps": eps, "integral": integral,
         "c": lo, "probe_bound": bound},
    )
    return make_report(cert.algorithm, "scsk", f, g, b, bits, cert, iterations=probes, trace=trace)


def scsc_via_scsk_binary(inner: InnerSolver, f: FunctionOracle, g: FunctionOracle, c: float,
                         eps: float = EPS, integral: bool | None = None) -> SolveReport:
    """Bisect the budget between a level that does not cover ``rho c`` and ``f(V)`` (covers)."""
    BiCriterion(inner.sigma, inner.rho, eps)
    g_top = g._value(g.full)
    if not 0 < c <= g_top + TOL:
        raise ParameterError(f"cover {c!r} outside (0, g(V) = {g_top!r}]")
    f_top, f_min = f._value(f.full), float(f.singletons().min())
    integral = is_integral_pair(f) if integral is None else integral
    bound = binary_probes(f_top, f_min, eps, integral)
    cap = CAP_FACTOR * max(bound, 1)
    target = inner.rho * c - TOL

    # V itself covers c at cost f(V), no probe needed
    hi = round(f_top) if integral else f_top
    hi_bits = g.full
    hi_rep = None
    trace = []
    probes = 0

    def probe(level: float) -> SolveReport:
        nonlocal probes
        probes += 1
        if probes > cap:
            raise SearchExhaustedError(f"binary search exceeded {cap} probes")
        rep = inner.solve(level)
        trace.append(_trace(rep, f"b={level!r}"))
        return rep

    if f_top - f_min <= TOL:
        pass  # V costs no more than any nonempty set
    elif integral:
        lo = round(f_min) - 1  # below every nonempty set's cost
        while hi - lo > 1:
            mid = (lo + hi) // 2
            rep = probe(mid)
            if rep.g_value >= target:
                hi, hi_rep = mid, rep
            else:
                lo = mid
            assert lo < hi
    else:
        lo = f_min
        rep = probe(lo)
        if rep.g_value >= target:
            hi, hi_rep = lo, rep
        else:
            while hi - lo >= eps * lo:
                mid = 0.5 * (lo + hi)
                rep = probe(mid)
                if rep.g_value >= target:
                    hi, hi_rep = mid, rep
                else:
                    lo = mid
                assert lo < hi
    sigma = inner.sigma if integral else (1.0 + eps) * inner.sigma
    assert hi_rep is None or hi_rep.g_value >= target
    bits = hi_bits if hi_rep is None else hi_rep.solution.bits
    cert = GuaranteeCert(
        f"scsc_via_scsk_binary[{inner.name}]", sigma, inner.rho,
        "[sigma, rho]" if integral else "[(1 + eps) sigma, rho]",
        {"inner_sigma": inner.sigma, "inner_rho": inner.rho, "eps": eps, "integral": integral,
         "b": hi, "probe_bound": bound},
    )
    return make_report(cert.algorithm, "scsc", f, g, c, bits, cert, iterations=probes, trace=trace)


def combine_covers(oracles: Sequence[FunctionOracle], caps: Sequence[float]) -> FunctionOracle:
    """``sum_i min(g_i, alpha_i)``: all caps are met exactly when the sum reaches its maximum."""
    oracles = list(oracles)
    caps = list(caps)
    if not oracles:
        raise ParameterError("combine_covers needs at least one oracle")
    if len(oracles) != len(caps):
        raise ParameterError("one cap per oracle")
    return Sum([truncate(o, a) for o, a in zip(oracles, caps)])
