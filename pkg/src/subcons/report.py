"""Solver outputs: the chosen set, its values, and the guarantee it comes with."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Literal

from .oracles import FunctionOracle
from .sets import TOL, SubsetState

Problem = Literal["scsc", "scsk"]


@dataclass(frozen=True)
class GuaranteeCert:
    """Bicriteria certificate ``[sigma, rho]``.

    ``sigma >= 1`` is the cost-side factor (objective factor for cover
    problems, budget violation for knapsack problems) and ``rho <= 1`` the
    coverage-side factor.
    """

    algorithm: str
    sigma: float = 1.0
    rho: float = 1.0
    formula: str = ""
    ingredients: dict[str, Any] = field(default_factory=dict)
    flags: tuple[str, ...] = ()

    def as_dict(self) -> dict[str, Any]:
        return {
            "algorithm": self.algorithm,
            "sigma": self.sigma,
            "rho": self.rho,
            "formula": self.formula,
            "ingredients": dict(self.ingredients),
            "flags": list(self.flags),
        }


@dataclass(frozen=True)
class TraceEntry:
    surrogate: str
    f_value: float
    g_value: float
    accepted: bool = True


@dataclass(frozen=True)
class SolveReport:
    algorithm: str
    problem: Problem
    bound: float
    solution: SubsetState
    f_value: float
    g_value: float
    feasible: bool
    iterations: int
    certificate: GuaranteeCert
    trace: tuple[TraceEntry, ...] = ()
    tolerance: float = TOL

    def as_dict(self) -> dict[str, Any]:
        return {
            "algorithm": self.algorithm,
            "problem": self.problem,
            "bound": self.bound,
            "solution": self.solution.elements(),
            "f_value": self.f_value,
            "g_value": self.g_value,
            "feasible": self.feasible,
            "iterations": self.iterations,
            "tolerance": self.tolerance,
            "certificate": self.certificate.as_dict(),
            "trace": [
                {"surrogate": t.surrogate, "f_value": t.f_value, "g_value": t.g_value, "accepted": t.accepted}
                for t in self.trace
            ],
        }


def make_report(
    algorithm: str,
    problem: Problem,
    f: FunctionOracle,
    g: FunctionOracle,
    bound: float,
    bits: int,
    certificate: GuaranteeCert,
    *,
    iterations: int = 1,
    trace=(),
) -> SolveReport:
    """Build a report, recomputing both objective values from scratch."""
    fv = f._value(bits)
    gv = g._value(bits)
    if problem == "scsc":
        feasible = gv >= bound - TOL
    else:
        feasible = fv <= bound + TOL
    return SolveReport(
        algorithm=algorithm,
        problem=problem,
        bound=float(bound),
        solution=SubsetState(bits),
        f_value=fv,
        g_value=gv,
        feasible=bool(feasible),
        iterations=iterations,
        certificate=certificate,
        trace=tuple(trace),
    )
