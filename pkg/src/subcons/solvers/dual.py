"""Set cover through the knapsack greedy (the dual route)."""

from __future__ import annotations

from ..certificates import ONE_MINUS_INV_E
from ..oracles import FunctionOracle
from ..report import GuaranteeCert, SolveReport, make_report
from ..transforms import EPS, InnerSolver, scsc_via_scsk_linear
from ._common import check_pair, modular_cost
from .greedy import HALF_ONE_MINUS_INV_E, Enumeration, sk_greedy


def ssc_dual_greedy(f_mod, g: FunctionOracle, c: float, eps: float = EPS,
                    enumeration: Enumeration = "none", *, f: FunctionOracle | None = None) -> SolveReport:
    """Grow the budget of the knapsack greedy until it covers ``rho c``.

    Returns a ``[(1 + eps), rho]`` bicriteria cover, ``rho`` being the knapsack
    greedy's factor.
    """
    _, _, f_rep = modular_cost(f_mod)
    f = f_rep if f is None else f
    check_pair(f, g)

    def solve(b: float) -> SolveReport:
        return sk_greedy(f_mod, g, b, enumeration, f=f)

    rho = ONE_MINUS_INV_E if enumeration == "triples" else HALF_ONE_MINUS_INV_E
    inner = InnerSolver(solve, 1.0, rho, "sk_greedy")
    rep = scsc_via_scsk_linear(inner, f_rep, g, c, eps)
    cert = GuaranteeCert("ssc_dual_greedy", rep.certificate.sigma, rep.certificate.rho,
                         rep.certificate.formula, rep.certificate.ingredients)
    return make_report("ssc_dual_greedy", "scsc", f, g, c, rep.solution.bits, cert,
                       iterations=rep.iterations, trace=rep.trace)
