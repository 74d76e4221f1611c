"""Algorithm registry shared by the CLI commands."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..errors import ParameterError
from ..exact import ExactReferee
from ..oracles import FunctionOracle
from ..report import SolveReport
from ..solvers import eask, eask_c, eassc, eassc_c, gr, isk, issc, sk_greedy, ssc_dual_greedy, ssc_greedy
from ..transforms import EPS


@dataclass(frozen=True)
class SolverOptions:
    eps: float = EPS
    max_iters: int = 50
    enumeration: str = "none"
    bound_variant: str = "m2"


Runner = Callable[[FunctionOracle, FunctionOracle, float, SolverOptions], SolveReport]

SCSK: dict[str, Runner] = {
    "gr": lambda f, g, b, o: gr(f, g, b),
    "isk": lambda f, g, b, o: isk(f, g, b, o.bound_variant, o.max_iters, "feasible", o.enumeration),
    "isk_type1": lambda f, g, b, o: isk(f, g, b, o.bound_variant, o.max_iters, "type1", o.enumeration),
    "eask": lambda f, g, b, o: eask(f, g, b, eps=o.eps, enumeration=o.enumeration),
    "eask_c": lambda f, g, b, o: eask_c(f, g, b, enumeration=o.enumeration),
    "sk_greedy": lambda f, g, b, o: sk_greedy(f, g, b, o.enumeration),
    "brute_force": lambda f, g, b, o: ExactReferee(f, g).scsk(b),
}

SCSC: dict[str, Runner] = {
    "ssc_greedy": lambda f, g, c, o: ssc_greedy(f, g, c),
    "ssc_dual_greedy": lambda f, g, c, o: ssc_dual_greedy(f, g, c, o.eps, o.enumeration),
    "issc": lambda f, g, c, o: issc(f, g, c, o.bound_variant, o.max_iters),
    "eassc": lambda f, g, c, o: eassc(f, g, c),
    "eassc_c": lambda f, g, c, o: eassc_c(f, g, c),
    "brute_force": lambda f, g, c, o: ExactReferee(f, g).scsc(c),
}

REGISTRY = {"scsk": SCSK, "scsc": SCSC}


def default_algorithms(problem: str, f: FunctionOracle) -> list[str]:
    """Every algorithm applicable to the instance, brute force only when it is cheap."""
    modular = f.modular_weights() is not None
    if problem == "scsk":
        algos = ["gr", "isk", "eask"] if not modular else ["gr", "isk", "sk_greedy"]
    else:
        algos = ["issc", "eassc"] if not modular else ["issc", "ssc_greedy", "ssc_dual_greedy"]
    if f.n <= 16:
        algos.append("brute_force")
    return algos


def run(tag: str, problem: str, f: FunctionOracle, g: FunctionOracle, bound: float,
        opts: SolverOptions) -> SolveReport:
    try:
        runner = REGISTRY[problem][tag]
    except KeyError:
        raise ParameterError(f"unknown {problem} algorithm {tag!r}; choose from {sorted(REGISTRY[problem])}") from None
    return runner(f, g, bound, opts)
