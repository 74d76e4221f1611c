"""Property checks and certificate checks against brute force for one instance."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import SubconsError
from ..exact import ExactReferee
from ..oracles import FunctionOracle
from ..properties import check_polymatroid, curvature
from ..report import SolveReport
from ..sets import TOL
from .algorithms import SolverOptions, run

VERIFY_LIMIT = 16


@dataclass
class VerifyResult:
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)


def _scsk_algorithms(f: FunctionOracle) -> list[str]:
    kappa = curvature(f)
    algos = ["gr", "isk", "isk_type1"]
    if kappa == 0:
        algos.append("sk_greedy")
    elif kappa >= 1.0:
        algos.append("eask_c")
    else:
        algos.append("eask")
    return algos


def _scsc_algorithms(f: FunctionOracle) -> list[str]:
    algos = ["issc"]
    if f.modular_weights() is not None:
        algos += ["ssc_greedy", "ssc_dual_greedy"]
    else:
        algos.append("eassc")
    return algos


def check_scsk(rep: SolveReport, ref: ExactReferee, f: FunctionOracle, b: float) -> str | None:
    cert = rep.certificate
    if rep.f_value > cert.sigma * b + TOL:
        return f"{rep.algorithm}: f = {rep.f_value!r} > sigma * b = {cert.sigma * b!r}"
    if rep.algorithm == "isk" and cert.ingredients.get("mode") == "feasible":
        ref_budget = cert.ingredients["shrunk_budget"]
    else:
        ref_budget = b
    if "weights-overshoot" in cert.flags:
        return None  # the coverage claim assumes sqrt(w) <= f
    opt = ref.scsk_value(ref_budget)
    if rep.g_value < cert.rho * opt - TOL:
        return f"{rep.algorithm}: g = {rep.g_value!r} < rho * OPT = {cert.rho * opt!r} at b = {b!r}"
    return None


def check_scsc(rep: SolveReport, ref: ExactReferee, c: float) -> str | None:
    cert = rep.certificate
    if rep.g_value < cert.rho * c - TOL:
        return f"{rep.algorithm}: g = {rep.g_value!r} < rho * c = {cert.rho * c!r}"
    opt = ref.scsc_value(c)
    if rep.f_value > cert.sigma * opt + TOL:
        return f"{rep.algorithm}: f = {rep.f_value!r} > sigma * OPT = {cert.sigma * opt!r} at c = {c!r}"
    return None


def verify_instance(f: FunctionOracle, g: FunctionOracle, trials: int, seed: int = 0,
                    opts: SolverOptions | None = None) -> VerifyResult:
    """Polymatroid checks on both functions, then ``trials`` random bounds per problem.

    Every solver output is checked against its own certificate with brute
    force as the referee. Stops collecting after the first failure.
    """
    opts = opts or SolverOptions()
    out = VerifyResult()
    for name, o in (("f", f), ("g", g)):
        rep = check_polymatroid(o, seed=seed)
        out.checked += len(rep.checks)
        if not rep.passed:
            bad = rep.first_failure()
            detail = f" witness {bad.violation}" if bad.violation is not None else f" ({bad.detail})"
            out.fail(f"{name}: {bad.name} check failed{detail}")
            return out
    ref = ExactReferee(f, g)
    rng = np.random.default_rng(seed)
    f_lo, f_hi = float(f.singletons().min()), f._value(f.full)
    g_lo, g_hi = float(g.singletons().min()), g._value(g.full)
    sk_algos, sc_algos = _scsk_algorithms(f), _scsc_algorithms(f)
    for _ in range(trials):
        b = float(rng.uniform(f_lo, f_hi))
        c = float(rng.uniform(g_lo, g_hi))
        for tag in sk_algos:
            try:
                rep = run(tag, "scsk", f, g, b, opts)
            except SubconsError as exc:
                out.fail(f"{tag} at b = {b!r} raised {exc}")
                return out
            out.checked += 1
            msg = check_scsk(rep, ref, f, b)
            if msg:
                out.fail(msg)
                return out
        for tag in sc_algos:
            try:
                rep = run(tag, "scsc", f, g, c, opts)
            except SubconsError as exc:
                out.fail(f"{tag} at c = {c!r} raised {exc}")
                return out
            out.checked += 1
            msg = check_scsc(rep, ref, c)
            if msg:
                out.fail(msg)
                return out
    return out
