"""Structural checks on oracles: normalization, monotonicity, submodularity, curvature."""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, PreconditionError
from .oracles import FunctionOracle, Restricted
from .sets import TOL, SubsetState

EXHAUSTIVE_LIMIT = 16

# oracles are immutable, so a table stays valid for the oracle's lifetime
_TABLES: "weakref.WeakKeyDictionary[FunctionOracle, np.ndarray]" = weakref.WeakKeyDictionary()


def value_table(oracle: FunctionOracle) -> np.ndarray:
    """``table[bits] = oracle(bits)`` for all ``2**n`` subsets (read-only, cached per oracle)."""
    n = oracle.n
    if n > 24:
        raise ParameterError(f"refusing to tabulate 2**{n} subsets")
    table = _TABLES.get(oracle)
    if table is None:
        value = oracle._value
        table = np.fromiter((value(b) for b in range(1 << n)), dtype=float, count=1 << n)
        table.setflags(write=False)
        _TABLES[oracle] = table
    return table


@dataclass(frozen=True)
class Violation:
    """Witness of a failed diminishing-returns check: ``gain(j | S) < gain(j | T)``."""

    S: SubsetState
    T: SubsetState
    j: int
    gain_S: float
    gain_T: float


@dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    checked: int
    exhaustive: bool
    violation: Violation | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed


def check_submodular(
    oracle: FunctionOracle,
    *,
    samples: int = 20000,
    seed: int = 0,
    tol: float = TOL,
    table: np.ndarray | None = None,
) -> CheckReport:
    """Diminishing returns on every (exhaustive, ``n <= 16``) or sampled triple.

    The exhaustive mode uses the equivalent local form
    ``f(j | S) >= f(j | S + i)`` for all ``S`` and ``i, j`` outside ``S``.
    """
    n = oracle.n
    if n <= EXHAUSTIVE_LIMIT:
        t = value_table(oracle) if table is None else table
        masks = np.arange(1 << n, dtype=np.int64)
        checked = 0
        for j in range(n):
            bj = 1 << j
            for i in range(n):
                if i == j:
                    continue
                bi = 1 << i
                S = masks[(masks & (bi | bj)) == 0]
                g_S = t[S | bj] - t[S]
                g_T = t[S | bi | bj] - t[S | bi]
                checked += S.size
                bad = np.flatnonzero(g_S < g_T - tol)
                if bad.size:
                    s = int(S[bad[0]])
                    v = Violation(SubsetState(s), SubsetState(s | bi), j, float(g_S[bad[0]]), float(g_T[bad[0]]))
                    return CheckReport("submodular", False, checked, True, v)
        return CheckReport("submodular", True, checked, True)

    rng = np.random.default_rng(seed)
    full = oracle.full
    for k in range(samples):
        T = _random_mask(rng, n)
        S = T & _random_mask(rng, n)
        outside = [e for e in range(n) if not (T >> e) & 1]
        if not outside:
            continue
        j = outside[int(rng.integers(len(outside)))]
        g_S = oracle._value(S | (1 << j)) - oracle._value(S)
        g_T = oracle._value(T | (1 << j)) - oracle._value(T)
        if g_S < g_T - tol:
            v = Violation(SubsetState(S), SubsetState(T & full), j, g_S, g_T)
            return CheckReport("submodular", False, k + 1, False, v)
    return CheckReport("submodular", True, samples, False)


def _random_mask(rng: np.random.Generator, n: int) -> int:
    bits = rng.integers(0, 2, size=n)
    return int(sum(1 << i for i in np.flatnonzero(bits)))


def check_monotone(
    oracle: FunctionOracle, *, samples: int = 20000, seed: int = 0, tol: float = TOL,
    table: np.ndarray | None = None,
) -> CheckReport:
    n = oracle.n
    if n <= EXHAUSTIVE_LIMIT:
        t = value_table(oracle) if table is None else table
        masks = np.arange(1 << n, dtype=np.int64)
        for j in range(n):
            S = masks[(masks >> j) & 1 == 0]
            g = t[S | (1 << j)] - t[S]
            bad = np.flatnonzero(g < -tol)
            if bad.size:
                s = int(S[bad[0]])
                return CheckReport(
                    "monotone", False, (j + 1) * S.size, True,
                    detail=f"f({j} | {SubsetState(s)}) = {g[bad[0]]!r} < 0",
                )
        return CheckReport("monotone", True, n << (n - 1), True)
    rng = np.random.default_rng(seed)
    for k in range(samples):
        S = _random_mask(rng, n)
        j = int(rng.integers(n))
        g = oracle._value(S | (1 << j)) - oracle._value(S)
        if g < -tol:
            return CheckReport("monotone", False, k + 1, False, detail=f"f({j} | {SubsetState(S)}) = {g!r} < 0")
    return CheckReport("monotone", True, samples, False)


def check_normalized(oracle: FunctionOracle, tol: float = TOL) -> CheckReport:
    v = oracle._value(0)
    return CheckReport("normalized", abs(v) <= tol, 1, True, detail=f"f(empty) = {v!r}")


def check_positive_singletons(oracle: FunctionOracle) -> CheckReport:
    s = oracle.singletons()
    zero = np.flatnonzero(s <= 0)
    detail = "" if zero.size == 0 else f"non-positive singletons at {zero.tolist()}"
    return CheckReport("positive_singletons", zero.size == 0, oracle.n, True, detail=detail)


@dataclass(frozen=True)
class PropertyReport:
    checks: tuple[CheckReport, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def first_failure(self) -> CheckReport | None:
        return next((c for c in self.checks if not c.passed), None)


def check_polymatroid(oracle: FunctionOracle, *, seed: int = 0, samples: int = 20000) -> PropertyReport:
    """All oracle invariants in one pass (shared table when exhaustive)."""
    table = value_table(oracle) if oracle.n <= EXHAUSTIVE_LIMIT else None
    return PropertyReport((
        check_normalized(oracle),
        check_positive_singletons(oracle),
        check_monotone(oracle, table=table, seed=seed, samples=samples),
        check_submodular(oracle, table=table, seed=seed, samples=samples),
    ))


def curvature(oracle: FunctionOracle) -> float:
    """Total curvature ``1 - min_j f(j | V - j) / f(j)``, clamped to ``[0, 1]``."""
    if oracle.modular_weights() is not None:
        if np.any(oracle.modular_weights() <= 0):
            raise PreconditionError("curvature needs positive singleton values")
        return 0.0
    full = oracle.full
    top = oracle._value(full)
    ratio = np.inf
    for j in range(oracle.n):
        single = oracle._value(1 << j)
        if single <= 0:
            raise PreconditionError(f"curvature needs f({{{j}}}) > 0, got {single!r}")
        tail = top - oracle._value(full & ~(1 << j))
        ratio = min(ratio, tail / single)
    kappa = 1.0 - ratio
    # rounding noise around the endpoints
    if abs(kappa) < 1e-12:
        return 0.0
    if abs(kappa - 1.0) < 1e-12:
        return 1.0
    return float(min(1.0, max(0.0, kappa)))


def strip_zero_singletons(*oracles: FunctionOracle) -> tuple[list[int], list[Restricted]]:
    """Drop elements whose singleton value is zero in any oracle.

    Such elements have zero gain everywhere (monotone submodular), so removing
    them changes no objective value. Returns the kept ids and restricted oracles.
    """
    if not oracles:
        raise ParameterError("need at least one oracle")
    n = oracles[0].n
    keep = [j for j in range(n) if all(o._value(1 << j) > 0 for o in oracles)]
    if not keep:
        raise PreconditionError("every element has a zero singleton value")
    return keep, [Restricted(o, keep) for o in oracles]
