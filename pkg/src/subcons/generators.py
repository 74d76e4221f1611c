"""Seeded synthetic instance generators.

Every generator is a pure function of ``(n, seed, params)``; the numpy
``PCG64`` stream behind ``default_rng(seed)`` makes the output reproducible
across platforms.
"""

from __future__ import annotations

import math
from typing import Any, Callable

import numpy as np

from .errors import ParameterError
from .instance import InstanceSpec
from .oracles import (
    BipartiteNeighborhood,
    FacilityLocation,
    FunctionOracle,
    HardnessHidden,
    Modular,
    SaturatedSum,
)

ZIPF_EXPONENT = 1.1
UTTERANCE_LENGTH = (3, 10)


def symmetric_similarity(n: int, rng: np.random.Generator) -> np.ndarray:
    """Symmetric ``n x n`` matrix with entries uniform on ``(0, 1]``."""
    U = 1.0 - rng.random((n, n))
    return np.triu(U) + np.triu(U, 1).T


def zipf_vocabulary(num_words: int, exponent: float = ZIPF_EXPONENT) -> np.ndarray:
    p = 1.0 / np.arange(1, num_words + 1) ** exponent
    return p / p.sum()


def bipartite_utterances(n: int, num_words: int, rng: np.random.Generator) -> list[list[int]]:
    """``n`` utterances of 3 to 10 distinct words drawn with Zipf word frequencies."""
    lo, hi = UTTERANCE_LENGTH
    if num_words < hi:
        raise ParameterError(f"vocabulary needs at least {hi} words")
    p = zipf_vocabulary(num_words)
    adj = []
    for _ in range(n):
        length = int(rng.integers(lo, hi + 1))
        adj.append(sorted(int(w) for w in rng.choice(num_words, size=length, replace=False, p=p)))
    return adj


def _bound(f: FunctionOracle, g: FunctionOracle, params: dict[str, Any]) -> dict[str, float]:
    if "cover_frac" in params:
        return {"cover": max(float(g.singletons().min()), params["cover_frac"] * g._value(g.full))}
    frac = params.get("budget_frac", 0.3)
    return {"budget": max(float(f.singletons().min()), frac * f._value(f.full))}


def _check_n(n: int) -> None:
    if n < 1:
        raise ParameterError("n must be positive")


def speech_like(n: int, seed: int, saturate: float | None = None, **params) -> InstanceSpec:
    """Vocabulary-size cost over utterances, facility-location (or saturated) coverage."""
    _check_n(n)
    rng = np.random.default_rng(seed)
    num_words = int(params.get("num_words", max(UTTERANCE_LENGTH[1], 2 * n)))
    adj = bipartite_utterances(n, num_words, rng)
    S = symmetric_similarity(n, rng)
    f = BipartiteNeighborhood(adj, num_words)
    g = FacilityLocation(S) if saturate is None else SaturatedSum(S, saturate)
    kind = "speech-like" if saturate is None else "speech-sat"
    rec = {"num_words": num_words, "zipf_exponent": ZIPF_EXPONENT, **params}
    if saturate is not None:
        rec["alpha"] = saturate
    return InstanceSpec.from_oracles(f, g, _bound(f, g, params), seed=seed, kind=kind, params=rec)


def speech_sat(n: int, seed: int, alpha: float = 0.5, **params) -> InstanceSpec:
    return speech_like(n, seed, saturate=alpha, **params)


def modular_pair(n: int, seed: int, **params) -> InstanceSpec:
    """Integer weights uniform on ``1..10`` for both the cost and the coverage."""
    _check_n(n)
    rng = np.random.default_rng(seed)
    f = Modular(rng.integers(1, 11, size=n).astype(float))
    g = Modular(rng.integers(1, 11, size=n).astype(float))
    return InstanceSpec.from_oracles(f, g, _bound(f, g, params), seed=seed, kind="modular-pair",
                                     params=dict(params))


def hardness_sizes(n: int, x2: float) -> tuple[int, int]:
    """``alpha = floor(x sqrt(n) / 5)`` and ``beta = floor(x^2 / 5)`` for ``x = sqrt(x2)``."""
    if x2 <= 0:
        raise ParameterError("x^2 must be positive")
    if float(x2).is_integer():
        m = int(x2)
        return math.isqrt(m * n // 25), m // 5
    return math.floor(math.sqrt(x2 * n) / 5 + 1e-12), math.floor(x2 / 5 + 1e-12)


def hardness_pair(n: int, seed: int, kappa: float = 1.0, x2: float | None = None,
                  alpha: int | None = None, beta: int | None = None, **params) -> InstanceSpec:
    """Cost with a hidden set ``R`` of size ``alpha`` and the cover ``|X| >= alpha``.

    Give either ``x2`` (sizes derived from ``x = sqrt(x2)``) or explicit ``alpha`` and ``beta``.
    """
    _check_n(n)
    if x2 is not None:
        alpha, beta = hardness_sizes(n, x2)
    if alpha is None or beta is None:
        raise ParameterError("hardness-pair needs x2 or both alpha and beta")
    if alpha < 1:
        raise ParameterError(f"alpha = {alpha} < 1: increase x2 or n")
    if alpha > n:
        raise ParameterError(f"alpha = {alpha} exceeds n = {n}")
    rng = np.random.default_rng(seed)
    hidden = sorted(int(r) for r in rng.choice(n, size=alpha, replace=False))
    f = HardnessHidden(n, kappa, alpha, beta, hidden)
    g = Modular(np.ones(n))
    rec = {"kappa": kappa, "alpha": alpha, "beta": beta, "plain": {"kind": "hardness_plain", "n": n,
           "kappa": float(kappa), "alpha": alpha}, **params}
    if x2 is not None:
        rec["x2"] = x2
    return InstanceSpec.from_oracles(f, g, {"cover": float(alpha)}, seed=seed, kind="hardness-pair",
                                     params=rec)


GENERATORS: dict[str, Callable[..., InstanceSpec]] = {
    "speech-like": speech_like,
    "speech-sat": speech_sat,
    "modular-pair": modular_pair,
    "hardness-pair": hardness_pair,
}


def generate(kind: str, n: int, seed: int, **params) -> InstanceSpec:
    try:
        gen = GENERATORS[kind]
    except KeyError:
        raise ParameterError(f"unknown generator {kind!r}; choose from {sorted(GENERATORS)}") from None
    return gen(n, seed, **params)
