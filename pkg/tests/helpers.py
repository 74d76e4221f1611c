"""Seeded oracle and instance factories shared by the test modules."""

from __future__ import annotations

import itertools

import numpy as np

from subcons.generators import bipartite_utterances, symmetric_similarity
from subcons.oracles import (
    BipartiteNeighborhood,
    CardTruncation,
    FacilityLocation,
    FunctionOracle,
    HardnessHidden,
    HardnessPlain,
    Modular,
    SaturatedSum,
    SqrtModular,
    Sum,
    Truncation,
)


def catalog_oracles(n: int, seed: int = 0) -> dict[str, FunctionOracle]:
    """One seeded instance of every catalog entry on ``n`` elements."""
    rng = np.random.default_rng(seed)
    S = symmetric_similarity(n, rng)
    adj = bipartite_utterances(n, max(10, 2 * n), rng)
    w = rng.uniform(0.5, 3.0, size=n)
    alpha = max(1, n // 3)
    hidden = sorted(int(r) for r in rng.choice(n, size=alpha, replace=False))
    fl = FacilityLocation(S)
    return {
        "modular": Modular(w),
        "facility_location": fl,
        "saturated_sum": SaturatedSum(S, 0.5),
        "bipartite_neighborhood": BipartiteNeighborhood(adj, max(10, 2 * n)),
        "sqrt_modular": SqrtModular(w),
        "card_truncation": CardTruncation(n, alpha),
        "truncation": Truncation(fl, 0.7 * fl(fl.full)),
        "sum": Sum([fl, Modular(w)]),
        "hardness_plain": HardnessPlain(n, 0.6, alpha),
        "hardness_hidden": HardnessHidden(n, 0.6, alpha, max(0, alpha - 2), hidden),
    }


def speech_pair(n: int, seed: int, saturated: bool = False):
    """Vocabulary cost and facility-location (or saturated-sum) coverage."""
    rng = np.random.default_rng(seed)
    adj = bipartite_utterances(n, 2 * n, rng)
    S = symmetric_similarity(n, rng)
    f = BipartiteNeighborhood(adj, 2 * n)
    g = SaturatedSum(S, 0.5) if saturated else FacilityLocation(S)
    return f, g


def integral_coverage(n: int, rng: np.random.Generator, num_words: int = 12) -> BipartiteNeighborhood:
    """Integer-valued coverage: each element covers 1 to 4 random words."""
    adj = [sorted(rng.choice(num_words, size=int(rng.integers(1, 5)), replace=False).tolist()) for _ in range(n)]
    return BipartiteNeighborhood(adj, num_words)


def all_subsets(n: int):
    """Every subset as a sorted tuple, by size then lexicographically (independent of bitmasks)."""
    for k in range(n + 1):
        yield from itertools.combinations(range(n), k)


def naive_scsc(f, g, c, tol=1e-9):
    best = None
    for X in all_subsets(f.n):
        if g(X) >= c - tol:
            v = f(X)
            if best is None or v < best:
                best = v
    return best


def naive_scsk(f, g, b, tol=1e-9):
    best = None
    for X in all_subsets(f.n):
        if f(X) <= b + tol:
            v = g(X)
            if best is None or v > best:
                best = v
    return best
