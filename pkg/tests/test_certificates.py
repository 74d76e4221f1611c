import itertools
import math

import numpy as np
import pytest

from helpers import catalog_oracles, speech_pair

from subcons.certificates import (
    budget_cardinality,
    cover_cardinality,
    curvature_shrink,
    gr_factor,
    harmonic,
    harmonic_factor,
    is_integral,
    issc_factor,
    maximal_cardinality,
)
from subcons.oracles import BipartiteNeighborhood, Modular


def subsets(n):
    for k in range(n + 1):
        yield from itertools.combinations(range(n), k)


def test_harmonic_values():
    assert harmonic(0) == 0.0
    assert harmonic(3) == pytest.approx(11 / 6)
    assert harmonic(1) == 1.0


def test_harmonic_factor_integral_and_not():
    g = BipartiteNeighborhood([[0, 1, 2], [2], [3, 4]], 5)
    assert is_integral(g)
    assert harmonic_factor(g) == (pytest.approx(11 / 6), ())
    h = Modular([0.5, 1.25])
    val, flags = harmonic_factor(h)
    assert flags == ("non-integral",)
    assert val == pytest.approx(1 + math.log(1.75 / 1e-9))


@pytest.mark.parametrize("seed", range(6))
def test_cardinalities_exact_match_enumeration(seed):
    f, g = speech_pair(8, seed)
    rng = np.random.default_rng(seed)
    for _ in range(4):
        c = float(rng.uniform(g.singletons().min(), g(g.full)))
        b = float(rng.uniform(f.singletons().min(), f(f.full)))
        K_g = 1 + max(len(X) for X in subsets(8) if g(X) < c - 1e-9)
        K_f = max(len(X) for X in subsets(8) if f(X) <= b + 1e-9)
        feasible = [set(X) for X in subsets(8) if f(X) <= b + 1e-9]
        k_f = min(len(X) for X in feasible if all(f(X | {j}) > b + 1e-9 for j in set(range(8)) - X))
        assert cover_cardinality(g, c).value == K_g
        assert budget_cardinality(f, b).value == K_f
        assert maximal_cardinality(f, b).value == k_f
        assert cover_cardinality(g, c).exact


@pytest.mark.parametrize("seed", range(6))
def test_estimates_are_conservative(seed):
    f, g = speech_pair(8, seed)
    rng = np.random.default_rng(100 + seed)
    for _ in range(4):
        c = float(rng.uniform(g.singletons().min(), g(g.full)))
        b = float(rng.uniform(f.singletons().min(), f(f.full)))
        est_K_g = cover_cardinality(g, c, exact_limit=0)
        est_K_f = budget_cardinality(f, b, exact_limit=0)
        est_k_f = maximal_cardinality(f, b, exact_limit=0)
        assert est_K_g.value >= cover_cardinality(g, c).value
        assert est_K_f.value >= budget_cardinality(f, b).value
        assert est_k_f.value <= maximal_cardinality(f, b).value
        assert not est_K_g.exact and not est_K_f.exact


def test_modular_cardinalities_by_sorting():
    w = Modular([3.0, 1.0, 2.0, 5.0])
    assert budget_cardinality(w, 6.0).value == 3
    assert cover_cardinality(w, 3.0).value == 2  # {1} alone stays below 3
    assert maximal_cardinality(w, 0.5).value == 0
    assert maximal_cardinality(w, 11.0).value == 4


def test_factor_formulas():
    assert issc_factor(1, 2.0, 0.3) == 2.0
    assert issc_factor(4, 1.0, 0.0) == pytest.approx(1.0)
    assert issc_factor(4, 1.0, 1.0) == pytest.approx(4.0)
    assert curvature_shrink(4, 1.0) == pytest.approx(0.25)
    assert curvature_shrink(4, 0.0) == pytest.approx(1.0)
    assert gr_factor(0.0, 4, 2) == pytest.approx(0.5)
    assert gr_factor(1.0, 4, 4) == pytest.approx(1 - 0.75**4)
    assert all(0 < gr_factor(k, 5, 3) <= 1 for k in np.linspace(0, 1, 11))


def test_catalog_integrality_flags():
    cat = catalog_oracles(6, seed=0)
    assert is_integral(cat["card_truncation"])
    assert is_integral(cat["bipartite_neighborhood"])
    assert not is_integral(cat["facility_location"])
