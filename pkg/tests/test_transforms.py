import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import integral_coverage, speech_pair

from subcons.errors import ParameterError, SearchExhaustedError
from subcons.exact import ExactReferee
from subcons.oracles import CardTruncation, FacilityLocation, Modular
from subcons.transforms import (
    BiCriterion,
    InnerSolver,
    binary_probes,
    combine_covers,
    exact_cover_solver,
    exact_knapsack_solver,
    linear_budget_probes,
    linear_cover_probes,
    scsc_via_scsk_binary,
    scsc_via_scsk_linear,
    scsk_via_scsc_binary,
    scsk_via_scsc_linear,
)

TOL = 1e-9


def test_bicriterion_validation():
    BiCriterion(1.0, 1.0)
    for bad in ((0.5, 1.0), (1.0, 0.0), (1.0, 1.5)):
        with pytest.raises(ParameterError):
            BiCriterion(*bad)
    with pytest.raises(ParameterError):
        BiCriterion(1.0, 1.0, eps=0.0)
    with pytest.raises(ParameterError):
        InnerSolver(lambda x: None, 0.9, 1.0)


def test_probe_bound_values():
    assert linear_cover_probes(64, 1, 0.5) == 7
    assert linear_budget_probes(64, 1, 1.0) == 7
    assert binary_probes(64, 1, 0.05, True) == 6
    assert binary_probes(1, 1, 0.05, True) == 0
    assert binary_probes(10, 1, 0.5, False) == math.ceil(math.log2(40)) + 1


def test_integral_coverage_64_needs_at_most_seven_probes():
    f = Modular([3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0])
    g = Modular([1.0, 3.0, 5.0, 7.0, 9.0, 11.0, 13.0, 15.0])
    assert g(g.full) == 64
    ref = ExactReferee(f, g)
    inner = exact_cover_solver(f, g, ref)
    for b in np.linspace(1.0, f(f.full), 31):
        rep = scsk_via_scsc_binary(inner, f, g, float(b))
        assert rep.iterations <= 7
        assert rep.g_value == ref.scsk_value(float(b))


@pytest.mark.parametrize("seed", range(100))
def test_binary_against_linear(seed):
    rng = np.random.default_rng([60, seed])
    f = Modular(rng.integers(1, 8, size=8).astype(float))
    g = integral_coverage(8, rng)
    ref = ExactReferee(f, g)
    b = float(rng.uniform(f.singletons().min(), f(f.full)))
    c = float(rng.integers(1, int(g(g.full)) + 1))
    cover, knap = exact_cover_solver(f, g, ref), exact_knapsack_solver(f, g, ref)
    lin = scsk_via_scsc_linear(cover, f, g, b)
    bis = scsk_via_scsc_binary(cover, f, g, b)
    assert bis.f_value <= b + TOL and lin.f_value <= b + TOL
    # integral coverage: the bisection finds the exact knapsack optimum
    assert bis.g_value == ref.scsk_value(b) >= lin.g_value
    lin = scsc_via_scsk_linear(knap, f, g, c)
    bis = scsc_via_scsk_binary(knap, f, g, c)
    assert bis.g_value >= c - TOL and lin.g_value >= c - TOL
    assert bis.f_value == ref.scsc_value(c) <= lin.f_value
    assert bis.iterations <= binary_probes(f(f.full), f.singletons().min(), 0.05, True)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1), st.floats(0.01, 0.5), st.floats(0.0, 1.0))
def test_non_integral_guarantees(seed, eps, t):
    f, g = speech_pair(7, seed)
    g = FacilityLocation(g.similarity * 0.37)
    ref = ExactReferee(f, g)
    cover, knap = exact_cover_solver(f, g, ref), exact_knapsack_solver(f, g, ref)
    fmin, gmin = f.singletons().min(), g.singletons().min()
    b = float(fmin + t * (f(f.full) - fmin))
    c = float(gmin + t * (g(g.full) - gmin))
    opt_b, opt_c = ref.scsk_value(b), ref.scsc_value(c)
    for alg in (scsk_via_scsc_linear, scsk_via_scsc_binary):
        rep = alg(cover, f, g, b, eps)
        assert rep.f_value <= b + TOL
        assert rep.g_value >= (1 - eps) * opt_b - TOL
        assert rep.g_value >= rep.certificate.rho * opt_b - TOL
    for alg in (scsc_via_scsk_linear, scsc_via_scsk_binary):
        rep = alg(knap, f, g, c, eps)
        assert rep.g_value >= c - TOL
        assert rep.f_value <= rep.certificate.sigma * opt_c + TOL
    assert scsk_via_scsc_linear(cover, f, g, b, eps).iterations <= linear_cover_probes(g(g.full), gmin, eps)
    assert scsc_via_scsk_linear(knap, f, g, c, eps).iterations <= linear_budget_probes(f(f.full), fmin, eps)


def test_degenerate_levels_need_no_probe():
    f = Modular([3.0, 1.0, 2.0])
    g = CardTruncation(3, 1)
    rep = scsk_via_scsc_binary(exact_cover_solver(f, g), f, g, 1.5)
    assert rep.iterations == 0 and rep.solution.elements() == [1]
    flat = CardTruncation(3, 1)
    gg = Modular([1.0, 1.0, 1.0])
    rep = scsc_via_scsk_binary(exact_knapsack_solver(flat, gg), flat, gg, 3.0)
    assert rep.iterations == 0 and rep.solution.elements() == [0, 1, 2]


def test_probe_cap_raises():
    f = Modular([1.0, 1.0, 1.0])
    g = Modular([1.0, 2.0, 3.0])
    ref = ExactReferee(f, g)
    # an inner solver that always answers with the whole ground set never fits
    stubborn = InnerSolver(lambda c: ref.scsc(g(g.full)), 1.0, 1.0, "stubborn")
    with pytest.raises(SearchExhaustedError):
        scsk_via_scsc_linear(stubborn, f, g, 1.0)
    empty = InnerSolver(lambda b: ref.scsk(0.0), 1.0, 1.0, "empty")
    with pytest.raises(SearchExhaustedError):
        scsc_via_scsk_linear(empty, f, g, 6.0)


def test_bound_validation():
    f = Modular([1.0, 2.0])
    g = Modular([1.0, 1.0])
    with pytest.raises(ParameterError):
        scsk_via_scsc_linear(exact_cover_solver(f, g), f, g, 0.5)
    with pytest.raises(ParameterError):
        scsc_via_scsk_binary(exact_knapsack_solver(f, g), f, g, 3.0)
    with pytest.raises(ParameterError):
        scsk_via_scsc_linear(exact_cover_solver(f, g), f, g, 1.0, eps=1.0)


@pytest.mark.parametrize("seed", range(5))
def test_combine_covers_exhaustive(seed):
    rng = np.random.default_rng(seed)
    n = 7
    g1 = FacilityLocation(rng.uniform(0, 1, size=(3, n)))
    g2 = integral_coverage(n, rng)
    a1, a2 = 0.8 * g1(g1.full), float(int(g2(g2.full)) - 1)
    h = combine_covers([g1, g2], [a1, a2])
    top = h(h.full)
    assert top == pytest.approx(a1 + a2)
    for k in range(n + 1):
        for X in itertools.combinations(range(n), k):
            both = g1(X) >= a1 and g2(X) >= a2
            assert (h(X) >= top - TOL) == both


def test_combine_covers_validation():
    with pytest.raises(ParameterError):
        combine_covers([], [])
    with pytest.raises(ParameterError):
        combine_covers([Modular([1.0])], [1.0, 2.0])
