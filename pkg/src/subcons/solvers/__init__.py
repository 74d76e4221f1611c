"""Approximation algorithms for submodular cover (SCSC) and knapsack (SCSK)."""

from .dual import ssc_dual_greedy
from .ea import eask, eask_c, eassc, eassc_c, sandwich_factors
from .greedy import sk_greedy, ssc_greedy
from .iterative import gr, isk, issc

__all__ = [
    "ssc_greedy",
    "sk_greedy",
    "ssc_dual_greedy",
    "gr",
    "issc",
    "isk",
    "eassc",
    "eassc_c",
    "eask",
    "eask_c",
    "sandwich_factors",
]
