from __future__ import annotations

import numpy as np

from ..bounds import ModularSurrogate
from ..errors import InstanceError, PreconditionError
from ..oracles import FunctionOracle, Modular


class Memo:
    """Per-run cache of oracle values keyed by bitmask."""

    __slots__ = ("oracle", "cache")

    def __init__(self, oracle: FunctionOracle):
        self.oracle = oracle
        self.cache: dict[int, float] = {}

    def __call__(self, bits: int) -> float:
        v = self.cache.get(bits)
        if v is None:
            v = self.oracle._value(bits)
            self.cache[bits] = v
        return v


def modular_cost(f_mod) -> tuple[np.ndarray, float, FunctionOracle]:
    """Split a modular cost into ``(weights, offset, oracle for reporting)``.

    Accepts a :class:`ModularSurrogate`, an oracle that knows it is modular,
    or a plain weight vector.
    """
    if isinstance(f_mod, ModularSurrogate):
        return np.asarray(f_mod.weights, dtype=float), float(f_mod.offset), f_mod.as_oracle()
    if isinstance(f_mod, FunctionOracle):
        w = f_mod.modular_weights()
        if w is None:
            raise PreconditionError(
                f"{type(f_mod).__name__} is not modular; use a modular bound or an iterative solver"
            )
        return np.asarray(w, dtype=float), 0.0, f_mod
    w = np.asarray(f_mod, dtype=float)
    if w.ndim != 1:
        raise PreconditionError("modular cost must be a weight vector")
    return w, 0.0, Modular(w)


def check_pair(f: FunctionOracle, g: FunctionOracle) -> None:
    if f.n != g.n:
        raise InstanceError("f and g must share one ground set")
