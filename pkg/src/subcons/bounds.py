"""Modular lower/upper bounds, curve normalization and the EA-shaped surrogate."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .errors import ParameterError, PreconditionError
from .oracles import FunctionOracle
from .properties import curvature, value_table
from .sets import SetLike, SubsetState, as_bits, members

Direction = Literal["lower", "upper"]


@dataclass(frozen=True)
class Permutation:
    order: tuple[int, ...]

    def __post_init__(self) -> None:
        order = tuple(int(i) for i in self.order)
        if sorted(order) != list(range(len(order))):
            raise ParameterError("permutation must be a bijection on 0..n-1")
        object.__setattr__(self, "order", order)

    @property
    def n(self) -> int:
        return len(self.order)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def placing_first(cls, Y: SetLike, n: int, rest: Sequence[int] | None = None) -> "Permutation":
        """A permutation listing ``Y`` (ascending) first, then ``rest`` or the remaining ids."""
        head = members(as_bits(Y))
        tail = [j for j in (range(n) if rest is None else rest) if j not in set(head)]
        return cls(tuple(head + tail))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "Permutation":
        return cls(tuple(int(i) for i in rng.permutation(n)))

    def chain(self) -> list[int]:
        """Prefix bitmasks ``S_0 = {}, S_1, ..., S_n = V``."""
        out = [0]
        for j in self.order:
            out.append(out[-1] | (1 << j))
        return out


@dataclass(frozen=True)
class ModularSurrogate:
    """Affine set function ``offset + sum_{j in X} weights[j]``, tight at ``anchor``."""

    weights: np.ndarray
    offset: float
    anchor: SubsetState
    direction: Direction
    label: str = ""

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def value(self, X: SetLike) -> float:
        total = self.offset
        for j in members(as_bits(X)):
            total += self.weights[j]
        return float(total)

    __call__ = value

    def table(self) -> np.ndarray:
        """Values on all ``2**n`` subsets (test helper, small ``n`` only)."""
        n = self.n
        t = np.zeros(1 << n)
        for j in range(n):
            t[1 << j : 1 << (j + 1)] = t[: 1 << j] + self.weights[j]
        return t + self.offset

    def as_oracle(self) -> "SurrogateOracle":
        return SurrogateOracle(self)


class SurrogateOracle(FunctionOracle):
    """A :class:`ModularSurrogate` behind the oracle interface (not normalized if offset != 0)."""

    kind = "surrogate"

    def __init__(self, surrogate: ModularSurrogate):
        super().__init__(surrogate.n)
        self.surrogate = surrogate

    def _value(self, bits: int) -> float:
        return self.surrogate.value(bits)

    def modular_weights(self):
        return self.surrogate.weights if self.surrogate.offset == 0 else None

    def params(self):
        return {"weights": self.surrogate.weights.tolist(), "offset": self.surrogate.offset}


def subgradient(oracle: FunctionOracle, pi: Permutation, anchor_size: int | None = None) -> ModularSurrogate:
    """Greedy extreme point: ``weights[pi(i)] = f(S_i) - f(S_{i-1})``.

    The bound is tight on every prefix of the chain; ``anchor_size`` picks the
    prefix recorded as the anchor (default: the whole ground set).
    """
    if pi.n != oracle.n:
        raise ParameterError("permutation size does not match the oracle")
    vals = oracle.chain_values(pi.order)
    w = np.empty(oracle.n)
    prev = 0.0
    for j, v in zip(pi.order, vals):
        w[j] = v - prev
        prev = v
    k = oracle.n if anchor_size is None else int(anchor_size)
    if not 0 <= k <= oracle.n:
        raise ParameterError("anchor_size outside 0..n")
    anchor = SubsetState(pi.chain()[k])
    return ModularSurrogate(w, 0.0, anchor, "lower", f"h[{','.join(map(str, pi.order[:k]))}]")


def upper_bound_1(oracle: FunctionOracle, X: SetLike) -> ModularSurrogate:
    """``f(X) - sum_{X-Y} f(j | X-j) + sum_{Y-X} f(j)``."""
    x = oracle.ground.check(X)
    fx = oracle._value(x)
    w = np.empty(oracle.n)
    offset = fx
    for j in range(oracle.n):
        if x >> j & 1:
            w[j] = fx - oracle._value(x & ~(1 << j))
            offset -= w[j]
        else:
            w[j] = oracle._value(1 << j)
    return ModularSurrogate(w, float(offset), SubsetState(x), "upper", f"m1@{members(x)}")


def upper_bound_2(oracle: FunctionOracle, X: SetLike) -> ModularSurrogate:
    """``f(X) - sum_{X-Y} f(j | V-j) + sum_{Y-X} f(j | X)``."""
    x = oracle.ground.check(X)
    full = oracle.full
    fx = oracle._value(x)
    fv = oracle._value(full)
    w = np.empty(oracle.n)
    offset = fx
    for j in range(oracle.n):
        if x >> j & 1:
            w[j] = fv - oracle._value(full & ~(1 << j))
            offset -= w[j]
        else:
            w[j] = oracle._value(x | (1 << j)) - fx
    return ModularSurrogate(w, float(offset), SubsetState(x), "upper", f"m2@{members(x)}")


def upper_bound(oracle: FunctionOracle, X: SetLike, variant: str = "m2") -> ModularSurrogate:
    if variant == "m1":
        return upper_bound_1(oracle, X)
    if variant == "m2":
        return upper_bound_2(oracle, X)
    raise ParameterError(f"unknown upper-bound variant {variant!r} (use m1 or m2)")


class CurveNormalized(FunctionOracle):
    """``[f(X) - (1 - kappa) * sum_{j in X} f(j)] / kappa``: the fully curved part of ``f``."""

    kind = "curve_normalized"

    def __init__(self, inner: FunctionOracle, kappa: float):
        super().__init__(inner.n)
        self.inner = inner
        self.kappa = float(kappa)
        self.single = inner.singletons()

    def _value(self, bits: int) -> float:
        fx = self.inner._value(bits)
        if self.kappa == 1.0:
            return fx
        s = 0.0
        for j in members(bits):
            s += self.single[j]
        return (fx - (1.0 - self.kappa) * s) / self.kappa

    def params(self):
        return {"inner": self.inner.to_dict(), "kappa": self.kappa}


def curve_normalize(oracle: FunctionOracle, kappa: float | None = None) -> CurveNormalized:
    k = curvature(oracle) if kappa is None else float(kappa)
    if k <= 0:
        raise PreconditionError("curvature is zero: a modular function needs no normalization")
    return CurveNormalized(oracle, k)


class EASurrogate(FunctionOracle):
    """``kappa * sqrt(w(X)) + (1 - kappa) * sum_{j in X} f(j)``."""

    kind = "ea_surrogate"

    def __init__(self, kappa: float, ea_weights, singleton_weights):
        ea = np.asarray(ea_weights, dtype=float)
        single = np.asarray(singleton_weights, dtype=float)
        if ea.shape != single.shape or ea.ndim != 1:
            raise ParameterError("EA weights and singleton weights must be equal-length vectors")
        if np.any(ea < 0) or not np.all(np.isfinite(ea)):
            raise ParameterError("EA weights must be finite and non-negative")
        if not 0 < kappa <= 1:
            raise ParameterError("EA surrogate needs curvature in (0, 1]")
        super().__init__(ea.shape[0])
        self.kappa = float(kappa)
        self.ea_weights = ea
        self.singleton_weights = single

    def root_part(self, bits: int) -> float:
        total = 0.0
        for j in members(bits):
            total += self.ea_weights[j]
        return math.sqrt(total)

    def _value(self, bits: int) -> float:
        root = self.root_part(bits)
        if self.kappa == 1.0:
            return root
        lin = 0.0
        for j in members(bits):
            lin += self.singleton_weights[j]
        return self.kappa * root + (1.0 - self.kappa) * lin

    def params(self):
        return {"kappa": self.kappa, "ea_weights": self.ea_weights.tolist(),
                "singleton_weights": self.singleton_weights.tolist()}


def default_ea_weights(oracle: FunctionOracle, kappa: float | None = None) -> np.ndarray:
    """Heuristic weights with ``sqrt(w(X)) <= f^kappa(X)`` for every ``X``.

    ``w[j] = f(j) * phi[j]`` where ``phi`` averages the greedy marginal vectors
    of the ``n`` cyclic rotations of the identity order. ``phi`` lies in the
    base polytope of the curve-normalized function, hence
    ``w(X) <= max_{j in X} f(j) * phi(X) <= f^kappa(X)**2``. Every element
    leads one rotation, so ``phi[j] >= f(j) / n > 0``.
    """
    k = curvature(oracle) if kappa is None else float(kappa)
    if k <= 0:
        raise PreconditionError("EA weights are defined for curved (kappa > 0) functions only")
    fk = oracle if k == 1.0 else CurveNormalized(oracle, k)
    n = oracle.n
    phi = np.zeros(n)
    base = list(range(n))
    for r in range(n):
        order = base[r:] + base[:r]
        vals = fk.chain_values(order)
        prev = 0.0
        for j, v in zip(order, vals):
            phi[j] += v - prev
            prev = v
    phi /= n
    np.maximum(phi, 0.0, out=phi)
    return oracle.singletons() * phi


def singleton_squared_weights(oracle: FunctionOracle) -> np.ndarray:
    """``w[j] = f(j)**2``; cheap but only an upper-side proxy (``sqrt(w(X))`` may exceed ``f(X)``)."""
    return oracle.singletons() ** 2


def ea_surrogate(oracle: FunctionOracle, ea_weights=None, kappa: float | None = None) -> EASurrogate:
    k = curvature(oracle) if kappa is None else float(kappa)
    if k <= 0:
        raise PreconditionError("curvature is zero: optimize the modular function directly")
    if ea_weights is None:
        ea_weights = default_ea_weights(oracle, k)
    return EASurrogate(k, ea_weights, oracle.singletons())


@dataclass(frozen=True)
class Sandwich:
    """Measured multiplicative bounds ``lower * s(X) <= f(X) <= upper * s(X)`` on nonempty ``X``."""

    lower: float
    upper: float


def measure_sandwich(oracle: FunctionOracle, surrogate: FunctionOracle) -> Sandwich:
    """Exhaustive ratio range of ``oracle / surrogate`` (small ``n`` only)."""
    ft = value_table(oracle)[1:]
    st = value_table(surrogate)[1:]
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(st > 0, ft / st, np.inf)
    return Sandwich(float(ratio.min()), float(ratio.max()))
