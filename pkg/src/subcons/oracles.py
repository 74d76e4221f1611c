"""Set-function oracles and the built-in function catalog.

Every oracle is an immutable value object: ``eval`` is pure and may be called
from many threads at once. Gains are always computed by subtraction, so
``gain(j, X) == eval(X | j) - eval(X)`` holds bit for bit.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Callable, ClassVar, Sequence

import numpy as np

from .errors import ParameterError, SchemaError
from .sets import GroundSet, SetLike, SubsetState, members

__all__ = [
    "FunctionOracle",
    "Modular",
    "FacilityLocation",
    "SaturatedSum",
    "BipartiteNeighborhood",
    "SqrtModular",
    "CardTruncation",
    "Truncation",
    "Sum",
    "HardnessPlain",
    "HardnessHidden",
    "Restricted",
    "CustomOracle",
    "truncate",
    "oracle_from_dict",
    "CATALOG",
]


class FunctionOracle(ABC):
    """A set function over ``{0, ..., n-1}``.

    Subclasses implement :meth:`_value` on raw bitmasks; the public
    :meth:`eval` validates the subset first.
    """

    kind: ClassVar[str] = "abstract"

    def __init__(self, n: int):
        self.ground = GroundSet(int(n))

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def full(self) -> int:
        return self.ground.full

    @abstractmethod
    def _value(self, bits: int) -> float: ...

    def eval(self, X: SetLike) -> float:
        return self._value(self.ground.check(X))

    __call__ = eval

    def gain(self, j: int, X: SetLike) -> float:
        if not 0 <= j < self.n:
            raise ParameterError(f"element {j} outside ground set of size {self.n}")
        bits = self.ground.check(X)
        return self._value(bits | (1 << j)) - self._value(bits)

    def singletons(self) -> np.ndarray:
        return np.array([self._value(1 << j) for j in range(self.n)], dtype=float)

    def chain_values(self, order: Sequence[int]) -> np.ndarray:
        """Values of the nested prefixes ``{order[0]}, {order[0], order[1]}, ...``."""
        out = np.empty(len(order))
        bits = 0
        for i, j in enumerate(order):
            bits |= 1 << j
            out[i] = self._value(bits)
        return out

    def modular_weights(self) -> np.ndarray | None:
        """Per-element weights when the oracle is known to be modular, else ``None``."""
        return None

    def params(self) -> dict[str, Any]:
        return {}

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "n": self.n, **self.params()}

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n})"


def _vector(values, n: int | None, name: str) -> np.ndarray:
    w = np.asarray(values, dtype=float)
    if w.ndim != 1 or (n is not None and w.shape[0] != n):
        raise ParameterError(f"{name} must be a vector of length {n}")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise ParameterError(f"{name} must be finite and non-negative")
    w.setflags(write=False)
    return w


def _matrix(values, name: str) -> np.ndarray:
    S = np.asarray(values, dtype=float)
    if S.ndim != 2 or S.shape[0] == 0 or S.shape[1] == 0:
        raise ParameterError(f"{name} must be a non-empty 2-d matrix")
    if not np.all(np.isfinite(S)) or np.any(S < 0):
        raise ParameterError(f"{name} must be finite and non-negative")
    S = np.ascontiguousarray(S)
    S.setflags(write=False)
    return S


class Modular(FunctionOracle):
    kind = "modular"

    def __init__(self, weights):
        self.weights = _vector(weights, None, "weights")
        super().__init__(self.weights.shape[0])

    def _value(self, bits: int) -> float:
        w = self.weights
        total = 0.0
        for j in members(bits):
            total += w[j]
        return float(total)

    def modular_weights(self) -> np.ndarray:
        return self.weights

    def params(self):
        return {"weights": self.weights.tolist()}


class SqrtModular(FunctionOracle):
    """``sqrt(w(X))``: concave over modular."""

    kind = "sqrt_modular"

    def __init__(self, weights):
        self.weights = _vector(weights, None, "weights")
        super().__init__(self.weights.shape[0])

    def _value(self, bits: int) -> float:
        total = 0.0
        for j in members(bits):
            total += self.weights[j]
        return math.sqrt(total)

    def params(self):
        return {"weights": self.weights.tolist()}


class FacilityLocation(FunctionOracle):
    """``sum_i max_{j in X} S[i, j]`` over the rows of a similarity matrix."""

    kind = "facility_location"

    def __init__(self, similarity):
        self.similarity = _matrix(similarity, "similarity")
        super().__init__(self.similarity.shape[1])

    def _value(self, bits: int) -> float:
        if not bits:
            return 0.0
        idx = members(bits)
        return float(self.similarity[:, idx].max(axis=1).sum())

    def chain_values(self, order):
        S = self.similarity
        best = np.zeros(S.shape[0])
        out = np.empty(len(order))
        for i, j in enumerate(order):
            np.maximum(best, S[:, j], out=best)
            out[i] = best.sum()
        return out

    def params(self):
        return {"similarity": self.similarity.tolist()}


class SaturatedSum(FunctionOracle):
    """``sum_i min(sum_{j in X} S[i, j], alpha * sum_j S[i, j])``."""

    kind = "saturated_sum"

    def __init__(self, similarity, alpha: float):
        self.similarity = _matrix(similarity, "similarity")
        if not 0 < alpha <= 1:
            raise ParameterError(f"saturation fraction must lie in (0, 1], got {alpha}")
        self.alpha = float(alpha)
        self._caps = self.alpha * self.similarity.sum(axis=1)
        super().__init__(self.similarity.shape[1])

    def _value(self, bits: int) -> float:
        if not bits:
            return 0.0
        idx = members(bits)
        return float(np.minimum(self.similarity[:, idx].sum(axis=1), self._caps).sum())

    def params(self):
        return {"similarity": self.similarity.tolist(), "alpha": self.alpha}


class BipartiteNeighborhood(FunctionOracle):
    """Weighted size of the neighborhood of ``X`` in a bipartite graph.

    Left vertices are the ground set (utterances), right vertices are words;
    ``adjacency[j]`` lists the words of utterance ``j``.
    """

    kind = "bipartite_neighborhood"

    def __init__(self, adjacency: Sequence[Sequence[int]], num_words: int, word_weights=None):
        self.num_words = int(num_words)
        if self.num_words < 1:
            raise ParameterError("bipartite graph needs at least one word")
        adj = []
        for words in adjacency:
            ws = tuple(sorted(set(int(w) for w in words)))
            if any(not 0 <= w < self.num_words for w in ws):
                raise ParameterError("word id out of range")
            adj.append(ws)
        self.adjacency = tuple(adj)
        self._word_masks = tuple(sum(1 << w for w in ws) for ws in adj)
        if word_weights is None:
            self.word_weights = None
        else:
            self.word_weights = _vector(word_weights, self.num_words, "word_weights")
        super().__init__(len(adj))

    def _measure(self, words: int) -> float:
        if self.word_weights is None:
            return float(words.bit_count())
        total = 0.0
        for w in members(words):
            total += self.word_weights[w]
        return float(total)

    def _value(self, bits: int) -> float:
        words = 0
        for j in members(bits):
            words |= self._word_masks[j]
        return self._measure(words)

    def chain_values(self, order):
        words = 0
        out = np.empty(len(order))
        for i, j in enumerate(order):
            words |= self._word_masks[j]
            out[i] = self._measure(words)
        return out

    def params(self):
        d = {"adjacency": [list(ws) for ws in self.adjacency], "num_words": self.num_words}
        if self.word_weights is not None:
            d["word_weights"] = self.word_weights.tolist()
        return d


class CardTruncation(FunctionOracle):
    """``min(|X|, alpha)``."""

    kind = "card_truncation"

    def __init__(self, n: int, alpha: float):
        super().__init__(n)
        if alpha <= 0:
            raise ParameterError("cap must be positive")
        self.alpha = float(alpha)

    def _value(self, bits: int) -> float:
        return float(min(bits.bit_count(), self.alpha))

    def params(self):
        return {"alpha": self.alpha}


class Truncation(FunctionOracle):
    """``min(inner(X), alpha)``; preserves monotone submodularity."""

    kind = "truncation"

    def __init__(self, inner: FunctionOracle, alpha: float):
        super().__init__(inner.n)
        if not alpha > 0:
            raise ParameterError(f"truncation cap must be positive, got {alpha}")
        self.inner = inner
        self.alpha = float(alpha)

    def _value(self, bits: int) -> float:
        return min(self.inner._value(bits), self.alpha)

    def params(self):
        return {"inner": self.inner.to_dict(), "alpha": self.alpha}


def truncate(oracle: FunctionOracle, alpha: float) -> Truncation:
    """Cap ``oracle`` at ``alpha`` so that ``{g >= alpha}`` becomes ``{g' = g'(V)}``."""
    if not alpha > 0:
        raise ParameterError(f"truncation cap must be positive, got {alpha}")
    top = oracle._value(oracle.full)
    if alpha > top + 1e-9:
        raise ParameterError(f"truncation cap {alpha} exceeds oracle(V) = {top}")
    return Truncation(oracle, alpha)


class Sum(FunctionOracle):
    kind = "sum"

    def __init__(self, oracles: Sequence[FunctionOracle]):
        oracles = tuple(oracles)
        if not oracles:
            raise ParameterError("Sum needs at least one oracle")
        n = oracles[0].n
        if any(o.n != n for o in oracles):
            raise ParameterError("summed oracles must share one ground set")
        super().__init__(n)
        self.oracles = oracles

    def _value(self, bits: int) -> float:
        total = 0.0
        for o in self.oracles:
            total += o._value(bits)
        return total

    def modular_weights(self):
        parts = [o.modular_weights() for o in self.oracles]
        if any(p is None for p in parts):
            return None
        return np.sum(parts, axis=0)

    def params(self):
        return {"oracles": [o.to_dict() for o in self.oracles]}


class HardnessPlain(FunctionOracle):
    """``kappa * min(|X|, alpha) + (1 - kappa) * |X|``."""

    kind = "hardness_plain"

    def __init__(self, n: int, kappa: float, alpha: int):
        super().__init__(n)
        if not 0 <= kappa <= 1:
            raise ParameterError("kappa must lie in [0, 1]")
        if alpha < 1:
            raise ParameterError("alpha must be at least 1")
        self.kappa = float(kappa)
        self.alpha = int(alpha)

    def _value(self, bits: int) -> float:
        k = bits.bit_count()
        return self.kappa * min(k, self.alpha) + (1.0 - self.kappa) * k

    def params(self):
        return {"kappa": self.kappa, "alpha": self.alpha}


class HardnessHidden(FunctionOracle):
    """``kappa * min(beta + |X - R|, |X|, alpha) + (1 - kappa) * |X|`` with ``|R| = alpha``."""

    kind = "hardness_hidden"

    def __init__(self, n: int, kappa: float, alpha: int, beta: int, hidden: Sequence[int]):
        super().__init__(n)
        if not 0 <= kappa <= 1:
            raise ParameterError("kappa must lie in [0, 1]")
        hidden = tuple(sorted(set(int(r) for r in hidden)))
        if len(hidden) != alpha or any(not 0 <= r < n for r in hidden):
            raise ParameterError("hidden set must hold alpha distinct elements of V")
        if beta < 0:
            raise ParameterError("beta must be non-negative")
        self.kappa = float(kappa)
        self.alpha = int(alpha)
        self.beta = int(beta)
        self.hidden = hidden
        self._outside = self.full & ~sum(1 << r for r in hidden)

    def _value(self, bits: int) -> float:
        k = bits.bit_count()
        capped = min(self.beta + (bits & self._outside).bit_count(), k, self.alpha)
        return self.kappa * capped + (1.0 - self.kappa) * k

    def params(self):
        return {"kappa": self.kappa, "alpha": self.alpha, "beta": self.beta, "hidden": list(self.hidden)}


class Restricted(FunctionOracle):
    """``inner`` seen on the sub-ground-set ``keep`` (re-indexed ``0..len(keep)-1``)."""

    kind = "restricted"

    def __init__(self, inner: FunctionOracle, keep: Sequence[int]):
        keep = tuple(keep)
        if not keep or len(set(keep)) != len(keep) or any(not 0 <= k < inner.n for k in keep):
            raise ParameterError("keep must list distinct elements of the inner ground set")
        super().__init__(len(keep))
        self.inner = inner
        self.keep = keep

    def lift(self, bits: int) -> int:
        out = 0
        for j in members(bits):
            out |= 1 << self.keep[j]
        return out

    def _value(self, bits: int) -> float:
        return self.inner._value(self.lift(bits))

    def modular_weights(self):
        w = self.inner.modular_weights()
        return None if w is None else w[list(self.keep)]

    def params(self):
        return {"inner": self.inner.to_dict(), "keep": list(self.keep)}


class CustomOracle(FunctionOracle):
    """Wrap an arbitrary ``fn(SubsetState) -> float``; not serializable."""

    kind = "custom"

    def __init__(self, n: int, fn: Callable[[SubsetState], float], name: str = "custom"):
        super().__init__(n)
        self.fn = fn
        self.name = name

    def _value(self, bits: int) -> float:
        return float(self.fn(SubsetState(bits)))

    def to_dict(self):
        raise SchemaError(f"custom oracle {self.name!r} cannot be serialized")


def _load_matrix(d: dict, key: str, base_dir: Path | None):
    if key in d:
        return d[key]
    ref = d.get(key + "_csv")
    if ref is None:
        raise SchemaError(f"missing {key!r} (or {key}_csv)")
    path = Path(ref)
    if base_dir is not None and not path.is_absolute():
        path = base_dir / path
    return np.loadtxt(path, delimiter=",", ndmin=2)


def oracle_from_dict(d: dict[str, Any], base_dir: Path | None = None) -> FunctionOracle:
    """Rebuild a catalog oracle from its ``to_dict`` form."""
    try:
        kind = d["kind"]
        if kind == "modular":
            return Modular(d["weights"])
        if kind == "sqrt_modular":
            return SqrtModular(d["weights"])
        if kind == "facility_location":
            return FacilityLocation(_load_matrix(d, "similarity", base_dir))
        if kind == "saturated_sum":
            return SaturatedSum(_load_matrix(d, "similarity", base_dir), d["alpha"])
        if kind == "bipartite_neighborhood":
            return BipartiteNeighborhood(d["adjacency"], d["num_words"], d.get("word_weights"))
        if kind == "card_truncation":
            return CardTruncation(d["n"], d["alpha"])
        if kind == "truncation":
            return Truncation(oracle_from_dict(d["inner"], base_dir), d["alpha"])
        if kind == "sum":
            return Sum([oracle_from_dict(o, base_dir) for o in d["oracles"]])
        if kind == "hardness_plain":
            return HardnessPlain(d["n"], d["kappa"], d["alpha"])
        if kind == "hardness_hidden":
            return HardnessHidden(d["n"], d["kappa"], d["alpha"], d["beta"], d["hidden"])
        if kind == "restricted":
            return Restricted(oracle_from_dict(d["inner"], base_dir), d["keep"])
    except KeyError as exc:
        raise SchemaError(f"oracle of kind {d.get('kind')!r} is missing field {exc}") from None
    raise SchemaError(f"unknown oracle kind {d.get('kind')!r}")


CATALOG = (
    Modular,
    FacilityLocation,
    SaturatedSum,
    BipartiteNeighborhood,
    SqrtModular,
    CardTruncation,
    Truncation,
    Sum,
    HardnessPlain,
    HardnessHidden,
)
