"""Bitmask subsets of a ground set ``V = {0, ..., n-1}``.

Python integers are arbitrary precision, so the same representation serves
both the small-``n`` fast path and wide ground sets (a few hundred elements).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

from .errors import InstanceError

#: Absolute tolerance for every feasibility comparison in the package.
TOL = 1e-9


def members(bits: int) -> list[int]:
    """Element ids set in ``bits``, ascending."""
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def mask_of(elements: Iterable[int]) -> int:
    bits = 0
    for j in elements:
        if j < 0:
            raise InstanceError(f"negative element id {j}")
        bits |= 1 << j
    return bits


@dataclass(frozen=True, order=True)
class SubsetState:
    """An immutable subset stored as a bitmask with its cardinality cached."""

    bits: int = 0
    card: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        if self.bits < 0:
            raise InstanceError("subset bitmask must be non-negative")
        object.__setattr__(self, "card", self.bits.bit_count())

    @classmethod
    def of(cls, elements: Iterable[int] = ()) -> "SubsetState":
        return cls(mask_of(elements))

    @classmethod
    def full(cls, n: int) -> "SubsetState":
        return cls((1 << n) - 1)

    def __iter__(self) -> Iterator[int]:
        return iter(members(self.bits))

    def __len__(self) -> int:
        return self.card

    def __contains__(self, j: object) -> bool:
        return isinstance(j, int) and j >= 0 and bool(self.bits >> j & 1)

    def __repr__(self) -> str:
        return f"SubsetState({set(self) if self.bits else '{}'})"

    def add(self, j: int) -> "SubsetState":
        return SubsetState(self.bits | (1 << j))

    def remove(self, j: int) -> "SubsetState":
        return SubsetState(self.bits & ~(1 << j))

    def union(self, other: "SubsetState") -> "SubsetState":
        return SubsetState(self.bits | other.bits)

    def elements(self) -> list[int]:
        return members(self.bits)


SetLike = Union[SubsetState, int, Iterable[int]]


def as_bits(X: SetLike) -> int:
    """Coerce a subset given as ``SubsetState``, raw mask or iterable to a mask."""
    if isinstance(X, SubsetState):
        return X.bits
    if isinstance(X, bool):
        raise InstanceError("booleans are not subsets")
    if isinstance(X, int):
        if X < 0:
            raise InstanceError("subset bitmask must be non-negative")
        return X
    return mask_of(X)


@dataclass(frozen=True)
class GroundSet:
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InstanceError(f"ground set needs n >= 1, got {self.n}")

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def check(self, X: SetLike) -> int:
        bits = as_bits(X)
        if bits >> self.n:
            raise InstanceError(
                f"subset has element {bits.bit_length() - 1} outside ground set of size {self.n}"
            )
        return bits

    def subsets(self) -> Iterator[SubsetState]:
        for bits in range(1 << self.n):
            yield SubsetState(bits)
