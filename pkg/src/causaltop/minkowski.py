"""Exact Minkowski vectors in 1+d dimensions, signature (+, -, ..., -).

All coordinates are ``fractions.Fraction``; there are no tolerances anywhere.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import DimensionError, InvalidDiamondError

RatLike = Union[int, str, Fraction]


def rat(x: RatLike) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'num/den' string")
    return Fraction(x)


def rat_str(x: Fraction) -> str:
    """Canonical 'num/den' text, '0/1' for zero."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class Causality(enum.Enum):
    TIMELIKE = "timelike"
    NULL = "null"
    SPACELIKE = "spacelike"


class Orientation(enum.Enum):
    FUTURE = "future"
    PAST = "past"
    NEITHER = "neither"


class Cone(enum.Enum):
    FUTURE = "J+"
    PAST = "J-"
    BOTH = "J"


@dataclass(frozen=True)
class MinkVec:
    coords: tuple

    def __init__(self, *coords: RatLike):
        if len(coords) == 1 and not isinstance(coords[0], (int, str, Fraction)):
            coords = tuple(coords[0])
        if len(coords) < 2:
            raise DimensionError("a Minkowski vector needs a time and at least one space coordinate")
        object.__setattr__(self, "coords", tuple(rat(c) for c in coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def t(self) -> Fraction:
        return self.coords[0]

    @property
    def space(self) -> tuple:
        return self.coords[1:]

    def _same_dim(self, other: "MinkVec"):
        if self.dim != other.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "MinkVec") -> "MinkVec":
        self._same_dim(other)
        return MinkVec(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "MinkVec") -> "MinkVec":
        self._same_dim(other)
        return MinkVec(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "MinkVec":
        return MinkVec(tuple(-a for a in self.coords))

    def __repr__(self):
        return "MinkVec(" + ", ".join(rat_str(c) for c in self.coords) + ")"

    def to_json(self) -> list:
        return [rat_str(c) for c in self.coords]

    @classmethod
    def from_json(cls, data: Iterable[RatLike]) -> "MinkVec":
        return cls(tuple(data))


def zero(dim: int) -> MinkVec:
    return MinkVec((0,) * dim)


def eta(v: MinkVec, w: MinkVec) -> Fraction:
    v._same_dim(w)
    return v.t * w.t - sum((a * b for a, b in zip(v.space, w.space)), Fraction(0))


def classify(v: MinkVec) -> tuple:
    n = eta(v, v)
    kind = Causality.TIMELIKE if n > 0 else Causality.NULL if n == 0 else Causality.SPACELIKE
    orient = Orientation.FUTURE if v.t > 0 else Orientation.PAST if v.t < 0 else Orientation.NEITHER
    return kind, orient


def chron_lt(v: MinkVec, w: MinkVec) -> bool:
    """v << w: the displacement w - v is timelike and future-oriented."""
    return classify(w - v) == (Causality.TIMELIKE, Orientation.FUTURE)


def causal_le(p: MinkVec, q: MinkVec) -> bool:
    d = q - p
    return d.t >= 0 and eta(d, d) >= 0


def in_cone(x: MinkVec, p: MinkVec, which: Cone = Cone.BOTH) -> bool:
    which = Cone(which)
    if which is Cone.FUTURE:
        return causal_le(p, x)
    if which is Cone.PAST:
        return causal_le(x, p)
    return causal_le(p, x) or causal_le(x, p)


def diamond_contains(p: MinkVec, q: MinkVec, x: MinkVec) -> bool:
    if not causal_le(p, q):
        raise InvalidDiamondError(f"{p!r} is not causally below {q!r}")
    return causal_le(p, x) and causal_le(x, q)
