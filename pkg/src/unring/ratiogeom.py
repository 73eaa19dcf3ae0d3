"""Ratios, oriented ratios and fractions as parameterizations of the plane.

A ratio is a line through the origin (scaling by any non-zero number), an
oriented ratio is a ray (scaling by positive numbers only).  Everything is
exact; the twist of the line bundle over the ratios shows up as the sign
``monodromy`` returns after transporting a representative around a loop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import AmbiguousTransport, OpenLoopError, VerticalAxisError

__all__ = [
    "OrientedRatio",
    "PlanePoint",
    "PrimitiveDirection",
    "Ratio",
    "monodromy",
    "oriented_eq",
    "oriented_lift",
    "ratio_eq",
    "to_angle",
    "to_fraction",
]


@dataclass(frozen=True)
class PlanePoint:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def is_origin(self) -> bool:
        return self.a == 0 and self.b == 0


@dataclass(frozen=True)
class PrimitiveDirection:
    """Integer vector (p, q) with gcd 1, sign kept."""

    p: int
    q: int

    def __post_init__(self):
        if (self.p, self.q) == (0, 0):
            raise ValueError("(0, 0) is not a direction")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"({self.p}, {self.q}) is not primitive")

    @classmethod
    def of(cls, a, b) -> PrimitiveDirection:
        a, b = Fraction(a), Fraction(b)
        if a == 0 and b == 0:
            raise ValueError("(0, 0) is not a direction")
        scale = math.lcm(a.denominator, b.denominator)
        p, q = int(a * scale), int(b * scale)
        g = math.gcd(p, q)
        return cls(p // g, q // g)

    def __neg__(self):
        return PrimitiveDirection(-self.p, -self.q)

    def dot(self, other: PrimitiveDirection) -> int:
        return self.p * other.p + self.q * other.q

    def canonical(self) -> PrimitiveDirection:
        """Display sign: q > 0, or q == 0 and p > 0."""
        if self.q < 0 or (self.q == 0 and self.p < 0):
            return -self
        return self

    def __str__(self):
        return f"{self.p}:{self.q}"


class Ratio:
    """Unoriented ratio a:b; equal to c:d when a*d == b*c."""

    __slots__ = ("rep",)

    def __init__(self, a, b=None):
        rep = a if isinstance(a, PlanePoint) else PlanePoint(a, b)
        if rep.is_origin():
            raise ValueError("(0, 0) does not determine a ratio")
        object.__setattr__(self, "rep", rep)

    def __setattr__(self, name, value):
        raise AttributeError("ratios are immutable")

    @property
    def a(self) -> Fraction:
        return self.rep.a

    @property
    def b(self) -> Fraction:
        return self.rep.b

    def primitive(self) -> PrimitiveDirection:
        """Primitive integer representative, keeping the sign of ``rep``."""
        return PrimitiveDirection.of(self.a, self.b)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return _equal(self, other)

    def __hash__(self):
        return hash((type(self), self._canonical_key()))

    def _canonical_key(self):
        return self.primitive().canonical()

    def __repr__(self):
        return f"{type(self).__name__}({self.a}, {self.b})"

    def __str__(self):
        return str(self.primitive().canonical())


class OrientedRatio(Ratio):
    """Ray through (a, b); equal to (c, d) only for a positive scale factor."""

    __slots__ = ()

    def _canonical_key(self):
        return self.primitive()

    def __str__(self):
        return str(self.primitive())


def _equal(x: Ratio, y: Ratio) -> bool:
    if isinstance(x, OrientedRatio):
        return x.primitive() == y.primitive()
    return x.a * y.b == x.b * y.a


def ratio_eq(x: Ratio, y: Ratio) -> bool:
    return x.a * y.b == x.b * y.a


def oriented_eq(x: OrientedRatio, y: OrientedRatio) -> bool:
    return x.primitive() == y.primitive()


def to_fraction(x: Ratio) -> Fraction:
    """b/a: the first coordinate is the denominator."""
    if x.a == 0:
        raise VerticalAxisError(f"{x!r} lies on the vertical axis: no fraction")
    return x.b / x.a


def to_angle(x: Ratio) -> float:
    """Polar angle, for display only.

    Oriented ratios map to [0, 2*pi); unoriented ratios to [0, pi).
    """
    theta = math.atan2(float(x.b), float(x.a))
    period = 2 * math.pi if isinstance(x, OrientedRatio) else math.pi
    theta = math.fmod(theta, period)
    if theta < 0:
        theta += period
    return 0.0 if theta >= period else theta


Loop = Sequence[Union[Ratio, OrientedRatio]]


def _transport(loop: Loop) -> list[PrimitiveDirection]:
    if len(loop) < 2:
        raise OpenLoopError("a loop needs at least two entries")
    oriented = isinstance(loop[0], OrientedRatio)
    if any(isinstance(r, OrientedRatio) != oriented for r in loop):
        raise TypeError("loop mixes ratios and oriented ratios")
    path = [loop[0].primitive()]
    for i, entry in enumerate(loop[1:], start=1):
        v = entry.primitive()
        d = v.dot(path[-1])
        if d == 0:
            raise AmbiguousTransport(f"entries {i - 1} and {i} are perpendicular; refine the loop")
        if oriented or d > 0:
            path.append(v)
        else:
            path.append(-v)
    return path


def monodromy(loop: Loop) -> int:
    """+1 or -1: the sign a representative picks up around a closed loop.

    At each step the next representative is the sign choice with positive dot
    product against the current one.  Oriented loops carry their own
    representative, so a closed oriented loop always returns +1.
    """
    if len(loop) < 2 or not _equal(loop[0], loop[-1]):
        raise OpenLoopError("the last entry must equal the first")
    path = _transport(loop)
    start, end = path[0], path[-1]
    if end == start:
        return 1
    if end == -start:
        return -1
    raise AssertionError("transport left the line of the starting ratio")  # pragma: no cover


def oriented_lift(loop: Sequence[Ratio], times: int = 1) -> list[OrientedRatio]:
    """Lift a ratio loop to oriented ratios by transport, going round ``times`` times.

    When the loop has monodromy -1 the lift only closes after two rounds.
    """
    if any(isinstance(r, OrientedRatio) for r in loop):
        raise TypeError("lift expects unoriented ratios")
    cycle = list(loop) * times
    # drop the repeated base point between rounds
    cycle = [r for k, r in enumerate(cycle) if k == 0 or k % len(loop) != 0]
    path = _transport(cycle)
    return [OrientedRatio(v.p, v.q) for v in path]
