"""Dual numbers R[dt]/(dt^2) and derivatives computed as exact fraction algebra.

``derivative`` expands p(x + t) in R[t] and reads the constant term of the
quotient by t.  ``seventeenth_century_quotient`` does the same with dt, where
"dividing by dt" is only reading a coefficient after checking the real part
vanished; dt itself is never inverted because it is not cancellative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .core import ADDITIVE, Cancellation, Element, Kind, RingContext, Verdict, YES
from .errors import ContextMismatch, NotDivisibleByDt, NotInvertible
from .polyfrac import Polynomial, PolynomialRing, poly_eval

__all__ = [
    "DualNumber",
    "DualRing",
    "derivative",
    "dual_add",
    "dual_inv",
    "dual_mul",
    "extend",
    "seventeenth_century_quotient",
]


class DualNumber(Element):
    """``re + eps*dt``; payload is the pair ``(re, eps)``."""

    __slots__ = ()

    @property
    def re(self) -> Element:
        return self.ctx.base.wrap(self.payload[0])

    @property
    def eps(self) -> Element:
        return self.ctx.base.wrap(self.payload[1])


@dataclass(frozen=True)
class DualRing(RingContext):
    base: RingContext = field()

    kind = Kind.DUAL
    element_class = DualNumber

    @property
    def name(self):
        return f"{self.base.name}[dt]"

    @property
    def has_zero(self):
        return self.base.has_zero

    @property
    def has_one(self):
        return self.base.has_one

    @property
    def has_negatives(self):
        return self.base.has_negatives

    @property
    def additively_cancellative(self):
        return self.base.additively_cancellative

    @property
    def dt(self) -> DualNumber:
        return self.wrap((self.base._zero(), self.base._one()))

    def _coerce(self, value):
        if isinstance(value, tuple) and len(value) == 2:
            return tuple(self.base(v).payload for v in value)
        if isinstance(value, str) and value.strip() == "dt":
            return self.dt.payload
        return self.embed(self.base._coerce(value))

    def embed(self, payload):
        return (payload, self.base._zero())

    def _zero(self):
        return (self.base._zero(), self.base._zero())

    def _one(self):
        return (self.base._one(), self.base._zero())

    def _add(self, x, y):
        b = self.base
        return (b._add(x[0], y[0]), b._add(x[1], y[1]))

    def _mul(self, x, y):
        b = self.base
        (a, e), (r, s) = x, y
        return (b._mul(a, r), b._add(b._mul(a, s), b._mul(e, r)))

    def _neg(self, x):
        return (self.base._neg(x[0]), self.base._neg(x[1]))

    def _eq(self, x, y):
        return self.base._eq(x[0], y[0]) and self.base._eq(x[1], y[1])

    def _key(self, x):
        return (self.base._key(x[0]), self.base._key(x[1]))

    def _inverse(self, x):
        # 1/(a + b dt) = 1/a - (b/a^2) dt
        b = self.base
        ia = b._inverse(x[0])
        if ia is None or not b.has_negatives:
            return None
        return (ia, b._neg(b._mul(x[1], b._mul(ia, ia))))

    def _cancellation_rule(self, d, op):
        if op == ADDITIVE:
            return YES if self.base.additively_cancellative else None
        b = self.base
        if not b.is_domain:
            return None
        if not b._eq(d[0], b._zero()):
            return YES
        if b._eq(d[1], b._zero()):
            return Cancellation(Verdict.NO, (self.zero, self.one))
        return Cancellation(Verdict.NO, (self.dt, self.zero))

    def format(self, x):
        b = self.base
        re, eps = x
        parts = []
        if not b._eq(re, b._zero()):
            parts.append(b.format(re))
        if not b._eq(eps, b._zero()):
            q = b.as_rational(eps)
            negative = q is not None and q < 0
            mag = b._neg(eps) if negative else eps
            term = "dt" if b._eq(mag, b._one()) else f"{b.format(mag)}*dt"
            if parts:
                parts.append(("- " if negative else "+ ") + term)
            else:
                parts.append(("-" if negative else "") + term)
        return " ".join(parts) if parts else "0"


def _same(x: Element, y: Element) -> None:
    if x.ctx != y.ctx:
        raise ContextMismatch(x.ctx, y.ctx)


def dual_add(x: DualNumber, y: DualNumber) -> DualNumber:
    _same(x, y)
    return x + y


def dual_mul(x: DualNumber, y: DualNumber) -> DualNumber:
    _same(x, y)
    return x * y


def dual_inv(x: DualNumber) -> DualNumber:
    inv = x.ctx._inverse(x.payload)
    if inv is None:
        raise NotInvertible(x, "not invertible: real part")
    return x.ctx.wrap(inv)


def extend(p: Polynomial, x, y) -> DualNumber:
    """Evaluate p at x + y*dt, which equals p(x) + p'(x)*y*dt."""
    base = p.ctx.base
    ring = DualRing(base)
    return poly_eval(p, ring((base(x).payload, base(y).payload)))


def derivative(p: Polynomial, x) -> Element:
    """Constant term of (p(x+t) - p(x))/t, computed in R[t]."""
    base = p.ctx.base
    x = base(x)
    T = PolynomialRing(base, "t")
    shifted = poly_eval(p, T.x + T.image(x))
    diff = shifted - T.image(poly_eval(p, x))
    if not diff.coeff(0).is_zero():
        raise AssertionError(f"p(x+t) - p(x) = {diff} is not divisible by t")
    # the quotient by t is the coefficient list shifted down; keep its constant term
    return diff.coeff(1)


def seventeenth_century_quotient(f: Polynomial | Callable[[DualNumber], DualNumber], x) -> Element:
    """(f(x+dt) - f(x))/dt, with the division done by reading the dt coefficient.

    ``f`` is normally a polynomial; any callable on dual numbers is accepted
    so that extensions which are not divisible by dt can be exhibited.
    Raises :class:`NotDivisibleByDt` when the real part of the difference is
    non-zero, since dividing there would collapse to the zero ring.
    """
    if isinstance(f, Polynomial):
        base = f.ctx.base
        ring = DualRing(base)
        x = base(x)
        apply = lambda u: poly_eval(f, u)
    else:
        x = x if isinstance(x, Element) else None
        if x is None:
            raise TypeError("callable f needs x as a ring element")
        base = x.ctx
        ring = DualRing(base)
        apply = f
    diff = apply(ring.image(x) + ring.dt) - apply(ring.image(x))
    if not diff.re.is_zero():
        raise NotDivisibleByDt(f"f(x+dt) - f(x) = {diff} has non-zero real part")
    k = diff.eps
    if isinstance(f, Polynomial) and k != derivative(f, x):
        raise AssertionError(f"dt-quotient {k} disagrees with derivative {derivative(f, x)}")
    return k
