"""Univariate polynomials and rational functions over a commutative ring.

Two notions of equality for ``P/Q`` live side by side: fraction equality
(cross-multiplication in the polynomial ring) and function equality (pointwise
values on a sample, where a vanishing denominator makes a side undefined).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import Element, Kind, RingContext
from .errors import CancellationNotGuaranteed, ContextMismatch

__all__ = [
    "FunctionComparison",
    "FunctionVerdict",
    "Polynomial",
    "PolynomialRing",
    "RationalFunction",
    "formal_derivative",
    "poly_add",
    "poly_eval",
    "poly_mul",
    "ratfunc_eq_as_fractions",
    "ratfunc_eq_as_functions",
]


class Polynomial(Element):
    """Element of a :class:`PolynomialRing`; payload is the coefficient tuple,
    lowest degree first, with trailing zeros stripped."""

    __slots__ = ()

    @property
    def base(self) -> RingContext:
        return self.ctx.base

    @property
    def var(self) -> str:
        return self.ctx.var

    @property
    def coeffs(self) -> list[Element]:
        return [self.ctx.base.wrap(c) for c in self.payload]

    @property
    def degree(self) -> int | None:
        """None for the zero polynomial."""
        return len(self.payload) - 1 if self.payload else None

    def coeff(self, k: int) -> Element:
        base = self.ctx.base
        return base.wrap(self.payload[k]) if 0 <= k < len(self.payload) else base.zero

    def __call__(self, x) -> Element:
        return poly_eval(self, x)


@dataclass(frozen=True)
class PolynomialRing(RingContext):
    base: RingContext = field()
    var: str = "x"

    kind = Kind.POLYNOMIAL
    element_class = Polynomial

    @property
    def name(self):
        return f"{self.base.name}[{self.var}]"

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
    def is_domain(self):
        return self.base.is_domain

    @property
    def additively_cancellative(self):
        return self.base.additively_cancellative

    @property
    def x(self) -> Polynomial:
        """The indeterminate itself."""
        return self.wrap(self._strip((self.base._zero(), self.base._one())))

    def _strip(self, coeffs: Sequence) -> tuple:
        zero = self.base._zero()
        coeffs = list(coeffs)
        while coeffs and self.base._eq(coeffs[-1], zero):
            coeffs.pop()
        return tuple(coeffs)

    def from_coeffs(self, coeffs: Iterable) -> Polynomial:
        """Build ``c0 + c1*x + c2*x^2 + ...`` from raw values or base elements."""
        return self.wrap(self._strip(self.base(c).payload for c in coeffs))

    def _coerce(self, value):
        if isinstance(value, (list, tuple)):
            return self._strip(self.base(c).payload for c in value)
        return self.embed(self.base._coerce(value))

    def embed(self, payload):
        return self._strip((payload,))

    def _zero(self):
        return ()

    def _one(self):
        return self._strip((self.base._one(),))

    def _add(self, p, q):
        b = self.base
        n = max(len(p), len(q))
        zero = b._zero()
        return self._strip(
            b._add(p[i] if i < len(p) else zero, q[i] if i < len(q) else zero) for i in range(n)
        )

    def _mul(self, p, q):
        b = self.base
        if not p or not q:
            return ()
        out = [b._zero()] * (len(p) + len(q) - 1)
        for i, c in enumerate(p):
            for j, d in enumerate(q):
                out[i + j] = b._add(out[i + j], b._mul(c, d))
        return self._strip(out)

    def _neg(self, p):
        return tuple(self.base._neg(c) for c in p)

    def _eq(self, p, q):
        return len(p) == len(q) and all(self.base._eq(c, d) for c, d in zip(p, q))

    def _key(self, p):
        return tuple(self.base._key(c) for c in p)

    def _inverse(self, p):
        if len(p) != 1:
            return None
        inv = self.base._inverse(p[0])
        return None if inv is None else (inv,)

    def format(self, p):
        if not p:
            return "0"
        base = self.base
        terms: list[tuple[bool, str]] = []
        for k, c in enumerate(p):
            if base._eq(c, base._zero()):
                continue
            q = base.as_rational(c)
            negative = q is not None and q < 0
            mag = base._neg(c) if negative else c
            text = base.format(mag)
            if q is None and any(ch in text for ch in " +-"):
                text = f"({text})"
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            if not mono:
                terms.append((negative, text))
            elif base._eq(mag, base._one()):
                terms.append((negative, mono))
            else:
                terms.append((negative, f"{text}*{mono}"))
        first_neg, first = terms[0]
        out = ("-" if first_neg else "") + first
        for negative, text in terms[1:]:
            out += (" - " if negative else " + ") + text
        return out


def _check_ring(p: Element, q: Element) -> None:
    if p.ctx != q.ctx:
        raise ContextMismatch(p.ctx, q.ctx)


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    _check_ring(p, q)
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    _check_ring(p, q)
    return p * q


def poly_eval(p: Polynomial, x) -> Element:
    """Horner evaluation.

    ``x`` may live in the coefficient ring or in any context that widens it
    (dual numbers, another polynomial ring over the same base); coefficients
    are mapped there first.
    """
    base = p.ctx.base
    if not isinstance(x, Element):
        x = base(x)
    target = x.ctx
    if target != base and not target.extends(base):
        raise ContextMismatch(base, target)
    acc = target.zero
    for c in reversed(p.payload):
        acc = acc * x + target.image(base.wrap(c))
    return acc


def formal_derivative(p: Polynomial) -> Polynomial:
    """Coefficientwise derivative: sum k*c_k*x^(k-1)."""
    base = p.ctx.base
    return p.ctx.wrap(p.ctx._strip(
        base._mul(base._coerce(k), c) for k, c in enumerate(p.payload) if k > 0
    ))


@dataclass(frozen=True)
class RationalFunction:
    num: Polynomial
    den: Polynomial

    def __post_init__(self):
        _check_ring(self.num, self.den)
        if self.den.degree is None:
            raise ZeroDivisionError("rational function with zero denominator")

    @property
    def ring(self) -> PolynomialRing:
        return self.num.ctx

    def defined_at(self, x) -> bool:
        return not self.den(x).is_zero()

    def __str__(self):
        den = str(self.den)
        num = str(self.num)
        if self.den == self.ring.one:
            return num
        wrap = lambda s: f"({s})" if any(ch in s for ch in " +-*") else s
        return f"{wrap(num)}/{wrap(den)}"


def ratfunc_eq_as_fractions(f: RationalFunction, g: RationalFunction) -> bool:
    """f == g as fractions: f.num*g.den == g.num*f.den in the polynomial ring."""
    _check_ring(f.num, g.num)
    if not f.ring.base.is_domain:
        raise CancellationNotGuaranteed(
            f"{f.ring.base.name} is not an integral domain; cross-multiplication is not an equality test"
        )
    return f.num * g.den == g.num * f.den


class FunctionVerdict(enum.Enum):
    EQUAL = "equal"
    UNEQUAL = "unequal"
    DOMAIN_MISMATCH = "domain_mismatch"


@dataclass(frozen=True)
class FunctionComparison:
    verdict: FunctionVerdict
    witness: Element | None = None


def ratfunc_eq_as_functions(f: RationalFunction, g: RationalFunction, sample: Iterable) -> FunctionComparison:
    """Compare f and g pointwise on ``sample``.

    The first point where exactly one side is undefined gives DOMAIN_MISMATCH;
    the first where both are defined but differ gives UNEQUAL.
    """
    _check_ring(f.num, g.num)
    base = f.ring.base
    points = [base(s) for s in sample]
    if not points:
        raise ValueError("sample must be non-empty")
    for s in points:
        df, dg = f.den(s), g.den(s)
        f_undefined, g_undefined = df.is_zero(), dg.is_zero()
        if f_undefined != g_undefined:
            return FunctionComparison(FunctionVerdict.DOMAIN_MISMATCH, s)
        if f_undefined:
            continue
        # compare num_f/den_f with num_g/den_g without dividing
        if f.num(s) * dg != g.num(s) * df:
            return FunctionComparison(FunctionVerdict.UNEQUAL, s)
    return FunctionComparison(FunctionVerdict.EQUAL)
