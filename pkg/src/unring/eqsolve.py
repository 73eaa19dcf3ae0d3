"""Solve a*[] + b = c by un-adding b and un-multiplying a.

Each step widens the context only when it has to.  Un-adding in N passes to
the Grothendieck completion; un-multiplying by a non-unit localizes at ``a``,
which is the zero ring when ``a`` is zero.  The returned trace records every
step and the context it produced.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Element, RingContext, ZeroRing
from .errors import ContextMismatch, NotRepresentable, UnsupportedOperation
from .universal import grothendieck, localize

__all__ = [
    "LinearEquation",
    "ProductEquation",
    "SolveTrace",
    "TraceStep",
    "check_solution",
    "solve",
    "unadd",
    "unmultiply",
]

UNADD = "unadd"
UNMULTIPLY = "unmultiply"


@dataclass(frozen=True)
class LinearEquation:
    """a*[] + b = c with all three coefficients in one context."""

    a: Element
    b: Element
    c: Element

    def __post_init__(self):
        for e in (self.b, self.c):
            if e.ctx != self.a.ctx:
                raise ContextMismatch(self.a.ctx, e.ctx)

    @classmethod
    def over(cls, ctx: RingContext, a, b, c) -> LinearEquation:
        return cls(ctx(a), ctx(b), ctx(c))

    @property
    def ctx(self) -> RingContext:
        return self.a.ctx

    def __str__(self):
        return f"{self.a}×□ + {self.b} = {self.c}"


@dataclass(frozen=True)
class ProductEquation:
    """a*[] = rhs, the form left after un-adding."""

    a: Element
    rhs: Element

    def __post_init__(self):
        if self.rhs.ctx != self.a.ctx:
            raise ContextMismatch(self.a.ctx, self.rhs.ctx)

    @property
    def ctx(self) -> RingContext:
        return self.a.ctx

    def __str__(self):
        return f"{self.a}×□ = {self.rhs}"


@dataclass(frozen=True)
class TraceStep:
    op: str
    operand: Element
    resulting_ctx: RingContext
    result: ProductEquation | Element
    # set when a localization was built but the quotient already lived in the old context
    widened_to: RingContext | None = None
    conservative: bool = False

    def as_dict(self) -> dict:
        return {
            "op": self.op,
            "operand": str(self.operand),
            "context": self.resulting_ctx.name,
            "result": str(self.result),
            "widened_to": self.widened_to.name if self.widened_to is not None else None,
            "conservative": self.conservative,
        }


@dataclass(frozen=True)
class SolveTrace:
    start_ctx: RingContext
    steps: tuple[TraceStep, ...]
    final_ctx: RingContext
    collapsed: bool = False

    @property
    def contexts(self) -> list[RingContext]:
        return [self.start_ctx, *(s.resulting_ctx for s in self.steps)]

    def as_dict(self, value: Element) -> dict:
        return {
            "steps": [s.as_dict() for s in self.steps],
            "final_context": self.final_ctx.name,
            "value": str(value),
            "collapsed": self.collapsed,
        }


def unadd(eq: LinearEquation) -> tuple[ProductEquation, RingContext, TraceStep]:
    """a*[] + b = c  ->  a*[] = c - b.

    The right side is built directly as the difference ``c - b``; the left side
    is carried over untouched.
    """
    ctx = eq.ctx
    try:
        rhs = ctx.wrap(ctx._sub(eq.c.payload, eq.b.payload))
        widened = ctx
    except (NotRepresentable, UnsupportedOperation):
        widened = grothendieck(ctx)
        rhs = widened.wrap((eq.c.payload, eq.b.payload))
    result = ProductEquation(widened.image(eq.a), rhs)
    return result, widened, TraceStep(UNADD, eq.b, widened, result)


def unmultiply(eq: ProductEquation) -> tuple[Element, RingContext, TraceStep]:
    """a*[] = r  ->  [] = r/a, localizing at ``a`` when it is not a unit."""
    ctx, a, r = eq.ctx, eq.a, eq.rhs
    if a.is_zero():
        zero_ring = ZeroRing()
        value = zero_ring.zero
        return value, zero_ring, TraceStep(UNMULTIPLY, a, zero_ring, value)
    inverse = ctx._inverse(a.payload)
    if inverse is not None:
        value = ctx.wrap(ctx._mul(r.payload, inverse))
        return value, ctx, TraceStep(UNMULTIPLY, a, ctx, value)
    widened = localize(ctx, [a])
    if isinstance(widened, ZeroRing):
        value = widened.zero
        return value, widened, TraceStep(UNMULTIPLY, a, widened, value)
    quotient = ctx.exact_quotient(r.payload, a.payload)
    if quotient is not None:
        value = ctx.wrap(quotient)
        step = TraceStep(UNMULTIPLY, a, ctx, value, widened_to=widened, conservative=True)
        return value, ctx, step
    value = widened.wrap((r.payload, a.payload))
    return value, widened, TraceStep(UNMULTIPLY, a, widened, value)


def solve(eq: LinearEquation) -> tuple[Element, SolveTrace]:
    product_eq, _, first = unadd(eq)
    value, final_ctx, second = unmultiply(product_eq)
    trace = SolveTrace(
        start_ctx=eq.ctx,
        steps=(first, second),
        final_ctx=final_ctx,
        collapsed=isinstance(final_ctx, ZeroRing),
    )
    return value, trace


def check_solution(eq: LinearEquation, value: Element, trace: SolveTrace) -> bool:
    """Does image(a)*value + image(b) == image(c) hold in the final context?"""
    final = trace.final_ctx
    return final.image(eq.a) * final.image(value) + final.image(eq.b) == final.image(eq.c)
