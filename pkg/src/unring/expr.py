"""Expression language behind the command line.

Evaluation keeps one current context that only ever widens.  Subtraction
without negatives passes to the Grothendieck completion and division by a
non-unit localizes; division by zero lands in the zero ring with a warning
instead of an error.  Every widening is written to the report's context log.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .core import Element, Integers, Naturals, Rationals, RingContext, Tropical, ZeroRing, ZMod
from .dualcalc import DualRing
from .errors import NotRepresentable, ParseError, UnsupportedOperation
from .polyfrac import PolynomialRing
from .universal import InvertedSet, Localized, grothendieck, localize

__all__ = [
    "RINGS",
    "Add",
    "Div",
    "EvalError",
    "EvalReport",
    "Expr",
    "Mul",
    "Neg",
    "Num",
    "Pow",
    "Sub",
    "Sym",
    "evaluate",
    "format_report",
    "make_ring",
    "parse",
]

COLLAPSED = "number system collapsed"
RINGS = ("nat", "int", "rat", "trop", "dual", "polyrat", "zmod:n")


class EvalError(ValueError):
    """Symbol or flag that makes no sense for the chosen ring."""


# -- syntax tree ----------------------------------------------------------------


@dataclass(frozen=True)
class Expr:
    offset: int = field(default=0, compare=False, kw_only=True)


@dataclass(frozen=True)
class Num(Expr):
    value: int

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Sym(Expr):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr

    def __str__(self):
        return f"Neg({self.operand})"


@dataclass(frozen=True)
class _Binary(Expr):
    left: Expr
    right: Expr

    def __str__(self):
        return f"{type(self).__name__}({self.left}, {self.right})"


class Add(_Binary):
    pass


class Sub(_Binary):
    pass


class Mul(_Binary):
    pass


class Div(_Binary):
    """``offset`` is the byte position of the slash."""


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int

    def __str__(self):
        return f"Pow({self.base}, {self.exponent})"


# -- parser ----------------------------------------------------------------------
#   expr   := term (('+' | '-') term)*
#   term   := factor (('*' | '/') factor)*
#   factor := '-' factor | power
#   power  := atom ('^' '-'? int)?
#   atom   := number | ident | '(' expr ')'
#   number := int ('/' int)?       a literal fraction, unless the int is raised to a power

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    offset: int


def _tokenize(text: str) -> list[_Tok]:
    raw = text.encode()
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", len(text[:pos].encode()))
        kind = m.lastgroup
        tokens.append(_Tok(kind, m.group(kind), len(text[: m.start(kind)].encode())))
        pos = m.end()
    tokens.append(_Tok("end", "", len(raw)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.tokens[self.i]

    def peek(self, k: int = 0) -> _Tok:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def at(self, text: str, k: int = 0) -> bool:
        t = self.peek(k)
        return t.kind == "op" and t.text == text

    def advance(self) -> _Tok:
        t = self.tok
        self.i += 1
        return t

    def fail(self, message: str):
        t = self.tok
        what = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"{message}, found {what}", t.offset)

    def expect_int(self) -> _Tok:
        if self.tok.kind != "int":
            self.fail("expected an integer")
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            self.fail("expected an operator")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance()
            cls = Add if op.text == "+" else Sub
            e = cls(e, self.term(), offset=op.offset)
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.at("*") or self.at("/"):
            op = self.advance()
            cls = Mul if op.text == "*" else Div
            e = cls(e, self.factor(), offset=op.offset)
        return e

    def factor(self) -> Expr:
        if self.at("-"):
            op = self.advance()
            return Neg(self.factor(), offset=op.offset)
        return self.power()

    def power(self) -> Expr:
        e = self.atom()
        if self.at("^"):
            op = self.advance()
            sign = 1
            if self.at("-"):
                self.advance()
                sign = -1
            e = Pow(e, sign * int(self.expect_int().text), offset=op.offset)
        return e

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "int":
            self.advance()
            num = Num(int(t.text), offset=t.offset)
            if self.at("/") and self.peek(1).kind == "int" and not self.at("^", 2):
                slash = self.advance()
                den = self.advance()
                return Div(num, Num(int(den.text), offset=den.offset), offset=slash.offset)
            return num
        if t.kind == "ident":
            self.advance()
            return Sym(t.text, offset=t.offset)
        if self.at("("):
            self.advance()
            e = self.expr()
            if not self.at(")"):
                self.fail("expected ')'")
            self.advance()
            return e
        self.fail("expected a number, symbol or '('")


def parse(text: str) -> Expr:
    """Parse an arithmetic expression; raises :class:`ParseError` with a byte offset."""
    return _Parser(text).parse()


# -- evaluation --------------------------------------------------------------------


def make_ring(kind: str) -> RingContext:
    if kind == "nat":
        return Naturals()
    if kind == "int":
        return Integers()
    if kind == "rat":
        return Rationals()
    if kind == "trop":
        return Tropical()
    if kind == "dual":
        return DualRing(Rationals())
    if kind == "polyrat":
        poly = PolynomialRing(Rationals(), "x")
        return Localized(poly, InvertedSet.nonzero(poly))
    if kind.startswith("zmod:"):
        try:
            n = int(kind[5:])
        except ValueError:
            n = 0
        if n < 2:
            raise EvalError(f"zmod needs a modulus of at least 2, got {kind[5:]!r}")
        return ZMod(n)
    raise EvalError(f"unknown ring {kind!r}; choose from {', '.join(RINGS)}")


@dataclass
class EvalReport:
    value: str
    context_log: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    element: Element | None = field(default=None, repr=False, compare=False)

    @property
    def collapsed(self) -> bool:
        return isinstance(getattr(self.element, "ctx", None), ZeroRing)

    def as_dict(self) -> dict:
        return {"value": self.value, "context_log": list(self.context_log), "warnings": list(self.warnings)}


def display(element: Element) -> str:
    """Localized integer values show num/den as computed, plus the reduced form."""
    ctx = element.ctx
    if isinstance(ctx, Localized) and ctx.as_rational(element.payload) is not None:
        raw = ctx.format_unreduced(element.payload)
        reduced = ctx.format(element.payload)
        return raw if raw == reduced else f"{raw} (={reduced})"
    return str(element)


class _Evaluator:
    def __init__(self, ctx: RingContext, params: Mapping[str, Expr]):
        self.start = ctx
        self.ctx = ctx
        self.params = params
        self.log: list[str] = []
        self.warnings: list[str] = []

    def widen(self, new: RingContext) -> None:
        if new == self.ctx:
            return
        self.log.append(f"{self.ctx.name} → {new.name}")
        if isinstance(new, ZeroRing):
            self.warnings.append(COLLAPSED)
        self.ctx = new

    def lift(self, e: Element) -> Element:
        return self.ctx(e)

    def symbol(self, node: Sym) -> Element:
        name = node.name
        if name in self.params:
            return self.run(self.params[name])
        # symbols are checked against the starting ring, then carried along
        start = self.start
        if name == "dt":
            if not isinstance(start, DualRing):
                raise EvalError(f"'dt' at offset {node.offset} needs --ring dual")
            return self.lift(start.dt)
        if name == "x":
            if not (isinstance(start, Localized) and isinstance(start.base, PolynomialRing)):
                raise EvalError(f"'x' at offset {node.offset} needs --ring polyrat")
            return self.lift(start.image(start.base.x))
        raise EvalError(f"unknown symbol {name!r} at offset {node.offset}")

    def subtract(self, a: Element, b: Element) -> Element:
        try:
            return self.ctx.wrap(self.ctx._sub(a.payload, b.payload))
        except (NotRepresentable, UnsupportedOperation):
            pass
        completion = grothendieck(self.ctx)
        self.widen(ZeroRing() if completion.is_trivial() else completion)
        a, b = self.lift(a), self.lift(b)
        return self.ctx.wrap(self.ctx._sub(a.payload, b.payload))

    def divide(self, a: Element, b: Element) -> Element:
        if b.is_zero():
            self.widen(ZeroRing())
            return self.ctx.zero
        inverse = self.ctx._inverse(b.payload)
        if inverse is None:
            self.widen(localize(self.ctx, [b]))
            a, b = self.lift(a), self.lift(b)
            if isinstance(self.ctx, ZeroRing):
                return self.ctx.zero
            inverse = self.ctx._inverse(b.payload)
        return self.ctx.wrap(self.ctx._mul(a.payload, inverse))

    def power(self, a: Element, n: int) -> Element:
        if n >= 0:
            return a ** n
        return self.divide(self.ctx.one, a ** -n)

    def run(self, node: Expr) -> Element:
        if isinstance(node, Num):
            return self.ctx(node.value)
        if isinstance(node, Sym):
            return self.symbol(node)
        if isinstance(node, Neg):
            v = self.run(node.operand)
            return self.subtract(self.ctx.zero, self.lift(v))
        if isinstance(node, Pow):
            return self.power(self.run(node.base), node.exponent)
        left = self.run(node.left)
        right = self.run(node.right)
        left, right = self.lift(left), self.lift(right)
        if isinstance(node, Add):
            return left + right
        if isinstance(node, Mul):
            return left * right
        if isinstance(node, Sub):
            return self.subtract(left, right)
        if isinstance(node, Div):
            return self.divide(left, right)
        raise TypeError(f"not an expression node: {node!r}")  # pragma: no cover


def evaluate(expr: Expr | str, ring: str | RingContext = "rat",
             params: Mapping[str, str | Expr] | None = None) -> EvalReport:
    """Evaluate ``expr`` bottom-up, widening the context as needed.

    ``params`` binds extra identifiers to expressions, e.g. ``{"a": "2"}``.
    """
    if isinstance(expr, str):
        expr = parse(expr)
    ctx = make_ring(ring) if isinstance(ring, str) else ring
    bound = {}
    for name, value in (params or {}).items():
        if name in ("x", "dt"):
            raise EvalError(f"{name!r} is reserved and cannot be a parameter")
        bound[name] = parse(value) if isinstance(value, str) else value
    ev = _Evaluator(ctx, bound)
    value = ev.lift(ev.run(expr))
    return EvalReport(display(value), ev.log, ev.warnings, value)


def format_report(report: EvalReport, as_json: bool = False, color: bool = False) -> str:
    if as_json:
        return json.dumps(report.as_dict(), ensure_ascii=False) + "\n"
    dim, yellow, reset = ("\x1b[2m", "\x1b[33m", "\x1b[0m") if color else ("", "", "")
    lines = [report.value]
    lines += [f"{dim}  context: {step}{reset}" for step in report.context_log]
    lines += [f"{yellow}warning: {w}{reset}" for w in report.warnings]
    return "\n".join(lines) + "\n"

