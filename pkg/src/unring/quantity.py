"""Exact quantities: a rational scalar times a monomial in base units.

Units are uninterpreted symbols; there are no conversion tables.  Scalars and
unit exponents are manipulated in parallel, so ``50 lb / 9 person`` gives
``50/9 lb/person`` and multiplying back by ``9 person`` cancels the person.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .core import Integers, Rationals
from .eqsolve import LinearEquation, SolveTrace, solve
from .errors import DimensionMismatch, ParseError, ZeroMagnitudeDivisor

__all__ = [
    "DIMENSIONLESS",
    "Quantity",
    "UnitMonomial",
    "parse_quantity",
    "q_add",
    "q_div",
    "q_mul",
    "solve_rate",
    "solve_rate_with_trace",
]


@dataclass(frozen=True)
class UnitMonomial:
    """Product of base units with non-zero integer exponents, kept sorted."""

    exponents: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        merged: dict[str, int] = {}
        for sym, k in self.exponents:
            merged[sym] = merged.get(sym, 0) + int(k)
        object.__setattr__(
            self, "exponents", tuple(sorted((s, k) for s, k in merged.items() if k != 0))
        )

    @classmethod
    def of(cls, mapping: Mapping[str, int] | None = None, **units: int) -> UnitMonomial:
        items = dict(mapping or {})
        items.update(units)
        return cls(tuple(items.items()))

    def as_dict(self) -> dict[str, int]:
        return dict(self.exponents)

    def __mul__(self, other: UnitMonomial) -> UnitMonomial:
        return UnitMonomial(self.exponents + other.exponents)

    def __truediv__(self, other: UnitMonomial) -> UnitMonomial:
        return UnitMonomial(self.exponents + tuple((s, -k) for s, k in other.exponents))

    def __pow__(self, n: int) -> UnitMonomial:
        return UnitMonomial(tuple((s, k * n) for s, k in self.exponents))

    def is_dimensionless(self) -> bool:
        return not self.exponents

    def __str__(self):
        def power(sym, k):
            return sym if k == 1 else f"{sym}^{k}"

        up = [power(s, k) for s, k in self.exponents if k > 0]
        down = [power(s, -k) for s, k in self.exponents if k < 0]
        text = "*".join(up) if up else "1"
        if down:
            text += "/" + (down[0] if len(down) == 1 else "(" + "*".join(down) + ")")
        return text


DIMENSIONLESS = UnitMonomial()


@dataclass(frozen=True)
class Quantity:
    scalar: Fraction
    unit: UnitMonomial = field(default=DIMENSIONLESS)

    def __post_init__(self):
        object.__setattr__(self, "scalar", Fraction(self.scalar))

    def __mul__(self, other):
        return q_mul(self, _as_quantity(other))

    def __rmul__(self, other):
        return q_mul(_as_quantity(other), self)

    def __truediv__(self, other):
        return q_div(self, _as_quantity(other))

    def __rtruediv__(self, other):
        return q_div(_as_quantity(other), self)

    def __add__(self, other):
        return q_add(self, _as_quantity(other))

    __radd__ = __add__

    def __neg__(self):
        return Quantity(-self.scalar, self.unit)

    def __sub__(self, other):
        return q_add(self, -_as_quantity(other))

    def __str__(self):
        q = self.scalar
        num = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        if self.unit.is_dimensionless():
            return num
        return f"{num} {self.unit}"


def _as_quantity(value) -> Quantity:
    return value if isinstance(value, Quantity) else Quantity(Fraction(value))


def q_mul(x: Quantity, y: Quantity) -> Quantity:
    return Quantity(x.scalar * y.scalar, x.unit * y.unit)


def q_div(x: Quantity, y: Quantity) -> Quantity:
    if y.scalar == 0:
        raise ZeroMagnitudeDivisor(f"zero magnitude divisor: {y}")
    return Quantity(x.scalar / y.scalar, x.unit / y.unit)


def q_add(x: Quantity, y: Quantity) -> Quantity:
    if x.unit != y.unit:
        raise DimensionMismatch(x.unit, y.unit)
    return Quantity(x.scalar + y.scalar, x.unit)


def solve_rate_with_trace(total: Quantity, count: Quantity) -> tuple[Quantity, SolveTrace]:
    """Solve total = rate * count; the scalar goes through the equation solver."""
    if count.scalar == 0:
        raise ZeroMagnitudeDivisor(f"zero magnitude divisor: {count}")
    integral = total.scalar.denominator == 1 and count.scalar.denominator == 1
    ctx = Integers() if integral else Rationals()
    value, trace = solve(LinearEquation.over(ctx, count.scalar, 0, total.scalar))
    scalar = trace.final_ctx.image(value)
    scalar = scalar.ctx.as_rational(scalar.payload)
    rate = Quantity(scalar, total.unit / count.unit)
    assert rate == q_div(total, count)
    return rate, trace


def solve_rate(total: Quantity, count: Quantity) -> Quantity:
    return solve_rate_with_trace(total, count)[0]


# -- literal grammar ------------------------------------------------------------
#   qexpr    := qterm (('+' | '-') qterm)*
#   qterm    := quantity (('*' | '/') quantity)*
#   quantity := '-'? int ('/' int)? unitterm?      (no blanks inside int/int)
#   unitterm := factor (('*' | '/') factor)*       (continues only before a symbol)
#   factor   := symbol ('^' '-'? int)?

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<sym>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^]))")


def _tokenize(text: str) -> list[tuple[str, str, int, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", len(text[:bad].encode()))
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), len(text[:start].encode()), m.end()))
        pos = m.end()
    return tokens


class _QuantityParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, k: int = 0):
        j = self.i + k
        return self.tokens[j] if j < len(self.tokens) else None

    def error(self, message: str):
        tok = self.peek()
        offset = tok[2] if tok else len(self.text.encode())
        raise ParseError(message, offset)

    def take(self, kind: str, value: str | None = None):
        tok = self.peek()
        if tok is None or tok[0] != kind or (value is not None and tok[1] != value):
            self.error(f"expected {value or kind}")
        self.i += 1
        return tok

    def is_op(self, value: str, k: int = 0) -> bool:
        tok = self.peek(k)
        return tok is not None and tok[0] == "op" and tok[1] == value

    def parse(self) -> Quantity:
        value = self.qexpr()
        if self.peek() is not None:
            self.error("unexpected trailing input")
        return value

    def qexpr(self) -> Quantity:
        value = self.qterm()
        while self.is_op("+") or self.is_op("-"):
            op = self.take("op")[1]
            rhs = self.qterm()
            value = q_add(value, rhs if op == "+" else -rhs)
        return value

    def qterm(self) -> Quantity:
        value = self.quantity()
        while self.is_op("*") or self.is_op("/"):
            op = self.take("op")[1]
            rhs = self.quantity()
            value = q_mul(value, rhs) if op == "*" else q_div(value, rhs)
        return value

    def quantity(self) -> Quantity:
        sign = -1 if self.is_op("-") else 1
        if sign < 0:
            self.i += 1
        num_tok = self.take("int")
        scalar = Fraction(int(num_tok[1]))
        nxt, after = self.peek(), self.peek(1)
        if (
            self.is_op("/")
            and after is not None
            and after[0] == "int"
            and nxt[2] == num_tok[3]
            and after[2] == nxt[2] + 1
        ):
            self.i += 2
            if int(after[1]) == 0:
                raise ZeroMagnitudeDivisor("zero denominator in rational literal")
            scalar /= int(after[1])
        unit = DIMENSIONLESS
        tok = self.peek()
        if tok is not None and tok[0] == "sym":
            unit = self.factor()
            while (self.is_op("*") or self.is_op("/")) and (self.peek(1) or ("",))[0] == "sym":
                op = self.take("op")[1]
                f = self.factor()
                unit = unit * f if op == "*" else unit / f
        return Quantity(sign * scalar, unit)

    def factor(self) -> UnitMonomial:
        sym = self.take("sym")[1]
        power = 1
        if self.is_op("^"):
            self.i += 1
            neg = self.is_op("-")
            if neg:
                self.i += 1
            power = int(self.take("int")[1]) * (-1 if neg else 1)
        return UnitMonomial(((sym, power),))


def parse_quantity(text: str) -> Quantity:
    """Parse and evaluate a quantity expression such as ``50 lb / 9 person``."""
    return _QuantityParser(text).parse()
