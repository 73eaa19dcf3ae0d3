"""Commutative (semi)ring contexts with their elements and cancellation tests.

A context owns the carrier and the arithmetic; an :class:`Element` is a thin
immutable wrapper pairing a context with a carrier-specific payload.  All
arithmetic is exact: integers, :class:`fractions.Fraction`, residues, and the
distinguished tropical infinity :data:`INF`.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Iterable, Iterator, Sequence

from .errors import (
    ContextMismatch,
    InvalidCarrier,
    NotInvertible,
    NotRepresentable,
    UnsupportedOperation,
)

__all__ = [
    "ADDITIVE",
    "MULTIPLICATIVE",
    "INF",
    "Cancellation",
    "Element",
    "FiniteMonoid",
    "Integers",
    "Kind",
    "Naturals",
    "Rationals",
    "RingContext",
    "Tropical",
    "Verdict",
    "ZMod",
    "ZeroRing",
    "add",
    "is_cancellative",
    "law_violations",
    "mul",
    "normalize_op",
]

ADDITIVE = "additive"
MULTIPLICATIVE = "multiplicative"

_OP_ALIASES = {
    "additive": ADDITIVE,
    "add": ADDITIVE,
    "+": ADDITIVE,
    "multiplicative": MULTIPLICATIVE,
    "mul": MULTIPLICATIVE,
    "*": MULTIPLICATIVE,
}


def normalize_op(op: str) -> str:
    try:
        return _OP_ALIASES[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None


class Kind(enum.Enum):
    NATURALS = "naturals"
    INTEGERS = "integers"
    RATIONALS = "rationals"
    ZMOD = "zmod"
    TROPICAL = "tropical"
    FINITE_MONOID = "finite_monoid"
    POLYNOMIAL = "polynomial"
    DUAL = "dual"
    LOCALIZED = "localized"
    GROTHENDIECK = "grothendieck"
    ZERO_RING = "zero_ring"


class _Infinity:
    """Tropical +infinity: larger than every rational, absorbing for +."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "∞"

    def __reduce__(self):
        return (_Infinity, ())

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("tropical-infinity")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__


INF = _Infinity()


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Cancellation:
    """Outcome of :func:`is_cancellative`; ``witness`` is set only for NO."""

    verdict: Verdict
    witness: tuple[Element, Element] | None = None

    @property
    def cancellative(self) -> bool | None:
        if self.verdict is Verdict.UNKNOWN:
            return None
        return self.verdict is Verdict.YES


YES = Cancellation(Verdict.YES)
UNKNOWN = Cancellation(Verdict.UNKNOWN)


class Element:
    """An immutable member of a :class:`RingContext`.

    Python operators dispatch to the context.  Plain numbers on the other side
    of an operator are coerced into ``self.ctx``; elements from a different
    context raise :class:`ContextMismatch` (use ``ctx.image`` to move them).
    """

    __slots__ = ("ctx", "payload")

    def __init__(self, ctx: RingContext, payload: Any):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "payload", payload)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __reduce__(self):
        return (type(self), (self.ctx, self.payload))

    def _other(self, other) -> Any:
        if isinstance(other, Element):
            if other.ctx != self.ctx:
                raise ContextMismatch(self.ctx, other.ctx)
            return other.payload
        return self.ctx._coerce(other)

    def __add__(self, other):
        return self.ctx.wrap(self.ctx._add(self.payload, self._other(other)))

    def __radd__(self, other):
        return self.ctx.wrap(self.ctx._add(self._other(other), self.payload))

    def __mul__(self, other):
        return self.ctx.wrap(self.ctx._mul(self.payload, self._other(other)))

    def __rmul__(self, other):
        return self.ctx.wrap(self.ctx._mul(self._other(other), self.payload))

    def __sub__(self, other):
        return self.ctx.wrap(self.ctx._sub(self.payload, self._other(other)))

    def __rsub__(self, other):
        return self.ctx.wrap(self.ctx._sub(self._other(other), self.payload))

    def __neg__(self):
        return self.ctx.wrap(self.ctx._neg(self.payload))

    def __pos__(self):
        return self

    def inverse(self) -> Element:
        inv = self.ctx._inverse(self.payload)
        if inv is None:
            raise NotInvertible(self)
        return self.ctx.wrap(inv)

    def __truediv__(self, other):
        divisor = self.ctx.wrap(self._other(other))
        return self * divisor.inverse()

    def __rtruediv__(self, other):
        return self.ctx.wrap(self._other(other)) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        result = self.ctx.one
        for _ in range(abs(n)):
            result = result * base
        return result

    def __eq__(self, other):
        if isinstance(other, Element) and other.ctx != self.ctx:
            return False
        try:
            payload = self._other(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.ctx._eq(self.payload, payload)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.ctx, self.ctx._key(self.payload)))

    def is_zero(self) -> bool:
        return self.ctx.has_zero and self.ctx._eq(self.payload, self.ctx._zero())

    def __str__(self):
        return self.ctx.format(self.payload)

    def __repr__(self):
        return f"{type(self).__name__}({self.ctx.name}: {self})"


class RingContext:
    """Base class for carriers.

    Subclasses are frozen dataclasses and implement the payload-level hooks
    (``_add``, ``_mul``, ``_zero``, ...).  Structure flags describe what the
    carrier offers; they drive the rule-based cancellation table.
    """

    kind: Kind
    has_zero = False
    has_one = False
    has_negatives = False
    is_finite = False
    # every non-zero element is multiplicatively cancellative
    is_domain = False
    # every element is additively cancellative
    additively_cancellative = False
    additively_idempotent = False
    element_class: type[Element] = Element

    @property
    def name(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.name

    # -- construction --------------------------------------------------
    def __call__(self, value) -> Element:
        if isinstance(value, Element):
            return self.image(value)
        return self.wrap(self._coerce(value))

    def wrap(self, payload) -> Element:
        return self.element_class(self, payload)

    def _coerce(self, value):
        raise TypeError(f"cannot coerce {value!r} into {self.name}")

    def contains(self, payload) -> bool:
        return True

    @property
    def zero(self) -> Element:
        return self.wrap(self._zero())

    @property
    def one(self) -> Element:
        return self.wrap(self._one())

    def _zero(self):
        raise UnsupportedOperation(f"{self.name} has no zero")

    def _one(self):
        raise UnsupportedOperation(f"{self.name} has no one")

    # -- payload arithmetic ---------------------------------------------
    def _add(self, a, b):
        raise UnsupportedOperation(f"{self.name} has no addition")

    def _mul(self, a, b):
        raise UnsupportedOperation(f"{self.name} has no multiplication")

    def _neg(self, a):
        raise UnsupportedOperation(f"{self.name} has no negatives")

    def _sub(self, a, b):
        if not self.has_negatives:
            raise UnsupportedOperation(f"{self.name} has no subtraction")
        return self._add(a, self._neg(b))

    def _eq(self, a, b) -> bool:
        return a == b

    def _key(self, a):
        return a

    def _inverse(self, a):
        """Multiplicative inverse payload, or None when ``a`` is not a unit."""
        return None

    def exact_quotient(self, r, a):
        """Payload q with a*q = r inside this context, or None."""
        inv = self._inverse(a)
        if inv is None:
            return None
        return self._mul(r, inv)

    def _op(self, op: str) -> Callable[[Any, Any], Any]:
        return self._add if normalize_op(op) == ADDITIVE else self._mul

    def _neutral(self, op: str):
        if normalize_op(op) == ADDITIVE:
            return self._zero() if self.has_zero else None
        return self._one() if self.has_one else None

    def _absorbing(self, op: str):
        """Payload z with op(z, x) = z for all x, or None."""
        op = normalize_op(op)
        if self.is_finite:
            f = self._op(op)
            carrier = list(self.carrier())
            for z in carrier:
                if all(self._eq(f(z, x), z) for x in carrier):
                    return z
            return None
        if op == MULTIPLICATIVE and self.has_zero:
            return self._zero()
        return None

    def _slack_candidates(self, a, b) -> Iterable:
        """Addends k worth trying for a + k = b + k on infinite carriers."""
        return ()

    def carrier(self) -> Iterator:
        raise UnsupportedOperation(f"{self.name} is not finite")

    def elements(self) -> list[Element]:
        return [self.wrap(p) for p in self.carrier()]

    def as_rational(self, a) -> Fraction | None:
        """Exact rational value for integer-like carriers, else None."""
        return None

    def format(self, a) -> str:
        return str(a)

    # -- relations between contexts ---------------------------------------
    # the context this one widens; set as a dataclass field by extensions
    base: RingContext | None = None

    def embed(self, payload):
        raise UnsupportedOperation(f"{self.name} has no base to embed from")

    def image(self, element: Element) -> Element:
        """Map ``element`` along the chain of widenings that built ``self``."""
        if element.ctx == self:
            return element
        base = self.base
        if base is None:
            raise ContextMismatch(element.ctx, self)
        return self.wrap(self.embed(base.image(element).payload))

    def extends(self, other: RingContext) -> bool:
        ctx: RingContext | None = self
        while ctx is not None:
            if ctx == other:
                return True
            ctx = ctx.base
        return False

    def _cancellation_rule(self, d, op: str) -> Cancellation | None:
        """Structural cancellation rule for infinite carriers."""
        if op == ADDITIVE and self.additively_cancellative:
            return YES
        if op == MULTIPLICATIVE and self.is_domain:
            if self._eq(d, self._zero()):
                return Cancellation(Verdict.NO, (self.zero, self.one))
            return YES
        return None


def _check_same(ctx: RingContext, *elements: Element) -> None:
    for e in elements:
        if not isinstance(e, Element) or e.ctx != ctx:
            raise ContextMismatch(getattr(e, "ctx", e), ctx)


def add(ctx: RingContext, a: Element, b: Element) -> Element:
    _check_same(ctx, a, b)
    return ctx.wrap(ctx._add(a.payload, b.payload))


def mul(ctx: RingContext, a: Element, b: Element) -> Element:
    _check_same(ctx, a, b)
    return ctx.wrap(ctx._mul(a.payload, b.payload))


def is_cancellative(ctx: RingContext, d: Element, op: str) -> Cancellation:
    """Decide whether op(d, x) = op(d, y) forces x = y.

    Finite carriers are searched exhaustively; infinite built-ins use the
    per-kind rule table.
    """
    _check_same(ctx, d)
    op = normalize_op(op)
    if ctx.is_finite:
        f = ctx._op(op)
        carrier = list(ctx.carrier())
        for x, y in itertools.combinations(carrier, 2):
            if ctx._eq(x, y):
                continue
            if ctx._eq(f(d.payload, x), f(d.payload, y)):
                return Cancellation(Verdict.NO, (ctx.wrap(x), ctx.wrap(y)))
        return YES
    verdict = ctx._cancellation_rule(d.payload, op)
    return UNKNOWN if verdict is None else verdict


def law_violations(ctx: RingContext, ops: Sequence[str] = (ADDITIVE, MULTIPLICATIVE)) -> list[str]:
    """Exhaustively check the commutative (semi)ring laws on a finite carrier."""
    carrier = list(ctx.carrier())
    eq = ctx._eq
    problems: list[str] = []
    fns = {op: ctx._op(op) for op in map(normalize_op, ops)}
    for op, f in fns.items():
        for x, y in itertools.product(carrier, repeat=2):
            if not eq(f(x, y), f(y, x)):
                problems.append(f"{op} not commutative at ({x}, {y})")
        for x, y, z in itertools.product(carrier, repeat=3):
            if not eq(f(f(x, y), z), f(x, f(y, z))):
                problems.append(f"{op} not associative at ({x}, {y}, {z})")
    if len(fns) == 2:
        plus, times = fns[ADDITIVE], fns[MULTIPLICATIVE]
        for x, y, z in itertools.product(carrier, repeat=3):
            if not eq(times(x, plus(y, z)), plus(times(x, y), times(x, z))):
                problems.append(f"not distributive at ({x}, {y}, {z})")
    return problems


# -- integer-like carriers ----------------------------------------------------

def _as_int(value) -> int:
    if isinstance(value, bool):
        raise TypeError("booleans are not ring elements")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    if isinstance(value, str):
        return int(value.strip())
    raise TypeError(f"not an integer: {value!r}")


def _format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Naturals(RingContext):
    """0, 1, 2, ... with ordinary + and x; subtraction only when c >= b."""

    kind = Kind.NATURALS
    has_zero = True
    has_one = True
    is_domain = True
    additively_cancellative = True

    @property
    def name(self):
        return "N"

    def _coerce(self, value):
        n = _as_int(value)
        if n < 0:
            raise ValueError(f"{n} is not a natural number")
        return n

    def contains(self, payload):
        return isinstance(payload, int) and payload >= 0

    def _zero(self):
        return 0

    def _one(self):
        return 1

    def _add(self, a, b):
        return a + b

    def _mul(self, a, b):
        return a * b

    def _sub(self, a, b):
        if a < b:
            raise NotRepresentable(f"{a} - {b} is not a natural number")
        return a - b

    def _inverse(self, a):
        return 1 if a == 1 else None

    def exact_quotient(self, r, a):
        if a == 0 or r % a:
            return None
        return r // a

    def as_rational(self, a):
        return Fraction(a)


@dataclass(frozen=True)
class Integers(RingContext):
    kind = Kind.INTEGERS
    has_zero = True
    has_one = True
    has_negatives = True
    is_domain = True
    additively_cancellative = True

    @property
    def name(self):
        return "Z"

    def _coerce(self, value):
        return _as_int(value)

    def contains(self, payload):
        return isinstance(payload, int)

    def _zero(self):
        return 0

    def _one(self):
        return 1

    def _add(self, a, b):
        return a + b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _sub(self, a, b):
        return a - b

    def _inverse(self, a):
        return a if a in (1, -1) else None

    def exact_quotient(self, r, a):
        if a == 0 or r % a:
            return None
        return r // a

    def as_rational(self, a):
        return Fraction(a)


@dataclass(frozen=True)
class Rationals(RingContext):
    kind = Kind.RATIONALS
    has_zero = True
    has_one = True
    has_negatives = True
    is_domain = True
    additively_cancellative = True

    @property
    def name(self):
        return "Q"

    def _coerce(self, value):
        if isinstance(value, bool):
            raise TypeError("booleans are not ring elements")
        if isinstance(value, (int, Fraction, str)):
            return Fraction(value)
        raise TypeError(f"not an exact rational: {value!r}")

    def contains(self, payload):
        return isinstance(payload, Fraction)

    def _zero(self):
        return Fraction(0)

    def _one(self):
        return Fraction(1)

    def _add(self, a, b):
        return a + b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _sub(self, a, b):
        return a - b

    def _inverse(self, a):
        return None if a == 0 else 1 / a

    def as_rational(self, a):
        return a

    def format(self, a):
        return _format_fraction(a)


@dataclass(frozen=True)
class ZMod(RingContext):
    """Integers modulo n, payloads kept in [0, n)."""

    n: int
    kind = Kind.ZMOD
    has_zero = True
    has_one = True
    has_negatives = True
    is_finite = True
    additively_cancellative = True

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"modulus must be a positive integer, got {self.n!r}")

    @property
    def name(self):
        return f"Z/{self.n}"

    @cached_property
    def is_domain(self):
        n = self.n
        return n > 1 and all(n % p for p in range(2, math.isqrt(n) + 1))

    def _coerce(self, value):
        return _as_int(value) % self.n

    def contains(self, payload):
        return isinstance(payload, int) and 0 <= payload < self.n

    def carrier(self):
        return iter(range(self.n))

    def _zero(self):
        return 0

    def _one(self):
        return 1 % self.n

    def _add(self, a, b):
        return (a + b) % self.n

    def _mul(self, a, b):
        return (a * b) % self.n

    def _neg(self, a):
        return (-a) % self.n

    def _inverse(self, a):
        if math.gcd(a, self.n) != 1:
            return None
        return pow(a, -1, self.n) if self.n > 1 else 0


@dataclass(frozen=True)
class Tropical(RingContext):
    """Min-plus semiring over exact rationals plus +infinity.

    ``+`` is min and ``*`` is ordinary addition; ``INF`` is the additive
    neutral and multiplicatively absorbing, ``0`` the multiplicative neutral.
    """

    kind = Kind.TROPICAL
    has_zero = True
    has_one = True
    # finite elements are *-cancellative; INF plays the role of zero
    is_domain = True
    additively_idempotent = True

    @property
    def name(self):
        return "T"

    def _coerce(self, value):
        if value is INF or (isinstance(value, str) and value.strip() in ("inf", "∞", "+inf")):
            return INF
        if isinstance(value, bool):
            raise TypeError("booleans are not ring elements")
        if isinstance(value, (int, Fraction, str)):
            return Fraction(value)
        raise TypeError(f"not a tropical value: {value!r}")

    def contains(self, payload):
        return payload is INF or isinstance(payload, Fraction)

    def _zero(self):
        return INF

    def _one(self):
        return Fraction(0)

    def _add(self, a, b):
        return min(a, b)

    def _mul(self, a, b):
        return a + b

    def _inverse(self, a):
        return None if a is INF else -a

    def _slack_candidates(self, a, b):
        # min(a, k) = min(b, k) once k is below both
        return (min(a, b),)

    def _cancellation_rule(self, d, op):
        if op == ADDITIVE:
            if d is INF:
                return YES
            grid = [Fraction(k) for k in range(-10, 11)] + [INF]
            for x, y in itertools.combinations(grid, 2):
                if min(d, x) == min(d, y):
                    return Cancellation(Verdict.NO, (self.wrap(x), self.wrap(y)))
            raise AssertionError("tropical witness grid too small")  # pragma: no cover
        return super()._cancellation_rule(d, op)

    def format(self, a):
        return "∞" if a is INF else _format_fraction(a)


@dataclass(frozen=True)
class ZeroRing(RingContext):
    """The one-element ring: 1 = 0 and every equality holds."""

    kind = Kind.ZERO_RING
    has_zero = True
    has_one = True
    has_negatives = True
    is_finite = True
    additively_cancellative = True

    @property
    def name(self):
        return "ZeroRing"

    def _coerce(self, value):
        return 0

    def carrier(self):
        return iter((0,))

    def _zero(self):
        return 0

    def _one(self):
        return 0

    def _add(self, a, b):
        return 0

    def _mul(self, a, b):
        return 0

    def _neg(self, a):
        return 0

    def _eq(self, a, b):
        return True

    def _key(self, a):
        return 0

    def _inverse(self, a):
        return 0

    def image(self, element):
        return self.wrap(0)

    def extends(self, other):
        return True

    def format(self, a):
        return "0 (zero ring)"


@dataclass(frozen=True)
class FiniteMonoid(RingContext):
    """A finite commutative semigroup given by its operation table.

    Payloads are indices into ``table``.  The single operation answers to both
    the additive and the multiplicative name, so the same carrier can be
    Grothendieck-completed or localized.  The table is checked for
    commutativity and associativity on construction.
    """

    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None
    label: str = "M"
    neutral: int | None = field(init=False, compare=False, default=None)

    kind = Kind.FINITE_MONOID
    is_finite = True

    def __post_init__(self):
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        size = len(table)
        if size == 0:
            raise InvalidCarrier("empty operation table")
        if any(len(row) != size for row in table):
            raise InvalidCarrier("operation table is not square")
        if any(not 0 <= v < size for row in table for v in row):
            raise InvalidCarrier("operation table entry out of range")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != size or len(set(labels)) != size:
                raise InvalidCarrier("labels must be distinct, one per element")
            object.__setattr__(self, "labels", labels)
        for i in range(size):
            for j in range(i + 1, size):
                if table[i][j] != table[j][i]:
                    raise InvalidCarrier(f"not commutative at ({i}, {j})")
        for i, j, k in itertools.product(range(size), repeat=3):
            if table[table[i][j]][k] != table[i][table[j][k]]:
                raise InvalidCarrier(f"not associative at ({i}, {j}, {k})")
        neutral = next(
            (e for e in range(size) if all(table[e][x] == x for x in range(size))),
            None,
        )
        object.__setattr__(self, "neutral", neutral)

    @classmethod
    def from_operation(cls, values: Sequence, op: Callable, label: str = "M") -> FiniteMonoid:
        values = list(values)
        index = {v: i for i, v in enumerate(values)}
        try:
            table = [[index[op(x, y)] for y in values] for x in values]
        except KeyError as exc:
            raise InvalidCarrier(f"operation leaves the carrier: {exc}") from None
        return cls(tuple(map(tuple, table)), tuple(str(v) for v in values), label)

    @classmethod
    def boolean_or(cls) -> FiniteMonoid:
        return cls.from_operation([0, 1], lambda x, y: x | y, label="B∨")

    @classmethod
    def min_chain(cls, k: int) -> FiniteMonoid:
        """{0, 1, ..., k-1, INF} under min."""
        return cls.from_operation([*range(k), INF], min, label=f"min{{0..{k - 1},∞}}")

    @property
    def size(self) -> int:
        return len(self.table)

    @property
    def op_table(self):
        return self.table

    @property
    def name(self):
        return self.label

    @property
    def has_zero(self):
        return self.neutral is not None

    has_one = has_zero

    @cached_property
    def additively_idempotent(self):
        return all(self.table[i][i] == i for i in range(self.size))

    @cached_property
    def additively_cancellative(self):
        return all(len(set(row)) == self.size for row in self.table)

    @property
    def has_negatives(self):
        return self.neutral is not None and self.additively_cancellative

    def _coerce(self, value):
        if self.labels is not None and str(value) in self.labels:
            return self.labels.index(str(value))
        if isinstance(value, int) and not isinstance(value, bool) and 0 <= value < self.size:
            return value
        raise ValueError(f"{value!r} is not an element of {self.name}")

    def contains(self, payload):
        return isinstance(payload, int) and 0 <= payload < self.size

    def carrier(self):
        return iter(range(self.size))

    def _zero(self):
        if self.neutral is None:
            raise UnsupportedOperation(f"{self.name} has no neutral element")
        return self.neutral

    _one = _zero

    def _add(self, a, b):
        return self.table[a][b]

    _mul = _add

    def _neg(self, a):
        if self.has_negatives:
            for b in range(self.size):
                if self.table[a][b] == self.neutral:
                    return b
        raise UnsupportedOperation(f"{self.name} is not a group")

    def _inverse(self, a):
        if self.neutral is None:
            return None
        for b in range(self.size):
            if self.table[a][b] == self.neutral:
                return b
        return None

    def format(self, a):
        return self.labels[a] if self.labels is not None else str(a)
