"""Localization (un-multiplication) and the Grothendieck construction (un-addition).

Both constructions are built explicitly from pairs.  A :class:`Localized`
context holds fractions ``num/den`` with ``den`` in the closure of an
:class:`InvertedSet`; two fractions are equal when some ``u`` in that closure
satisfies ``u*a*t == u*b*s``.  A :class:`Grothendieck` context holds formal
differences ``plus - minus``, equal when ``p1 + m2 + k == p2 + m1 + k`` for some
slack ``k``.  Inverting an element that fails cancellation identifies
distinct elements; inverting an absorbing element (zero) collapses everything
to the :class:`~unring.core.ZeroRing`.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator

from .core import (
    ADDITIVE,
    MULTIPLICATIVE,
    Cancellation,
    Element,
    Kind,
    Naturals,
    Integers,
    RingContext,
    Verdict,
    ZeroRing,
    _format_fraction,
    is_cancellative,
    normalize_op,
)
from .errors import ContextMismatch, NotInvertible, OracleBoundExceeded, UnsupportedOperation

__all__ = [
    "CollapseReport",
    "DifferenceElement",
    "FractionElement",
    "Grothendieck",
    "InvertedSet",
    "Localized",
    "OracleResult",
    "collapse_detect",
    "diff_eq",
    "frac_add",
    "frac_eq",
    "frac_inv",
    "frac_mul",
    "grothendieck",
    "injectivity_oracle",
    "localize",
]

DEFAULT_ORACLE_BOUND = 12


def _needs_parens(text: str) -> bool:
    return any(c in text for c in " +-*/") and not text.lstrip("-").isdigit()


def _wrap_parens(text: str) -> str:
    return f"({text})" if _needs_parens(text) else text


@dataclass(frozen=True)
class InvertedSet:
    """Generators D of the elements to invert, closed under ``op`` lazily.

    ``all_nonzero`` stands for "every non-zero element" (the field of
    fractions of a domain) without listing generators.
    """

    base: RingContext
    gens: tuple = ()
    op: str = MULTIPLICATIVE
    all_nonzero: bool = False
    limit: int = field(default=4096, compare=False)

    @classmethod
    def of(cls, base: RingContext, generators: Iterable, op: str = MULTIPLICATIVE) -> InvertedSet:
        payloads: list = []
        for g in generators:
            p = (base.image(g) if isinstance(g, Element) else base(g)).payload
            if not any(base._eq(p, q) for q in payloads):
                payloads.append(p)
        if not payloads:
            raise ValueError("an inverted set needs at least one generator")
        return cls(base, tuple(payloads), normalize_op(op))

    @classmethod
    def nonzero(cls, base: RingContext) -> InvertedSet:
        if not (base.is_domain or base.is_finite):
            raise ValueError(f"{base.name}: 'all non-zero' needs a domain or a finite carrier")
        return cls(base, (), MULTIPLICATIVE, all_nonzero=True)

    @property
    def generators(self) -> list[Element]:
        return [self.base.wrap(g) for g in self._gens()]

    def _gens(self) -> tuple:
        if self.all_nonzero and self.base.is_finite:
            zero = self.base._zero()
            return tuple(x for x in self.base.carrier() if not self.base._eq(x, zero))
        return self.gens

    def with_generators(self, more: Iterable) -> InvertedSet:
        gens = list(self.gens)
        for p in more:
            if not any(self.base._eq(p, q) for q in gens):
                gens.append(p)
        return InvertedSet(self.base, tuple(gens), self.op, self.all_nonzero, self.limit)

    def _f(self, a, b):
        return self.base._op(self.op)(a, b)

    def iter_closure(self) -> Iterator:
        """Yield the neutral element (if any), then products of generators."""
        if self.all_nonzero and not self.base.is_finite:
            raise ValueError("the non-zero elements of an infinite domain cannot be listed")
        seen: list = []
        keys: set = set()

        def fresh(p) -> bool:
            try:
                k = self.base._key(p)
            except TypeError:
                if any(self.base._eq(p, q) for q in seen):
                    return False
                seen.append(p)
                return True
            if k in keys:
                return False
            keys.add(k)
            return True

        neutral = self.base._neutral(self.op)
        if neutral is not None and fresh(neutral):
            yield neutral
        gens = self._gens()
        queue = deque()
        for g in gens:
            if fresh(g):
                queue.append(g)
                yield g
        while queue:
            x = queue.popleft()
            for g in gens:
                p = self._f(x, g)
                if fresh(p):
                    queue.append(p)
                    yield p

    def materialize(self) -> list:
        """The whole closure; raises if it is larger than ``limit``."""
        out = []
        for p in self.iter_closure():
            out.append(p)
            if len(out) > self.limit:
                raise OracleBoundExceeded(f"closure of {self} exceeds {self.limit} elements")
        return out

    def contains(self, x) -> bool:
        base = self.base
        if self.all_nonzero and not base.is_finite:
            return not base._eq(x, base._zero())
        if base.is_finite:
            return any(base._eq(x, u) for u in self.materialize())
        if self.op == MULTIPLICATIVE:
            ints = self._integer_view(x)
            if ints is not None:
                return _in_int_closure(*ints)
        for count, u in enumerate(self.iter_closure()):
            if base._eq(x, u):
                return True
            if count >= self.limit:
                break
        return False

    def _integer_view(self, x):
        values = [self.base.as_rational(p) for p in (x, *self.gens)]
        if any(v is None or v.denominator != 1 for v in values):
            return None
        return values[0].numerator, tuple(v.numerator for v in values[1:])

    @cached_property
    def all_cancellative(self) -> bool:
        if self.all_nonzero and not self.base.is_finite:
            return True
        return all(
            is_cancellative(self.base, g, self.op).verdict is Verdict.YES
            for g in self.generators
        )

    def contains_absorbing(self) -> bool:
        z = self.base._absorbing(self.op)
        return z is not None and self.contains(z)

    def __str__(self):
        if self.all_nonzero:
            return f"{self.base.name}∖{{0}}"
        return "{" + ", ".join(self.base.format(g) for g in self.gens) + "}"


def _in_int_closure(n: int, gens: tuple[int, ...]) -> bool:
    """Is n a (possibly empty) product of gens?  Exact search over divisors."""
    if 0 in gens and n == 0:
        return True
    if n == 0:
        return False
    units = [g for g in gens if abs(g) == 1]
    big = [g for g in gens if abs(g) > 1]
    neg_ok = -1 in units

    def search(m: int, memo: dict) -> bool:
        if m == 1 or (m == -1 and neg_ok):
            return True
        if m in memo:
            return memo[m]
        memo[m] = False
        for g in big:
            if m % g == 0 and search(m // g, memo):
                memo[m] = True
                return True
        if neg_ok and search(-m, memo):
            memo[m] = True
        return memo[m]

    return search(n, {})


class FractionElement(Element):
    """Element of a :class:`Localized` context; payload is ``(num, den)``."""

    __slots__ = ()

    @property
    def num(self) -> Element:
        return self.ctx.base.wrap(self.payload[0])

    @property
    def den(self) -> Element:
        return self.ctx.base.wrap(self.payload[1])


class DifferenceElement(Element):
    """Element of a :class:`Grothendieck` context; payload is ``(plus, minus)``."""

    __slots__ = ()

    @property
    def plus(self) -> Element:
        return self.ctx.base.wrap(self.payload[0])

    @property
    def minus(self) -> Element:
        return self.ctx.base.wrap(self.payload[1])


@dataclass(frozen=True)
class Localized(RingContext):
    base: RingContext = field()
    inverted: InvertedSet

    kind = Kind.LOCALIZED
    has_one = True
    element_class = FractionElement

    def __post_init__(self):
        if self.inverted.base != self.base:
            raise ContextMismatch(self.inverted.base, self.base)
        if not self.base.has_one:
            raise ValueError(f"{self.base.name} has no multiplicative identity to localize")

    @property
    def name(self):
        if self.inverted.all_nonzero:
            return f"Frac({self.base.name})"
        inv = ", ".join("1/" + _wrap_parens(self.base.format(g)) for g in self.inverted.gens)
        return f"{self.base.name}[{inv}]"

    @property
    def has_zero(self):
        return self.base.has_zero

    @property
    def has_negatives(self):
        return self.base.has_negatives

    @property
    def is_domain(self):
        return self.base.is_domain

    @property
    def additively_cancellative(self):
        return self.base.additively_cancellative and self.inverted.all_cancellative

    def _coerce(self, value):
        base = self.base
        if isinstance(value, tuple) and len(value) == 2:
            num, den = (base(v).payload for v in value)
            if not self.inverted.contains(den):
                raise ValueError(f"denominator {base.format(den)} is not in the closure of {self.inverted}")
            return (num, den)
        if isinstance(value, Fraction) and value.denominator != 1:
            return self._coerce((value.numerator, value.denominator))
        return self.embed(base._coerce(value))

    def contains(self, payload):
        return self.inverted.contains(payload[1])

    def embed(self, payload):
        return (payload, self.base._one())

    def image(self, element):
        other = element.ctx
        if isinstance(other, Localized) and other.base == self.base:
            if self.inverted.all_nonzero:
                covered = True
            else:
                covered = not other.inverted.all_nonzero and all(
                    self.inverted.contains(g) for g in other.inverted.gens
                )
            if covered:
                return self.wrap(element.payload)
        return super().image(element)

    def _zero(self):
        return (self.base._zero(), self.base._one())

    def _one(self):
        return (self.base._one(), self.base._one())

    def _add(self, x, y):
        b = self.base
        (a, s), (c, t) = x, y
        return (b._add(b._mul(a, t), b._mul(c, s)), b._mul(s, t))

    def _mul(self, x, y):
        b = self.base
        return (b._mul(x[0], y[0]), b._mul(x[1], y[1]))

    def _neg(self, x):
        return (self.base._neg(x[0]), x[1])

    def _sub(self, x, y):
        return self._add(x, self._neg(y))

    def _eq(self, x, y):
        b = self.base
        lhs = b._mul(x[0], y[1])
        rhs = b._mul(y[0], x[1])
        if b._eq(lhs, rhs):
            return True
        if self.inverted.all_cancellative:
            return False
        for count, u in enumerate(self.inverted.iter_closure()):
            if b._eq(b._mul(u, lhs), b._mul(u, rhs)):
                return True
            if count >= self.inverted.limit:
                break
        return False

    def _key(self, x):
        q = self.as_rational(x)
        if q is None:
            raise TypeError(f"elements of {self.name} are unhashable")
        return q

    def _inverse(self, x):
        b = self.base
        num, den = x
        if self.inverted.contains(num):
            return (den, num)
        unit = b._inverse(num)
        if unit is not None:
            return (b._mul(den, unit), b._one())
        if b.has_negatives:
            neg = b._neg(num)
            if self.inverted.contains(neg):
                return (b._neg(den), neg)
        return None

    def as_rational(self, x):
        if not self.inverted.all_cancellative:
            return None
        n, d = self.base.as_rational(x[0]), self.base.as_rational(x[1])
        if n is None or d is None:
            return None
        return n / d

    def format(self, x):
        q = self.as_rational(x)
        if q is not None:
            return _format_fraction(q)
        num, den = (self.base.format(p) for p in x)
        if self.base._eq(x[1], self.base._one()):
            return num
        return f"{_wrap_parens(num)}/{_wrap_parens(den)}"

    def format_unreduced(self, x) -> str:
        """``num/den`` exactly as computed (``num`` alone when den is one)."""
        num, den = (self.base.format(p) for p in x)
        if self.base._eq(x[1], self.base._one()):
            return num
        return f"{_wrap_parens(num)}/{_wrap_parens(den)}"


@dataclass(frozen=True)
class Grothendieck(RingContext):
    base: RingContext = field()

    kind = Kind.GROTHENDIECK
    has_zero = True
    has_negatives = True
    additively_cancellative = True
    element_class = DifferenceElement

    @property
    def name(self):
        if self.base == Naturals():
            return "Z"
        return f"Gr({self.base.name})"

    @property
    def has_one(self):
        return self.base.has_one and self.base.has_zero

    @property
    def is_domain(self):
        return self.base.is_domain and self.base.additively_cancellative and self.base.has_zero

    @property
    def _x0(self):
        if self.base.has_zero:
            return self.base._zero()
        return next(iter(self.base.carrier()))

    def _coerce(self, value):
        if isinstance(value, tuple) and len(value) == 2:
            return tuple(self.base(v).payload for v in value)
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool) and value < 0:
            return (self.base._zero(), self.base._coerce(-value))
        return self.embed(self.base._coerce(value))

    def embed(self, payload):
        x0 = self._x0
        if self.base.has_zero:
            return (payload, x0)
        return (self.base._add(payload, x0), x0)

    def _zero(self):
        return (self._x0, self._x0)

    def _one(self):
        if not self.has_one:
            raise UnsupportedOperation(f"{self.name} has no one")
        return (self.base._one(), self.base._zero())

    def _add(self, x, y):
        b = self.base
        return (b._add(x[0], y[0]), b._add(x[1], y[1]))

    def _mul(self, x, y):
        b = self.base
        (p, m), (q, n) = x, y
        return (b._add(b._mul(p, q), b._mul(m, n)), b._add(b._mul(p, n), b._mul(m, q)))

    def _neg(self, x):
        return (x[1], x[0])

    def _eq(self, x, y):
        b = self.base
        lhs = b._add(x[0], y[1])
        rhs = b._add(y[0], x[1])
        if b._eq(lhs, rhs):
            return True
        if b.additively_cancellative:
            return False
        slack = b.carrier() if b.is_finite else b._slack_candidates(lhs, rhs)
        return any(b._eq(b._add(lhs, k), b._add(rhs, k)) for k in slack)

    def _key(self, x):
        q = self.as_rational(x)
        if q is not None:
            return q
        if self.base.is_finite:
            return self._class_index(x)
        raise TypeError(f"elements of {self.name} are unhashable")

    def _inverse(self, x):
        if not self.has_one:
            return None
        one = self._one()
        if self._eq(x, one):
            return one
        if self._eq(x, self._neg(one)):
            return self._neg(one)
        return None

    def exact_quotient(self, r, a):
        qr, qa = self.as_rational(r), self.as_rational(a)
        if qr is None or qa is None:
            return super().exact_quotient(r, a)
        if qa == 0:
            return None
        q = qr / qa
        if q.denominator != 1:
            return None
        return self._coerce(q.numerator)

    def as_rational(self, x):
        if not self.base.additively_cancellative:
            return None
        p, m = self.base.as_rational(x[0]), self.base.as_rational(x[1])
        if p is None or m is None:
            return None
        return p - m

    def format(self, x):
        q = self.as_rational(x)
        if q is not None:
            return _format_fraction(q)
        return f"({self.base.format(x[0])} - {self.base.format(x[1])})"

    # -- finite bases: explicit classes ---------------------------------------
    @cached_property
    def _classes(self) -> tuple[tuple, ...]:
        if not self.base.is_finite:
            raise UnsupportedOperation(f"{self.base.name} is infinite")
        pairs = list(itertools.product(list(self.base.carrier()), repeat=2))
        parent = list(range(len(pairs)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i, j in itertools.combinations(range(len(pairs)), 2):
            if find(i) != find(j) and self._eq(pairs[i], pairs[j]):
                parent[find(i)] = find(j)
        groups: dict[int, list] = {}
        for i, pair in enumerate(pairs):
            groups.setdefault(find(i), []).append(pair)
        return tuple(tuple(g) for g in groups.values())

    def classes(self) -> list[list[DifferenceElement]]:
        """Equivalence classes of pairs; only for finite bases."""
        return [[self.wrap(p) for p in group] for group in self._classes]

    def _class_index(self, x) -> int:
        for i, group in enumerate(self._classes):
            if x in group:
                return i
        raise ValueError(f"{x!r} is not a pair over {self.base.name}")

    def is_trivial(self) -> bool:
        """True when every difference is equal to every other."""
        if self.base.is_finite:
            return len(self._classes) == 1
        return self.base.additively_idempotent


def _as_inverted(base: RingContext, D, op: str = MULTIPLICATIVE) -> InvertedSet:
    if isinstance(D, InvertedSet):
        if D.base != base:
            raise ContextMismatch(D.base, base)
        return D
    if isinstance(D, Element):
        D = [D]
    return InvertedSet.of(base, D, op)


def localize(base: RingContext, D) -> RingContext:
    """Universal extension of ``base`` in which every element of D is a unit.

    Returns :class:`ZeroRing` when the closure of D reaches zero.  Localizing
    an already-localized context merges the new numerators into its inverted
    set instead of nesting.
    """
    if isinstance(base, ZeroRing):
        return base
    if isinstance(base, Localized):
        inner = _as_inverted(base, D)
        nums = [g[0] for g in inner.gens]
        if inner.all_nonzero:
            if not (base.base.is_domain or base.base.is_finite):
                return Localized(base, inner)
            merged = InvertedSet.nonzero(base.base)
        else:
            merged = base.inverted.with_generators(nums)
        if merged.contains_absorbing():
            return ZeroRing()
        return Localized(base.base, merged)
    inverted = _as_inverted(base, D)
    if inverted.contains_absorbing():
        return ZeroRing()
    return Localized(base, inverted)


def _same_context(*elements: Element):
    ctx = elements[0].ctx
    for e in elements[1:]:
        if e.ctx != ctx:
            raise ContextMismatch(ctx, e.ctx)
    return ctx


def frac_eq(x: Element, y: Element) -> bool:
    ctx = _same_context(x, y)
    return ctx._eq(x.payload, y.payload)


def frac_add(x: Element, y: Element) -> Element:
    _same_context(x, y)
    return x + y


def frac_mul(x: Element, y: Element) -> Element:
    _same_context(x, y)
    return x * y


def frac_inv(x: Element) -> Element:
    inv = x.ctx._inverse(x.payload)
    if inv is None:
        raise NotInvertible(x.num if isinstance(x, FractionElement) else x)
    return x.ctx.wrap(inv)


def grothendieck(base: RingContext) -> Grothendieck:
    return Grothendieck(base)


def diff_eq(x: Element, y: Element) -> bool:
    ctx = _same_context(x, y)
    return ctx._eq(x.payload, y.payload)


@dataclass(frozen=True)
class OracleResult:
    injective: bool
    witness: tuple[Element, Element] | None
    identified_pairs: tuple[tuple[Element, Element], ...]
    class_count: int


def injectivity_oracle(base: RingContext, D, op: str = MULTIPLICATIVE,
                       bound: int = DEFAULT_ORACLE_BOUND) -> OracleResult:
    """Build the universal object for inverting D by brute force.

    Pairs ``(a, u)`` range over the carrier times the closure of D plus a
    formal empty product; ``(a, u) ~ (b, v)`` when some ``w`` makes
    ``w*a*v == w*b*u``.  The map ``a -> (a, 1)`` is injective iff no two
    carrier elements fall into one class.
    """
    op = normalize_op(op)
    if not base.is_finite:
        raise OracleBoundExceeded(f"{base.name} is infinite")
    carrier = list(base.carrier())
    if len(carrier) > bound:
        raise OracleBoundExceeded(f"{base.name} has {len(carrier)} elements > bound {bound}")
    inverted = _as_inverted(base, D, op)
    f = base._op(op)
    eq = base._eq
    dens = [None, *inverted.materialize()]

    def times(u, a):
        return a if u is None else f(u, a)

    pairs = [(a, u) for a in carrier for u in dens]
    parent = list(range(len(pairs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(pairs)), 2):
        if find(i) == find(j):
            continue
        (a, u), (b, v) = pairs[i], pairs[j]
        left, right = times(v, a), times(u, b)
        if any(eq(times(w, left), times(w, right)) for w in dens):
            parent[find(i)] = find(j)

    stride = len(dens)
    image_class = [find(k * stride) for k in range(len(carrier))]
    identified = tuple(
        (base.wrap(carrier[i]), base.wrap(carrier[j]))
        for i, j in itertools.combinations(range(len(carrier)), 2)
        if image_class[i] == image_class[j]
    )
    return OracleResult(
        injective=not identified,
        witness=identified[0] if identified else None,
        identified_pairs=identified,
        class_count=len({find(i) for i in range(len(pairs))}),
    )


@dataclass(frozen=True)
class CollapseReport:
    collapsed_to_zero: bool
    identified_pairs: tuple[tuple[Element, Element], ...]
    reason: str


def collapse_detect(base: RingContext, D, op: str = MULTIPLICATIVE,
                    bound: int = DEFAULT_ORACLE_BOUND, sample: int = 8) -> CollapseReport:
    """Report whether inverting D identifies elements of ``base`` or collapses it to zero."""
    op = normalize_op(op)
    inverted = _as_inverted(base, D, op)
    collapsed = inverted.contains_absorbing()
    pairs: list[tuple[Element, Element]] = []
    if base.is_finite and sum(1 for _ in base.carrier()) <= bound:
        pairs = list(injectivity_oracle(base, inverted, op, bound).identified_pairs)
    else:
        if collapsed and base.has_one and base.has_zero:
            pairs.append((base.one, base.zero))
        for g in inverted.generators:
            verdict: Cancellation = is_cancellative(base, g, op)
            # witnesses are unordered pairs; skip (y, x) once (x, y) is listed
            if verdict.verdict is Verdict.NO and set(verdict.witness) not in [set(p) for p in pairs]:
                pairs.append(verdict.witness)
    pairs = pairs[:sample]
    if collapsed:
        z = base.format(base._absorbing(op))
        reason = f"{z} lies in the closure of {inverted}; inverting it forces 1 = 0"
    elif pairs:
        reason = f"{inverted} contains a non-cancellative element; distinct elements are identified"
    else:
        reason = f"every element of {inverted} is cancellative; the extension is injective"
    return CollapseReport(collapsed, tuple(pairs), reason)
