from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from unring import (
    ADDITIVE,
    INF,
    MULTIPLICATIVE,
    FiniteMonoid,
    Integers,
    Naturals,
    Rationals,
    Tropical,
    Verdict,
    ZeroRing,
    ZMod,
    add,
    is_cancellative,
    law_violations,
    mul,
)
from unring.errors import ContextMismatch, InvalidCarrier, NotRepresentable


Z, Q, T, N = Integers(), Rationals(), Tropical(), Naturals()


def test_integer_add():
    assert add(Z, Z(2), Z(3)) == Z(5)


def test_tropical_add_is_min():
    assert add(T, T(3), T(5)) == T(3)
    assert add(T, T(4), T(INF)) == T(4)


def test_tropical_mul_is_plus():
    assert mul(T, T(3), T(5)) == T(8)
    assert mul(T, T(3), T.zero) == T.zero


def test_rational_product():
    assert mul(Q, Q(Fraction(2, 3)), Q(Fraction(4, 5))) == Q(Fraction(8, 15))


@pytest.mark.parametrize("ctx", [Z, Q, N, T, ZMod(6)])
def test_one_is_identity(ctx):
    a = ctx(3)
    assert mul(ctx, ctx.one, a) == a


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        add(Z, Z(1), Q(1))


def test_elements_from_different_contexts_are_unequal():
    assert Z(1) != Q(1)


def test_naturals_subtraction_not_representable():
    with pytest.raises(NotRepresentable):
        N._sub(2, 5)
    assert N._sub(5, 2) == 3


def test_integers_cancellative():
    c = is_cancellative(Z, Z(5), MULTIPLICATIVE)
    assert c.verdict is Verdict.YES and c.cancellative


def test_zero_not_cancellative():
    c = is_cancellative(Z, Z(0), "mul")
    assert c.verdict is Verdict.NO
    x, y = c.witness
    assert x != y and Z(0) * x == Z(0) * y


def test_tropical_additive_witness():
    c = is_cancellative(T, T(3), ADDITIVE)
    assert c.verdict is Verdict.NO
    x, y = c.witness
    assert x != y and T(3) + x == T(3) + y
    # the pair (7, 9) is a valid witness as well
    assert T(3) + T(7) == T(3) + T(9) == T(3)


def test_tropical_infinity_is_additively_cancellative():
    assert is_cancellative(T, T(INF), ADDITIVE).verdict is Verdict.YES


def test_boolean_or_witness():
    B = FiniteMonoid.boolean_or()
    c = is_cancellative(B, B("1"), ADDITIVE)
    assert c.verdict is Verdict.NO
    assert [str(w) for w in c.witness] == ["0", "1"]


def test_zmod_zero_divisors():
    R = ZMod(6)
    assert is_cancellative(R, R(2), MULTIPLICATIVE).verdict is Verdict.NO
    assert is_cancellative(R, R(5), MULTIPLICATIVE).verdict is Verdict.YES
    assert not R.is_domain and ZMod(7).is_domain


@pytest.mark.parametrize("ctx", [ZMod(4), ZMod(5), FiniteMonoid.boolean_or(), FiniteMonoid.min_chain(4), ZeroRing()])
def test_finite_carriers_obey_laws(ctx):
    ops = (ADDITIVE, MULTIPLICATIVE) if isinstance(ctx, (ZMod, ZeroRing)) else (ADDITIVE,)
    assert law_violations(ctx, ops) == []


def test_zero_ring_everything_equal():
    R = ZeroRing()
    assert R(2) == R(0) == R.one
    assert str(R(5)) == "0 (zero ring)"


def test_finite_monoid_rejects_nonassociative():
    # x*y = 1 for all x, y except 0*0 = 0 is not associative on {0, 1, 2}
    table = ((0, 1, 1), (1, 1, 2), (1, 2, 1))
    with pytest.raises(InvalidCarrier):
        FiniteMonoid(table)


def test_finite_monoid_rejects_noncommutative():
    with pytest.raises(InvalidCarrier):
        FiniteMonoid(((0, 1), (0, 1)))


def test_min_chain_neutral_is_infinity():
    M = FiniteMonoid.min_chain(4)
    assert str(M.zero) == "∞"
    assert M.additively_idempotent and not M.additively_cancellative


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_integer_distributivity(a, b, c):
    assert Z(a) * (Z(b) + Z(c)) == Z(a) * Z(b) + Z(a) * Z(c)


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))
def test_tropical_distributivity(a, b, c):
    assert T(a) * (T(b) + T(c)) == T(a) * T(b) + T(a) * T(c)
