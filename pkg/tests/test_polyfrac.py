import random
from fractions import Fraction

import pytest
import sympy

from unring import Integers, PolynomialRing, Rationals, RationalFunction, ZMod, formal_derivative
from unring import poly_eval, ratfunc_eq_as_fractions, ratfunc_eq_as_functions
from unring.errors import CancellationNotGuaranteed, ContextMismatch
from unring.polyfrac import FunctionVerdict, poly_add, poly_mul

ZX = PolynomialRing(Integers())
QX = PolynomialRing(Rationals())


def test_difference_of_squares():
    x = ZX.x
    assert str(poly_mul(1 + x, 1 - x)) == "1 - x^2"


def test_eval_square():
    assert poly_eval(ZX.x ** 2, 3) == Integers()(9)


def test_add_zero():
    p = ZX.from_coeffs([1, -2, 0, 4])
    assert poly_add(p, ZX.zero) == p
    assert p.degree == 3 and ZX.zero.degree is None


def test_mixed_rings_rejected():
    with pytest.raises(ContextMismatch):
        poly_add(ZX.x, QX.x)


def test_formal_derivative():
    assert str(formal_derivative(QX.from_coeffs([0, -2, 0, 1]))) == "-2 + 3*x^2"


def _pinned_pair(a=2):
    x = QX.x
    f = RationalFunction(a ** 2 - x ** 2, a - x)
    g = RationalFunction(a + x, QX.one)
    return f, g


def test_pinned_fraction_equal():
    f, g = _pinned_pair()
    assert str(f) == "(4 - x^2)/(2 - x)"
    assert ratfunc_eq_as_fractions(f, g)


def test_cancelled_x_fraction_equal():
    x = QX.x
    assert ratfunc_eq_as_fractions(RationalFunction(x ** 2 + x, x), RationalFunction(x + 1, QX.one))


def test_distinct_polynomials_not_fraction_equal():
    x = QX.x
    assert not ratfunc_eq_as_fractions(RationalFunction(x, QX.one), RationalFunction(x + 1, QX.one))


def test_pinned_function_mismatch_at_a():
    f, g = _pinned_pair()
    res = ratfunc_eq_as_functions(f, g, [0, 1, 2, 3])
    assert res.verdict is FunctionVerdict.DOMAIN_MISMATCH
    assert res.witness == Rationals()(2)


def test_pinned_function_equal_off_a():
    f, g = _pinned_pair()
    assert ratfunc_eq_as_functions(f, g, [0, 1, 3]).verdict is FunctionVerdict.EQUAL


def test_function_unequal():
    x = QX.x
    res = ratfunc_eq_as_functions(RationalFunction(x, QX.one), RationalFunction(x + 1, QX.one), [0])
    assert res.verdict is FunctionVerdict.UNEQUAL and res.witness == Rationals()(0)


def test_non_domain_base_refused():
    R = PolynomialRing(ZMod(6))
    f = RationalFunction(R.x, R.one)
    with pytest.raises(CancellationNotGuaranteed):
        ratfunc_eq_as_fractions(f, f)


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        RationalFunction(QX.x, QX.zero)


def test_products_match_sympy():
    rng = random.Random(5)
    xs = sympy.Symbol("x")
    for _ in range(50):
        a = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(rng.randint(1, 5))]
        b = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(rng.randint(1, 5))]
        ours = QX.from_coeffs(a) * QX.from_coeffs(b)
        ref = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * xs ** k for k, c in enumerate(a))
                         * sum(sympy.Rational(c.numerator, c.denominator) * xs ** k for k, c in enumerate(b)), xs)
        expected = [Fraction(int(c.p), int(c.q)) for c in reversed(ref.all_coeffs())] if not ref.is_zero else []
        assert [ours.coeff(k).payload for k in range(len(expected))] == expected
        assert ours.degree == (len(expected) - 1 if expected else None)
