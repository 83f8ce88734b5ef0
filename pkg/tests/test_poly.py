from fractions import Fraction as F

import pytest

from superskel.errors import NotInvertibleError, SuperskelError
from superskel.poly import Polynomial, RationalFunction


def poly(nvars, terms):
    return Polynomial(nvars, terms)


def test_constructor_canonicalizes():
    p = poly(2, {(1, 0): F(2), (0, 0): F(0), (1, 0): F(2)})
    assert p.terms == {(1, 0): F(2)}
    assert poly(1, {(0,): 1}) + poly(1, {(0,): -1}) == Polynomial.zero(1)


def test_arithmetic():
    x = Polynomial.variable(2, 0)
    y = Polynomial.variable(2, 1)
    assert (x + y) * (x - y) == x * x - y * y
    assert (x + 1) ** 3 == x ** 3 + 3 * x ** 2 + 3 * x + 1
    assert x * 0 == Polynomial.zero(2)


def test_eval_and_derivative():
    x = Polynomial.variable(2, 0)
    y = Polynomial.variable(2, 1)
    p = x ** 2 * y + 2 * y
    assert p.eval((F(3), F(5))) == 45 + 10
    assert p.derivative(0) == 2 * x * y
    assert p.derivative(1) == x ** 2 + 2


def test_divide_by_linear():
    x = Polynomial.variable(1, 0)
    p = x ** 2
    q = p.divide_by_linear(0, F(1))
    assert q == x + 1
    assert q * (x - 1) + Polynomial.constant(1, p.eval((F(1),))) == p


def test_divide_by_variable():
    x = Polynomial.variable(2, 0)
    y = Polynomial.variable(2, 1)
    assert (x * y + x * x).divide_by_variable(0) == y + x
    with pytest.raises(SuperskelError):
        (x + y).divide_by_variable(1)


def test_rational_equality_cross_multiplied():
    x = Polynomial.variable(1, 0)
    a = RationalFunction(x ** 2 - 1, x - 1)
    b = RationalFunction(x + 1)
    assert a == b
    assert RationalFunction(x, x) == RationalFunction(Polynomial.one(1))


def test_rational_arithmetic_and_quotient_rule():
    x = Polynomial.variable(1, 0)
    inv = RationalFunction(Polynomial.one(1), x)
    assert inv + inv == RationalFunction(Polynomial.constant(1, 2), x)
    assert inv.derivative(0) == RationalFunction(-Polynomial.one(1), x ** 2)
    assert (inv * inv).invert() == RationalFunction(x ** 2)
    with pytest.raises(NotInvertibleError):
        RationalFunction(Polynomial.zero(1)).invert()


def test_constant_denominators_fold():
    x = Polynomial.variable(1, 0)
    r = RationalFunction(x, Polynomial.constant(1, 2))
    assert r.is_polynomial()
    assert r.num == x * F(1, 2)


def test_eval_in_with_ring_values():
    x = Polynomial.variable(1, 0)
    p = x ** 2 + 1
    assert p.eval_in([F(3)], F(1)) == F(10)
