from fractions import Fraction

import pytest

from cliffordspec.errors import KindMismatchError
from cliffordspec.scalars import GaussianRational, as_gaussian


def test_arithmetic_is_exact():
    a = GaussianRational(Fraction(1, 3), Fraction(1, 7))
    b = GaussianRational(Fraction(2, 5), Fraction(-3, 11))
    s = a + b
    assert s.re == Fraction(1, 3) + Fraction(2, 5)
    assert s.im == Fraction(1, 7) - Fraction(3, 11)
    p = a * b
    assert p.re == Fraction(1, 3) * Fraction(2, 5) - Fraction(1, 7) * Fraction(-3, 11)
    q = a / b
    assert q * b == a


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / GaussianRational(0)


def test_parse_fraction_strings():
    v = GaussianRational.parse("3/4", "-1/2")
    assert v.re == Fraction(3, 4) and v.im == Fraction(-1, 2)


def test_conjugate_and_power():
    i = GaussianRational(0, 1)
    assert i.conjugate() == GaussianRational(0, -1)
    assert i**2 == GaussianRational(-1)
    assert i**0 == GaussianRational(1)
    assert (GaussianRational(Fraction(1, 2)) ** 3).re == Fraction(1, 8)


def test_float_mixing_is_an_error():
    with pytest.raises(KindMismatchError):
        GaussianRational(1) + 0.5
    with pytest.raises(KindMismatchError):
        GaussianRational(1) * 1.5j
    with pytest.raises(KindMismatchError):
        as_gaussian(0.3)


def test_int_and_fraction_promote():
    v = GaussianRational(Fraction(1, 2)) + 1
    assert v.re == Fraction(3, 2)
    v = Fraction(1, 4) * GaussianRational(0, 2)
    assert v.im == Fraction(1, 2)
