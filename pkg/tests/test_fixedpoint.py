import math

import pytest
from hypothesis import given, settings, strategies as st

from gmpy2 import mpz

from elemfun.fixedpoint import FixedPoint, isqrt_newton


mans = st.integers(min_value=-(1 << 200), max_value=1 << 200)
fbs = st.integers(min_value=0, max_value=256)


def test_isqrt_small():
    for n in range(2000):
        assert isqrt_newton(n) == math.isqrt(n)


@given(st.integers(min_value=0, max_value=1 << 700))
@settings(max_examples=60)
def test_isqrt_matches_math(n):
    assert isqrt_newton(n) == math.isqrt(n)


def test_isqrt_negative():
    with pytest.raises(ValueError):
        isqrt_newton(-1)


def test_constructors():
    x = FixedPoint.from_int(5, 16)
    assert x.man == 5 << 16
    y = FixedPoint.from_rational(1, 3, 64)
    assert abs(y.man * 3 - (1 << 64)) < 3
    z = FixedPoint.from_float(0.25, 8)
    assert z.man == 64
    with pytest.raises(ZeroDivisionError):
        FixedPoint.from_rational(1, 0, 8)
    with pytest.raises(ValueError):
        FixedPoint(1, -1)


def test_from_decimal():
    assert FixedPoint.from_decimal("-12.375", 16).man == -(12375 << 16) // 1000
    assert FixedPoint.from_decimal("3", 4).man == 48
    assert float(FixedPoint.from_decimal("0.5", 8)) == 0.5
    for bad in ("", "1.2.3", "abc", "."):
        with pytest.raises(ValueError):
            FixedPoint.from_decimal(bad, 8)


def test_to_decimal():
    assert FixedPoint.from_int(1, 32).to_decimal(10) == "1.0000000000"
    assert FixedPoint(0, 32).to_decimal(5) == "0"
    assert FixedPoint.from_float(-0.5, 32).to_decimal(2) == "-0.50"
    with pytest.raises(ValueError):
        FixedPoint.from_int(1, 8).to_decimal(0)


def test_to_scientific():
    x = FixedPoint.from_rational(1, 3, 200)
    s = x.to_scientific(10)
    assert s == "3.333333333e-01"
    assert FixedPoint(0, 8).to_scientific() == "0"
    assert FixedPoint.from_int(-250, 8).to_scientific(3) == "-2.50e+02"


def test_hex_round_trip():
    x = FixedPoint.from_rational(-355, 113, 100)
    assert FixedPoint.from_hex(x.to_hex()) == x


@given(mans, mans, fbs)
@settings(max_examples=60)
def test_add_sub_exact(a, b, fb):
    x, y = FixedPoint(a, fb), FixedPoint(b, fb)
    assert x.add(y).man == a + b
    assert x.sub(y).man == a - b
    assert x.add(y.neg()) == x.sub(y)


@given(mans, mans, fbs)
@settings(max_examples=60)
def test_mul_one_ulp(a, b, fb):
    x, y = FixedPoint(a, fb), FixedPoint(b, fb)
    exact = a * b  # scale 2^(2 fb)
    got = x.mul(y).man
    assert abs((mpz(got) << fb) - exact) < (mpz(1) << fb)


@given(mans, mans.filter(lambda v: v != 0), fbs)
@settings(max_examples=60)
def test_div_one_ulp(a, b, fb):
    x, y = FixedPoint(a, fb), FixedPoint(b, fb)
    got = x.div(y).man
    # |got - a*2^fb/b| < 1
    assert abs(got * b - (mpz(a) << fb)) <= abs(b)


@given(st.integers(min_value=0, max_value=1 << 300), fbs)
@settings(max_examples=60)
def test_sqrt_one_ulp(a, fb):
    x = FixedPoint(a, fb)
    s = x.sqrt()
    assert s.man * s.man <= a << fb
    assert (s.man + 1) * (s.man + 1) > a << fb


def test_nearest_int_quotient():
    x = FixedPoint.from_float(7.6, 32)
    e = FixedPoint.from_int(2, 32)
    assert x.nearest_int_quotient(e) == 4
    assert x.neg().nearest_int_quotient(e) == -4
    assert x.nearest_int_quotient(e.neg()) == -4
    with pytest.raises(ZeroDivisionError):
        x.nearest_int_quotient(FixedPoint(0, 32))


def test_alignment_and_compare():
    a = FixedPoint.from_int(1, 8)
    b = FixedPoint.from_int(1, 64)
    assert a == b
    assert a.add(b).man == 2 << 64
    assert FixedPoint.from_int(1, 8) < FixedPoint.from_int(2, 32)
    assert a.cmp(b) == 0


def test_shift_truncates_toward_zero():
    assert FixedPoint(-3, 8).shift(-1).man == -1
    assert FixedPoint(3, 8).shift(-1).man == 1
    assert FixedPoint(3, 8).shift(2).man == 12
