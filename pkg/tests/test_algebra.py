from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from detlab.algebra import MultiPoly, as_scalar, binom_int, binom_poly, binom_value, phi_poly, poly_arith
from detlab.errors import NonDivisibleError

x = MultiPoly.var("x")
y = MultiPoly.var("y")
t = MultiPoly.var("t")


def test_binom_int_examples():
    assert binom_int(4, 2) == 6
    assert binom_int(5, -1) == 0
    assert binom_int(-1, 3) == -1
    assert binom_int(3, 5) == 0


def test_binom_poly_examples():
    assert binom_poly("x", 1, 1) == x + 1
    assert binom_poly("x", 1, -1) == 0
    assert binom_poly("x", 2, 2) == (x * x + 3 * x + 2) * Fraction(1, 2)


def test_poly_arith_examples():
    one_minus = 1 - y
    assert poly_arith(one_minus ** 2, one_minus, "exact_div") == one_minus
    assert poly_arith((1 - y ** 3) ** 2, one_minus ** 2, "exact_div") == (1 + y + y ** 2) ** 2
    assert poly_arith(t ** -1 + 1, t, "mul") == 1 + t


def test_exact_div_rejects_remainder():
    with pytest.raises(NonDivisibleError):
        (x ** 2 + 1).exact_div(x + 1)


def test_phi_small():
    assert phi_poly(1) == 1
    phi2 = phi_poly(2)
    assert phi2.coefficients_integral()
    (lo, hi), = phi2.support_box()
    assert -1 <= lo and hi <= 4


def test_as_scalar_text():
    assert as_scalar("6/3") == 2 and isinstance(as_scalar("6/3"), int)
    assert as_scalar("-3/4") == Fraction(-3, 4)


def test_evaluate_and_str():
    p = 3 * x * y - Fraction(1, 2) * y ** -1
    assert p.evaluate({"x": 2, "y": 1}) == Fraction(11, 2)
    assert p.evaluate({"x": 0}) == -Fraction(1, 2) * y ** -1
    assert "x" in p.to_str()


small = st.integers(-3, 3)
coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.dictionaries(st.tuples(small, st.integers(0, 3)), coeff, max_size=5).map(
    lambda d: MultiPoly(("t", "x"), d))


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_exact_div_inverts_mul(a, b):
    if b.is_zero():
        return
    assert (a * b).exact_div(b) == a


@settings(max_examples=40, deadline=None)
@given(st.integers(-4, 6), st.integers(-2, 6), st.integers(-6, 6))
def test_binom_poly_matches_binom_int(offset, k, v):
    assert binom_poly("x", offset, k).evaluate({"x": v}) == binom_int(v + offset, k)
    assert binom_value(v + offset, k) == binom_int(v + offset, k)
