from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degenharm.errors import NonDivisible
from degenharm.kernel import (
    LambdaContext,
    LambdaPoly,
    binomial_general,
    div_exact_lambda,
    evaluate_at,
    exact_div,
    falling_factorial,
    falling_factorial_deg,
    rising_factorial,
    to_fraction,
)

LAM = LambdaPoly.gen()

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(fractions, max_size=5).map(LambdaPoly)


def test_normal_form_is_canonical():
    p = LambdaPoly([Fraction(1, 2), Fraction(-1, 2), 0, 0])
    assert p.degree == 1
    assert p.numerators == (1, -1)
    assert p.denominator == 2
    assert p.coeffs == (Fraction(1, 2), Fraction(-1, 2))
    assert LambdaPoly([]) == 0
    assert not LambdaPoly([0, 0])


def test_constant_poly_equals_and_hashes_like_fraction():
    c = LambdaPoly.const(Fraction(3, 4))
    assert c == Fraction(3, 4)
    assert hash(c) == hash(Fraction(3, 4))
    assert {c: 1}[Fraction(3, 4)] == 1
    assert c.is_constant() and c.constant_term() == Fraction(3, 4)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(polys, polys, fractions)
def test_evaluation_is_a_homomorphism(a, b, x):
    assert (a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x)
    assert (a + b).evaluate(x) == a.evaluate(x) + b.evaluate(x)
    assert (a - b).evaluate(x) == a.evaluate(x) - b.evaluate(x)


@given(polys, polys)
def test_exact_division_recovers_factor(a, b):
    if not b:
        return
    assert (a * b) / b == a
    assert exact_div(a * b, b) == a


def test_inexact_division_raises():
    with pytest.raises(NonDivisible):
        (LAM + 1) / (LAM - 1)
    with pytest.raises(NonDivisible):
        1 / LAM


def test_scalar_and_mixed_arithmetic():
    assert 2 * LAM + Fraction(1, 2) == LambdaPoly([Fraction(1, 2), 2])
    assert (LAM + 1) ** 2 == LAM * LAM + 2 * LAM + 1
    assert (2 * LAM + 4) / 2 == LAM + 2
    assert 1 - LAM == LambdaPoly([1, -1])
    assert (LAM**2 - 1) / (LAM - 1) == LAM + 1


def test_div_exact_lambda():
    assert div_exact_lambda(LAM**2 - 3 * LAM) == LAM - 3
    assert div_exact_lambda(LambdaPoly([])) == 0
    with pytest.raises(NonDivisible):
        div_exact_lambda(LAM + 1)


def test_context_rejects_zero():
    with pytest.raises(ValueError):
        LambdaContext.fixed(0)
    with pytest.raises(ValueError):
        LambdaContext.parse("0")


def test_context_parse_and_coerce():
    sym = LambdaContext.parse("symbolic")
    assert sym.is_symbolic and sym.label == "symbolic" and sym.lam == LAM
    half = LambdaContext.parse("1/2")
    assert half.lam == Fraction(1, 2) and half.label == "1/2"
    assert isinstance(sym.coerce(3), LambdaPoly)
    assert half.coerce(LambdaPoly.const(3)) == 3
    assert sym.div_lambda(LAM * 5) == 5
    assert half.div_lambda(1) == 2
    with pytest.raises(ValueError):
        to_fraction(LAM)


def test_falling_factorials():
    # (x)_{n,lam} at lam = 1 is the ordinary falling factorial
    for n in range(6):
        assert falling_factorial_deg(Fraction(7), n, 1) == falling_factorial(7, n)
    # at lam = 0 it is x^n
    assert falling_factorial_deg(Fraction(3), 4, 0) == 81
    p = falling_factorial_deg(Fraction(2), 3, LAM)
    assert p == 2 * (2 - LAM) * (2 - 2 * LAM)
    with pytest.raises(ValueError):
        falling_factorial_deg(1, -1, LAM)


def test_rising_and_binomial():
    assert rising_factorial(3, 4) == 3 * 4 * 5 * 6
    assert binomial_general(Fraction(5, 2), 3) == Fraction(5, 16)
    assert binomial_general(7, 3) == 35
    assert binomial_general(LAM, 2) == LAM * (LAM - 1) / 2


@settings(max_examples=50)
@given(fractions, st.integers(0, 6))
def test_binomial_matches_evaluated_symbolic(q, k):
    sym = binomial_general(LAM + q, k)
    assert evaluate_at(sym, 0) == binomial_general(q, k)
