from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degenharm.errors import NonUnitConstantTerm, NonzeroInnerConstant, OrderExhausted, VarMismatch
from degenharm.kernel import LambdaContext, LambdaPoly
from degenharm.series import (
    PowerSeries,
    deg_log_coefficients,
    egf_coeff,
    ps_binom_pow,
    ps_compose,
    ps_deg_exp,
    ps_deg_log,
    ps_derive,
    ps_div,
    ps_mul,
    ps_theta_falling,
)

SYM = LambdaContext.symbolic()
LAM = LambdaPoly.gen()
coeff = st.fractions(min_value=-9, max_value=9, max_denominator=6)


def series(order=8, unit=False, var="t"):
    head = st.just(Fraction(1)) if unit else coeff
    return st.tuples(head, st.lists(coeff, min_size=order, max_size=order)).map(
        lambda p: PowerSeries([p[0], *p[1]], order, var)
    )


def test_truncation_takes_the_smaller_order():
    a = PowerSeries([1, 1, 1, 1], 3)
    b = PowerSeries([1, 2], 1)
    assert (a * b).order == 1
    assert (a + b).coeffs == (2, 3)


def test_variables_are_checked():
    with pytest.raises(VarMismatch):
        PowerSeries.variable(3, "x") * PowerSeries.variable(3, "y")
    with pytest.raises(VarMismatch):
        PowerSeries.variable(3, "x") + PowerSeries.variable(3, "y")


@given(series(), series(unit=True))
def test_division_inverts_multiplication(a, b):
    assert ps_mul(ps_div(a, b), b) == a


def test_division_needs_unit():
    t = PowerSeries.variable(4)
    with pytest.raises(NonUnitConstantTerm):
        ps_div(PowerSeries.constant(1, 4), t)
    with pytest.raises(NonUnitConstantTerm):
        ps_div(PowerSeries.constant(1, 4), PowerSeries([LAM], 4))


def test_geometric_series():
    t = PowerSeries.variable(6)
    assert ps_div(PowerSeries.constant(Fraction(1), 6), 1 - t).coeffs == (1,) * 7


@settings(max_examples=40)
@given(series(6), series(6), series(6))
def test_composition_is_associative(f, g, h):
    g = PowerSeries([0, *g.coeffs[1:]], g.order)
    h = PowerSeries([0, *h.coeffs[1:]], h.order)
    assert ps_compose(ps_compose(f, g), h) == ps_compose(f, ps_compose(g, h))


def test_compose_rejects_nonzero_inner_constant():
    with pytest.raises(NonzeroInnerConstant):
        ps_compose([1, 1], PowerSeries([1, 1], 3))


def test_binomial_power_is_multiplicative():
    u = PowerSeries([0, 2, -1, 3], 6)
    half = ps_binom_pow(u, Fraction(1, 2))
    assert half * half == (1 + u)
    assert ps_binom_pow(u, 3) == (1 + u) ** 3


def test_deg_log_coefficients_match_closed_formula():
    # ((1+t)^lam - 1)/lam: coefficient k is binom(lam, k)/lam
    ctx = LambdaContext.fixed(Fraction(2, 7))
    cs = deg_log_coefficients(8, ctx)
    for k in range(1, 9):
        binom = math.prod(Fraction(2, 7) - j for j in range(k)) / math.factorial(k)
        assert cs[k] == binom / Fraction(2, 7)


def test_deg_log_symbolic_example():
    s = ps_deg_log(PowerSeries.variable(2), SYM)
    assert s.coeffs[1] == 1
    assert s.coeffs[2] == (LAM - 1) / 2
    assert s.pretty() == "t + (-1 + λ)/2 t^2 + O(t^3)"


@pytest.mark.parametrize("lam", ["1/2", "-1/3", "3", "symbolic"])
def test_deg_log_and_exp_invert_each_other(lam):
    ctx = LambdaContext.parse(lam)
    t = PowerSeries.variable(16)
    assert ps_deg_log(ps_deg_exp(t, 1, ctx) - 1, ctx) == t
    assert ps_deg_exp(ps_deg_log(t, ctx), 1, ctx) - 1 == t


def test_deg_exp_at_integer_lambda_is_binomial():
    # e_lam^x(t) = (1 + lam t)^(x/lam)
    ctx = LambdaContext.fixed(2)
    t = PowerSeries.variable(8)
    assert ps_deg_exp(t, 6, ctx) == (1 + 2 * t) ** 3


def test_product_rule_on_random_units():
    ctx = LambdaContext.fixed(Fraction(2, 5))
    rng = random.Random(7)
    a = PowerSeries([1] + [Fraction(rng.randint(-3, 3)) for _ in range(10)], 10)
    b = PowerSeries([1] + [Fraction(rng.randint(-3, 3)) for _ in range(10)], 10)
    lhs = ps_deg_log(a * b - 1, ctx)
    rhs = ps_binom_pow(a - 1, ctx.lam) * ps_deg_log(b - 1, ctx) + ps_deg_log(a - 1, ctx)
    assert lhs == rhs


def test_theta_and_derivative():
    s = PowerSeries([1, 1, 1, 1, 1], 4)
    th = ps_theta_falling(s, 2, SYM)
    assert th[3] == 3 * (3 - LAM)
    d = ps_derive(s, 2)
    assert d.order == 2 and d.coeffs == (2, 6, 12)
    with pytest.raises(OrderExhausted):
        ps_derive(s, 5)
    assert egf_coeff(s, 4) == 24
    with pytest.raises(OrderExhausted):
        egf_coeff(s, 5)


def test_pretty_printer():
    assert PowerSeries([1, 1, Fraction(-1, 2)], 2).pretty() == "1 + t - 1/2 t^2 + O(t^3)"
    assert PowerSeries([], 0).pretty() == "O(t)"
    assert PowerSeries([1, 1, (1 - LAM) / 2], 2).pretty() == "1 + t + (1 - λ)/2 t^2 + O(t^3)"
