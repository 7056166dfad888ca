from __future__ import annotations

import math
import warnings
from fractions import Fraction

import pytest

from degenharm.fubini import (
    classical_fubini,
    fubini_deg,
    fubini_deg_order,
    hf_poly,
    hfr_poly,
    sample_points,
)
from degenharm.harmonic import harmonic_deg, hyperharmonic_deg
from degenharm.kernel import LambdaContext, LambdaPoly, evaluate_at, falling_factorial_deg, rising_factorial
from degenharm.poly import Poly, eval_poly, interpolate

SYM = LambdaContext.symbolic()
LAM = LambdaPoly.gen()
HALF = LambdaContext.fixed(Fraction(1, 2))


def _explicit_s2(n: int, k: int, lam):
    # S2(n,k) = (1/k!) sum_j (-1)^(k-j) binom(k,j) (j)_{n,lam}
    total = sum(((-1) ** (k - j) * math.comb(k, j) * falling_factorial_deg(j, n, lam) for j in range(k + 1)), Fraction(0))
    return total / math.factorial(k)


def test_small_polynomials():
    assert fubini_deg(2, SYM).coeffs == (0, 1 - LAM, 2)
    assert hf_poly(2, SYM).coeffs == (0, 1 - LAM, 3 - LAM)
    assert hfr_poly(2, 2, SYM).coeffs == (0, 1 - LAM, 5 - LAM)
    f = fubini_deg_order(2, 1 - LAM, SYM)
    assert f.coeffs == (0, (1 - LAM) ** 2, (1 - LAM) * (2 - LAM))
    assert eval_poly(hf_poly(2, HALF), 1) == 3


@pytest.mark.parametrize("lam", [Fraction(1, 2), Fraction(-1, 3), Fraction(3)], ids=str)
def test_families_match_explicit_stirling_oracle(lam):
    ctx = LambdaContext.fixed(lam)
    h = harmonic_deg(7, ctx)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        h3 = hyperharmonic_deg(7, 3, ctx)
    for n in range(8):
        s2 = [_explicit_s2(n, k, lam) for k in range(n + 1)]
        assert fubini_deg(n, ctx) == Poly([s2[k] * math.factorial(k) for k in range(n + 1)])
        assert hf_poly(n, ctx) == Poly([s2[k] * math.factorial(k) * h[k] for k in range(n + 1)])
        assert fubini_deg_order(n, Fraction(5, 2), ctx) == Poly(
            [s2[k] * rising_factorial(Fraction(5, 2), k) for k in range(n + 1)]
        )
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            assert hfr_poly(n, 3, ctx) == Poly([s2[k] * math.factorial(k) * h3[k] for k in range(n + 1)], "y")


def test_classical_fubini_and_limit():
    ordered_bell = [1, 1, 3, 13, 75, 541, 4683]
    for n, b in enumerate(ordered_bell):
        assert eval_poly(classical_fubini(n), 1) == b
    assert classical_fubini(3).coeffs == (0, 1, 6, 6)
    for n in range(11):
        limit = fubini_deg(n, SYM).map(lambda c: evaluate_at(c, 0))
        assert limit == classical_fubini(n)


def test_fubini_order_one_is_fubini():
    for n in range(6):
        assert fubini_deg_order(n, 1, SYM) == fubini_deg(n, SYM)


def test_sample_points_are_distinct():
    pts = sample_points(20)
    assert len(set(pts)) == 20 and 0 not in pts
    assert pts[:6] == [1, 2, Fraction(-1, 2), Fraction(1, 3), 5, -3]


def test_interpolation_recovers_polynomial():
    p = Poly([Fraction(1), Fraction(-2), Fraction(0), Fraction(3, 2)])
    pts = sample_points(4)
    assert interpolate(pts, [eval_poly(p, x) for x in pts]) == p


def test_poly_algebra():
    p = Poly([1, 2, 3])
    assert p.derivative() == Poly([2, 6])
    assert (p * p).degree == 4
    assert p(2) == 17
    assert (p - p) == Poly([])
    with pytest.raises(ValueError):
        p + Poly([1], "y")
