"""Fubini-type polynomial families in x (or y).

Polynomials come from finite Stirling sums; each family is then cross-checked
against its generating function in ``t`` at ``nmax + 2`` distinct rational
sample points, so two polynomials of degree ``<= nmax`` that agree there are
equal.  The series engine stays scalar: no bivariate series are formed.
"""

from __future__ import annotations

import math
import threading
import warnings
from fractions import Fraction
from functools import lru_cache
from itertools import count

from .errors import RouteMismatch
from .harmonic import (
    harmonic_deg,
    hyperharmonic_deg,
    hyperharmonic_relation,
    relation_denominator,
)
from .kernel import LambdaContext, rising_factorial
from .poly import Poly, eval_poly, interpolate
from .series import PowerSeries, egf_coeff, ps_binom_pow, ps_deg_exp, ps_deg_log, ps_div
from .stirling import stirling2_deg

__all__ = [
    "DEFAULT_SAMPLES",
    "sample_points",
    "fubini_deg",
    "fubini_table",
    "fubini_order_table",
    "hf_table",
    "hfr_table",
    "fubini_deg_order",
    "hf_poly",
    "hfr_poly",
    "hfr_poly_ratio_form",
    "classical_fubini",
    "fubini_gf_series",
    "fubini_order_gf_series",
    "hf_gf_series",
    "hfr_gf_series",
]

DEFAULT_SAMPLES: tuple[Fraction, ...] = tuple(
    Fraction(v) for v in (1, 2, Fraction(-1, 2), Fraction(1, 3), 5, -3)
)


def sample_points(n: int) -> list[Fraction]:
    """``n`` distinct nonzero rationals, the default six first."""
    out = list(DEFAULT_SAMPLES[:n])
    seen = set(out)
    for height in count(2):
        if len(out) >= n:
            break
        for q in range(1, height + 1):
            p = height - q + 1
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in seen and len(out) < n:
                    seen.add(cand)
                    out.append(cand)
    return out


# -- generating functions at a sampled x ------------------------------------


@lru_cache(maxsize=256)
def _e_minus_1(order: int, ctx: LambdaContext) -> PowerSeries:
    return ps_deg_exp(PowerSeries.variable(order), 1, ctx) - 1


def fubini_gf_series(x0, order: int, ctx: LambdaContext) -> PowerSeries:
    """``1 / (1 - x0 (e_lambda(t) - 1))``."""
    denom = 1 - _e_minus_1(order, ctx) * x0
    return ps_div(PowerSeries.constant(Fraction(1), order), denom)


def fubini_order_gf_series(x0, alpha, order: int, ctx: LambdaContext) -> PowerSeries:
    """``(1 / (1 - x0 (e_lambda(t) - 1)))^alpha``."""
    g = fubini_gf_series(x0, order, ctx)
    return ps_binom_pow(g - 1, alpha)


def hf_gf_series(x0, order: int, ctx: LambdaContext) -> PowerSeries:
    """``-log_lambda(1 - x0 (e_lambda(t)-1)) / (1 - x0 (e_lambda(t)-1))``."""
    w = _e_minus_1(order, ctx) * (-x0)
    return ps_div(-ps_deg_log(w, ctx), 1 + w)


def hfr_gf_series(x0, r: int, order: int, ctx: LambdaContext) -> PowerSeries:
    """``-log_lambda(1 - x0 (e_lambda(t)-1)) / (1 - x0 (e_lambda(t)-1))^r``."""
    w = _e_minus_1(order, ctx) * (-x0)
    return -ps_deg_log(w, ctx) * ps_binom_pow(w, -r)


# -- verification against the generating function ---------------------------


def _check_against_gf(what: str, polys: list[Poly], series_at, ctx: LambdaContext) -> None:
    nmax = len(polys) - 1
    for x0 in sample_points(nmax + 2):
        s = series_at(x0)
        for n, p in enumerate(polys):
            left = ctx.coerce(eval_poly(p, x0))
            right = ctx.coerce(egf_coeff(s, n))
            if left != right:
                raise RouteMismatch(f"{what} at x={x0}", n, left, right)


_cache: dict = {}
_lock = threading.Lock()


def _family(key, nmax: int, build) -> tuple[Poly, ...]:
    if nmax < 0:
        raise ValueError("n must be >= 0")
    with _lock:
        hit = _cache.get(key)
    if hit is not None and len(hit) > nmax:
        return hit[: nmax + 1]
    polys = tuple(build())
    with _lock:
        cur = _cache.get(key)
        if cur is None or len(cur) < len(polys):
            _cache[key] = polys
    return polys


def _stirling_weighted(nmax: int, ctx: LambdaContext, weight, var: str, kmin: int = 0) -> list[Poly]:
    s2 = stirling2_deg(nmax, ctx)
    return [
        Poly([ctx.zero()] * kmin + [s2[n, k] * weight(k) for k in range(kmin, n + 1)], var).map(ctx.coerce)
        for n in range(nmax + 1)
    ]


def fubini_table(nmax: int, ctx: LambdaContext) -> tuple[Poly, ...]:
    def build():
        polys = _stirling_weighted(nmax, ctx, math.factorial, "x")
        _check_against_gf(
            f"Fubini(lambda={ctx.label})", polys, lambda x0: fubini_gf_series(x0, nmax, ctx), ctx
        )
        return polys

    return _family(("F", ctx), nmax, build)


def fubini_deg(n: int, ctx: LambdaContext) -> Poly:
    """``F_{n,lam}(x) = sum_k S2(n,k) k! x^k``."""
    return fubini_table(n, ctx)[n]


def fubini_order_table(nmax: int, alpha, ctx: LambdaContext) -> tuple[Poly, ...]:
    alpha = ctx.coerce(alpha)

    def build():
        polys = _stirling_weighted(nmax, ctx, lambda k: rising_factorial(alpha, k), "x")
        _check_against_gf(
            f"Fubini order {alpha} (lambda={ctx.label})",
            polys,
            lambda x0: fubini_order_gf_series(x0, alpha, nmax, ctx),
            ctx,
        )
        return polys

    return _family(("Fa", ctx, alpha), nmax, build)


def fubini_deg_order(n: int, alpha, ctx: LambdaContext) -> Poly:
    """``F^{(alpha)}_{n,lam}(x) = sum_{k=0}^{n} <alpha>_k S2(n,k) x^k``."""
    return fubini_order_table(n, alpha, ctx)[n]


def hf_table(nmax: int, ctx: LambdaContext) -> tuple[Poly, ...]:
    def build():
        h = harmonic_deg(nmax, ctx)
        polys = _stirling_weighted(nmax, ctx, lambda k: h[k] * math.factorial(k), "x", kmin=1)
        _check_against_gf(
            f"harmonic-Fubini(lambda={ctx.label})", polys, lambda x0: hf_gf_series(x0, nmax, ctx), ctx
        )
        return polys

    return _family(("HF", ctx), nmax, build)


def hf_poly(n: int, ctx: LambdaContext) -> Poly:
    """``HF_{n,lam}(x) = sum_{k=1}^{n} S2(n,k) H_{k,lam} k! x^k``."""
    return hf_table(n, ctx)[n]


def hfr_poly_ratio_form(n: int, r: int, ctx: LambdaContext, var: str = "y") -> Poly:
    """The hyperharmonic-Fubini polynomial with ``H^{(r)}_k`` replaced by
    ``binom(k+r-1, r-1)/binom(r-1-lam, r-1) (H_{k+r-1} - H_{r-1})``.

    Raises NonInvertibleRelation when the binomial divisor vanishes.
    """
    s2 = stirling2_deg(n, ctx)
    h = harmonic_deg(n + r - 1, ctx)
    cs = [ctx.zero()]
    for k in range(1, n + 1):
        cs.append(hyperharmonic_relation(k, r, ctx, h) * math.factorial(k) * s2[n, k])
    return Poly(cs, var).map(ctx.coerce)


def hfr_table(nmax: int, r: int, ctx: LambdaContext) -> tuple[Poly, ...]:
    if r < 1:
        raise ValueError("r must be >= 1")

    def build():
        hr = hyperharmonic_deg(nmax, r, ctx)
        polys = _stirling_weighted(nmax, ctx, lambda k: hr[k] * math.factorial(k), "y", kmin=1)
        if relation_denominator(r, ctx):
            for n, p in enumerate(polys):
                alt = hfr_poly_ratio_form(n, r, ctx)
                for i in range(n + 1):
                    if p.coeff(i) != alt.coeff(i):
                        raise RouteMismatch(
                            f"hyperharmonic-Fubini ratio form (lambda={ctx.label}, r={r}) n={n}",
                            i,
                            p.coeff(i),
                            alt.coeff(i),
                        )
        else:
            warnings.warn(
                f"hyperharmonic-Fubini(lambda={ctx.label}, r={r}): binomial divisor vanishes, ratio form skipped",
                RuntimeWarning,
                stacklevel=3,
            )
        _check_against_gf(
            f"hyperharmonic-Fubini(lambda={ctx.label}, r={r})",
            polys,
            lambda y0: hfr_gf_series(y0, r, nmax, ctx),
            ctx,
        )
        return polys

    return _family(("HFr", ctx, r), nmax, build)


def hfr_poly(n: int, r: int, ctx: LambdaContext) -> Poly:
    """``HF^{(r)}_{n,lam}(y) = sum_{k=1}^{n} H^{(r)}_{k,lam} y^k k! S2(n,k)``."""
    return hfr_table(n, r, ctx)[n]


def classical_fubini(n: int) -> Poly:
    """Ordinary Fubini polynomial from ``1/(1 - x (e^t - 1))`` alone.

    The exponential series is built from ``1/k!`` directly and the polynomial
    recovered by interpolating ``n + 1`` sampled coefficients.
    """
    exp_m1 = PowerSeries([Fraction(0)] + [Fraction(1, math.factorial(k)) for k in range(1, n + 1)], n)
    pts = sample_points(n + 1)
    vals = []
    for x0 in pts:
        s = ps_div(PowerSeries.constant(Fraction(1), n), 1 - exp_m1 * x0)
        vals.append(egf_coeff(s, n))
    return interpolate(pts, vals, "x")
