"""Executable registry of the identities satisfied by the degenerate families.

Each entry enumerates grid points (lambda, n, r, truncation order, sample
value, ...) and compares both sides exactly.  A point fails on the first
differing coefficient and the report carries both values; feeding the
recorded ``grid_point`` back to :func:`check_identity` reproduces it.

Identities with infinite sums are compared as formal series in the outer
variable up to a truncation order ``M``.  Every inner sum runs over powers
of a series with positive valuation, so only finitely many terms reach each
coefficient and the truncated comparison is exact.
"""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator

from .codec import format_value
from .errors import ConfigInvalid, UnknownIdentity, UnsupportedGrid
from .fubini import (
    fubini_deg_order,
    fubini_order_gf_series,
    hf_gf_series,
    hf_poly,
    hfr_gf_series,
    hfr_poly,
    hfr_poly_ratio_form,
)
from .harmonic import (
    harmonic_closed_form,
    harmonic_closed_form_rising,
    harmonic_deg,
    harmonic_gf_series,
    hyperharmonic_closed_form,
    hyperharmonic_closed_form_rising,
    hyperharmonic_deg,
    hyperharmonic_gf_series,
    hyperharmonic_recurrence,
    relation_denominator,
)
from .kernel import (
    LambdaContext,
    binomial_general,
    falling_factorial_deg,
    rising_factorial,
)
from .poly import Poly, eval_poly
from .series import (
    PowerSeries,
    egf_coeff,
    ps_binom_pow,
    ps_compose,
    ps_deg_log,
    ps_derive,
    ps_div,
    ps_theta_falling,
)
from .stirling import stirling1_deg, stirling2_deg, stirling2_r_deg

__all__ = [
    "PASS",
    "FAIL",
    "KNOWN_MISPRINT",
    "SUITE_VERSION",
    "Grid",
    "IdentitySpec",
    "IdentityReport",
    "list_identities",
    "get_identity",
    "check_identity",
    "replay",
    "run_suite",
    "LIMITS",
]

PASS = "PASS"
FAIL = "FAIL"
KNOWN_MISPRINT = "KNOWN_MISPRINT"
SUITE_VERSION = "1"

LIMITS = {"n_max": 16, "r_max": 5, "order": 40}

DEFAULT_LAMBDAS = ("1/2", "-1/3", "2/5", "3", "symbolic")
DEFAULT_SAMPLES = ("1", "2", "-1/2", "1/3", "5", "-3")

# test polynomials f, as (label, coefficients)
F_POLYS = (
    ("x", (0, 1)),
    ("x^2", (0, 0, 1)),
    ("x^3", (0, 0, 0, 1)),
    ("1+2x+x^3", (1, 2, 0, 1)),
)


@dataclass(frozen=True)
class Grid:
    """Parameter grid shared by all checks.

    ``order`` is the truncation order M for series comparisons; when
    ``order_offset`` is set, checks indexed by ``n`` use ``M = n + order_offset``
    instead.  ``pairs`` (random unit-series pairs) defaults to ``n_max``.
    """

    lambdas: tuple[str, ...] = DEFAULT_LAMBDAS
    n_max: int = 10
    r_max: int = 4
    order: int = 24
    samples: tuple[str, ...] = DEFAULT_SAMPLES
    seed: int = 0
    pairs: int | None = None
    order_offset: int | None = None
    unit_order: int = 12

    def validate(self) -> Grid:
        for key in ("n_max", "r_max", "order"):
            v = getattr(self, key)
            if not isinstance(v, int) or v < 0 or v > LIMITS[key]:
                raise UnsupportedGrid(f"{key}={v!r} outside 0..{LIMITS[key]}")
        if self.order_offset is not None and (
            self.order_offset < 0 or self.n_max + self.order_offset > LIMITS["order"]
        ):
            raise UnsupportedGrid(f"order_offset={self.order_offset} pushes the order beyond {LIMITS['order']}")
        if not 1 <= self.unit_order <= LIMITS["order"]:
            raise UnsupportedGrid(f"unit_order={self.unit_order} outside 1..{LIMITS['order']}")
        if self.pairs is not None and not 0 <= self.pairs <= 100:
            raise UnsupportedGrid(f"pairs={self.pairs} outside 0..100")
        for lam in self.lambdas:
            try:
                LambdaContext.parse(lam)
            except (ValueError, ZeroDivisionError) as exc:
                raise UnsupportedGrid(f"bad lambda {lam!r}: {exc}") from None
        for s in self.samples:
            try:
                Fraction(s)
            except (ValueError, ZeroDivisionError):
                raise UnsupportedGrid(f"bad sample point {s!r}") from None
        return self

    def with_overrides(self, overrides: dict | None) -> Grid:
        if not overrides:
            return self.validate()
        kw = {}
        aliases = {"nmax": "n_max", "rmax": "r_max", "M": "order"}
        names = {f for f in self.__dataclass_fields__}
        for key, val in overrides.items():
            key = aliases.get(key, key)
            if key == "lambda":
                key, val = "lambdas", [val]
            if key not in names:
                raise UnsupportedGrid(f"unknown grid parameter {key!r}")
            if key in ("lambdas", "samples"):
                if isinstance(val, str):
                    val = [val]
                val = tuple(str(v) for v in val)
            kw[key] = val
        return replace(self, **kw).validate()

    @property
    def n_pairs(self) -> int:
        return self.n_max if self.pairs is None else self.pairs

    def series_order(self, n: int, minimum: int = 0) -> int:
        if self.order_offset is not None:
            return n + self.order_offset
        return max(self.order, minimum)


@dataclass(frozen=True)
class IdentityReport:
    id: str
    grid_point: dict
    status: str
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"id": self.id, "grid_point": self.grid_point, "status": self.status, "detail": self.detail}


@dataclass(frozen=True)
class IdentitySpec:
    id: str
    statement: str
    expected: str
    points: Callable[[Grid], Iterator[dict]] = field(repr=False)
    evaluate: Callable[[dict], list[str]] = field(repr=False)
    notes: tuple[str, ...] = ()
    default_grid: Grid = Grid()


class _Mismatch(Exception):
    def __init__(self, detail: dict):
        super().__init__(detail)
        self.detail = detail


# -- comparison helpers -----------------------------------------------------


def _fmt(ctx: LambdaContext, v) -> str:
    return format_value(ctx.coerce(v))


def _cmp_values(ctx: LambdaContext, label: str, left, right) -> None:
    if ctx.coerce(left) != ctx.coerce(right):
        raise _Mismatch({"component": label, "index": None, "left": _fmt(ctx, left), "right": _fmt(ctx, right)})


def _cmp_seq(ctx: LambdaContext, label: str, left, right, var: str = "x") -> None:
    n = max(len(left), len(right))
    z = ctx.zero()
    for i in range(n):
        a = left[i] if i < len(left) else z
        b = right[i] if i < len(right) else z
        if ctx.coerce(a) != ctx.coerce(b):
            raise _Mismatch(
                {"component": label, "index": i, "term": f"{var}^{i}", "left": _fmt(ctx, a), "right": _fmt(ctx, b)}
            )


def _cmp_series(ctx: LambdaContext, label: str, left: PowerSeries, right: PowerSeries) -> None:
    m = min(left.order, right.order)
    _cmp_seq(ctx, label, left.coeffs[: m + 1], right.coeffs[: m + 1], left.var)


def _ctx(pt: dict) -> LambdaContext:
    return LambdaContext.parse(pt["lambda"])


# -- cached series in the outer variable ------------------------------------


@lru_cache(maxsize=None)
def _var(order: int, var: str) -> PowerSeries:
    return PowerSeries.variable(order, var)


@lru_cache(maxsize=None)
def _over_one_minus(order: int, var: str) -> PowerSeries:
    """``v / (1 - v)``."""
    v = _var(order, var)
    return ps_div(v, 1 - v)


@lru_cache(maxsize=None)
def _over_one_plus(order: int, var: str) -> PowerSeries:
    """``v / (1 + v)``."""
    v = _var(order, var)
    return ps_div(v, 1 + v)


@lru_cache(maxsize=None)
def _pow_one_minus(order: int, var: str, exponent) -> PowerSeries:
    """``(1 - v)^exponent``."""
    return ps_binom_pow(-_var(order, var), exponent)


@lru_cache(maxsize=None)
def _pow_one_plus(order: int, var: str, exponent) -> PowerSeries:
    return ps_binom_pow(_var(order, var), exponent)


@lru_cache(maxsize=None)
def _log_one_minus(order: int, var: str, ctx: LambdaContext) -> PowerSeries:
    """``log_lambda(1 - v)``."""
    return ps_deg_log(-_var(order, var), ctx)


@lru_cache(maxsize=None)
def _log_inv_one_plus(order: int, var: str, ctx: LambdaContext) -> PowerSeries:
    """``log_lambda(1/(1 + v))``."""
    v = _var(order, var)
    inv = ps_div(PowerSeries.constant(Fraction(1), order, var), 1 + v)
    return ps_deg_log(inv - 1, ctx)


def _as_series(p: Poly, order: int, var: str) -> PowerSeries:
    if p.degree > order:
        raise UnsupportedGrid(f"polynomial of degree {p.degree} exceeds series order {order}")
    return PowerSeries(p.coeffs, order, var)


def _shifted_rstirling(nmax: int, r: int, ctx: LambdaContext):
    """``{m brace k}_{r,lam}`` read as the r-Stirling entry at ``(m - r, k - r)``."""
    tri = stirling2_r_deg(max(nmax - r, 0), r, ctx)

    def entry(m: int, k: int):
        if m < r or k < r or k > m:
            return ctx.zero()
        return tri[m - r, k - r]

    return entry


# -- grids ------------------------------------------------------------------


def _lam_n(grid: Grid, n_min: int = 1) -> Iterator[dict]:
    for lam in grid.lambdas:
        for n in range(n_min, grid.n_max + 1):
            yield {"lambda": lam, "n": n}


def _lam_n_sample(grid: Grid) -> Iterator[dict]:
    for pt in _lam_n(grid):
        for s in grid.samples:
            yield {**pt, "sample": s}


def _lam_n_order(minimum_slack: int):
    def points(grid: Grid) -> Iterator[dict]:
        for pt in _lam_n(grid):
            yield {**pt, "order": grid.series_order(pt["n"], pt["n"] + minimum_slack)}

    return points


def _lam_r_n(grid: Grid, r_min: int = 1) -> Iterator[dict]:
    for lam in grid.lambdas:
        for r in range(r_min, grid.r_max + 1):
            for n in range(1, grid.n_max + 1):
                yield {"lambda": lam, "r": r, "n": n}


def _lam_f(grid: Grid) -> Iterator[dict]:
    for lam in grid.lambdas:
        for label, cs in F_POLYS:
            if len(cs) - 1 <= grid.n_max:
                yield {"lambda": lam, "f": label, "order": grid.order}


def _f_coeffs(label: str) -> tuple:
    for name, cs in F_POLYS:
        if name == label:
            return tuple(Fraction(c) for c in cs)
    raise UnsupportedGrid(f"unknown test polynomial {label!r}")


# -- checks -----------------------------------------------------------------

# GF series at sampled points are computed once at this order; coefficient n
# of a truncated series does not depend on the truncation order as long as
# it is at least n.
_SAMPLED_GF_ORDER = LIMITS["n_max"]


@lru_cache(maxsize=None)
def _hf_gf(x0: Fraction, ctx: LambdaContext) -> PowerSeries:
    return hf_gf_series(x0, _SAMPLED_GF_ORDER, ctx)


@lru_cache(maxsize=None)
def _hfr_gf(y0: Fraction, r: int, ctx: LambdaContext) -> PowerSeries:
    return hfr_gf_series(y0, r, _SAMPLED_GF_ORDER, ctx)


@lru_cache(maxsize=None)
def _fubini_shift_gf(x0: Fraction, ctx: LambdaContext) -> PowerSeries:
    return fubini_order_gf_series(x0, 1 - ctx.lam, _SAMPLED_GF_ORDER, ctx)


def _thm1(pt: dict) -> list[str]:
    ctx, n, x0 = _ctx(pt), pt["n"], Fraction(pt["sample"])
    s2, h = stirling2_deg(n, ctx), harmonic_deg(n, ctx)
    finite = sum((s2[n, k] * h[k] * math.factorial(k) * x0**k for k in range(1, n + 1)), ctx.zero())
    _cmp_values(ctx, "n! [t^n] generating function vs finite sum", egf_coeff(_hf_gf(x0, ctx), n), finite)
    return []


def _thm2(with_factorial: bool):
    def check(pt: dict) -> list[str]:
        ctx, n = _ctx(pt), pt["n"]
        s1, h = stirling1_deg(n, ctx), harmonic_deg(n, ctx)
        weight = math.factorial(n) if with_factorial else 1
        left = Poly.monomial(h[n] * weight, n)
        right = Poly([])
        for k in range(1, n + 1):
            right = right + hf_poly(k, ctx) * s1[n, k]
        _cmp_seq(ctx, "polynomial in x", left.coeffs, right.coeffs)
        return []

    return check


def _thm3(pt: dict) -> list[str]:
    ctx, n, x0 = _ctx(pt), pt["n"], Fraction(pt["sample"])
    lam = ctx.lam
    s2 = stirling2_deg(n, ctx)
    gf = egf_coeff(_fubini_shift_gf(x0, ctx), n)
    rising = sum((rising_factorial(1 - lam, k) * s2[n, k] * x0**k for k in range(n + 1)), ctx.zero())
    binom = sum(
        (binomial_general(k - lam, k) * math.factorial(k) * s2[n, k] * x0**k for k in range(n + 1)), ctx.zero()
    )
    _cmp_values(ctx, "generating function vs rising-factorial sum", gf, rising)
    _cmp_values(ctx, "rising-factorial sum vs binomial sum", rising, binom)
    _cmp_values(ctx, "rising-factorial sum vs fubini_deg_order", rising, eval_poly(fubini_deg_order(n, 1 - lam, ctx), x0))
    return []


def _falling_weights(n: int, M: int, ctx: LambdaContext, base) -> list:
    """``[(k)_{n,lam} * base(k) for k = 0..M]``."""
    lam = ctx.lam
    return [falling_factorial_deg(k, n, lam) * base(k) for k in range(M + 1)]


def _thm4_plus(pt: dict) -> list[str]:
    """``HF_n(y) = (1+y)^(lam-1) sum_k z^k (k)_{n,lam} (H_k + log_lam(1/(1+y)))``, z = y/(1+y)."""
    ctx, n, M = _ctx(pt), pt["n"], pt["order"]
    h = harmonic_deg(M, ctx)
    c = _falling_weights(n, M, ctx, lambda k: h[k])
    d = _falling_weights(n, M, ctx, lambda k: 1)
    z = _over_one_plus(M, "y")
    right = _pow_one_plus(M, "y", ctx.lam - 1) * (ps_compose(c, z) + _log_inv_one_plus(M, "y", ctx) * ps_compose(d, z))
    left = _as_series(hf_poly(n, ctx), M, "y")
    _cmp_series(ctx, "series in y", left, right)
    return []


def _hf_at_y_over_one_minus(p: Poly, M: int, r: int, ctx: LambdaContext) -> PowerSeries:
    """``(1-y)^(lam - r) * p(y/(1-y))``."""
    return _pow_one_minus(M, "y", ctx.lam - r) * p.compose_series(_over_one_minus(M, "y"))


def _thm4_minus(pt: dict) -> list[str]:
    """``(1-y)^(lam-1) HF_n(y/(1-y)) = sum_k y^k (k)_{n,lam} (H_k + log_lam(1-y))``."""
    ctx, n, M = _ctx(pt), pt["n"], pt["order"]
    h = harmonic_deg(M, ctx)
    c = PowerSeries(_falling_weights(n, M, ctx, lambda k: h[k]), M, "y")
    d = PowerSeries(_falling_weights(n, M, ctx, lambda k: 1), M, "y")
    right = c + _log_one_minus(M, "y", ctx) * d
    left = _hf_at_y_over_one_minus(hf_poly(n, ctx), M, 1, ctx)
    _cmp_series(ctx, "series in y", left, right)
    return []


def _thm4_operator(pt: dict) -> list[str]:
    """``theta_{n,lam} g + log_lam(1-y) theta_{n,lam} 1/(1-y) = (1-y)^(lam-1) HF_n(y/(1-y))``."""
    ctx, n, M = _ctx(pt), pt["n"], pt["order"]
    y = _var(M, "y")
    g = harmonic_gf_series(M, ctx, "y")
    geo = ps_div(PowerSeries.constant(Fraction(1), M, "y"), 1 - y)
    left = ps_theta_falling(g, n, ctx) + _log_one_minus(M, "y", ctx) * ps_theta_falling(geo, n, ctx)
    right = _hf_at_y_over_one_minus(hf_poly(n, ctx), M, 1, ctx)
    _cmp_series(ctx, "series in y", left, right)
    return []


def _thm5(pt: dict) -> list[str]:
    ctx, r, n, y0 = _ctx(pt), pt["r"], pt["n"], Fraction(pt["sample"])
    s2, hr = stirling2_deg(n, ctx), hyperharmonic_deg(n, r, ctx)
    gf = egf_coeff(_hfr_gf(y0, r, ctx), n)
    first = sum((hr[k] * y0**k * math.factorial(k) * s2[n, k] for k in range(1, n + 1)), ctx.zero())
    _cmp_values(ctx, "generating function vs hyperharmonic sum", gf, first)
    _cmp_values(ctx, "hyperharmonic sum vs hfr_poly", first, eval_poly(hfr_poly(n, r, ctx), y0))
    if not relation_denominator(r, ctx):
        return [f"binom({r - 1} - lambda, {r - 1}) vanishes at lambda = {ctx.label}; ratio form not compared"]
    second = eval_poly(hfr_poly_ratio_form(n, r, ctx), y0)
    _cmp_values(ctx, "hyperharmonic sum vs binomial-ratio sum", first, second)
    return []


def _thm6_plus(pt: dict) -> list[str]:
    """``HF^(r)_n(y) = (1+y)^(lam-r) sum_k (k)_{n,lam}(H^(r)_k + binom(r+k-1,k) log_lam(1/(1+y))) z^k``."""
    ctx, r, n = _ctx(pt), pt["r"], pt["n"]
    M = pt["order"]
    hr = hyperharmonic_deg(M, r, ctx)
    c = _falling_weights(n, M, ctx, lambda k: hr[k])
    d = _falling_weights(n, M, ctx, lambda k: math.comb(r + k - 1, k))
    z = _over_one_plus(M, "y")
    right = _pow_one_plus(M, "y", ctx.lam - r) * (ps_compose(c, z) + _log_inv_one_plus(M, "y", ctx) * ps_compose(d, z))
    left = _as_series(hfr_poly(n, r, ctx), M, "y")
    _cmp_series(ctx, "series in y", left, right)
    return []


def _thm6_minus(pt: dict) -> list[str]:
    """``(1-y)^(lam-r) HF^(r)_n(y/(1-y)) = sum_k (k)_{n,lam}(H^(r)_k + binom(r+k-1,k) log_lam(1-y)) y^k``."""
    ctx, r, n = _ctx(pt), pt["r"], pt["n"]
    M = pt["order"]
    hr = hyperharmonic_deg(M, r, ctx)
    c = PowerSeries(_falling_weights(n, M, ctx, lambda k: hr[k]), M, "y")
    d = PowerSeries(_falling_weights(n, M, ctx, lambda k: math.comb(r + k - 1, k)), M, "y")
    right = c + _log_one_minus(M, "y", ctx) * d
    left = _hf_at_y_over_one_minus(hfr_poly(n, r, ctx), M, r, ctx)
    _cmp_series(ctx, "series in y", left, right)
    return []


def _thm7(pt: dict) -> list[str]:
    ctx, k = _ctx(pt), pt["n"]
    g = harmonic_gf_series(k, ctx)
    gf = g[k]
    _cmp_values(ctx, "binomial closed form vs generating function", harmonic_closed_form(k, ctx), gf)
    _cmp_values(ctx, "rising-factorial closed form vs generating function", harmonic_closed_form_rising(k, ctx), gf)
    deriv = ps_derive(g, k)[0]
    _cmp_values(ctx, "k-th derivative at 0 vs k! H_k", deriv, gf * math.factorial(k))
    explicit = ctx.div_lambda(math.factorial(k) - rising_factorial(1 - ctx.lam, k))
    _cmp_values(ctx, "k-th derivative at 0 vs (k! - <1-lam>_k)/lam", deriv, explicit)
    return []


def _rhs_hf_minus_log_f(k: int, M: int, ctx: LambdaContext) -> PowerSeries:
    """``HF_k(w) - log_lam(1-x) F^(1-lam)_k(w)`` with ``w = x/(1-x)``."""
    w = _over_one_minus(M, "x")
    hf = hf_poly(k, ctx).compose_series(w)
    fo = fubini_deg_order(k, 1 - ctx.lam, ctx).compose_series(w)
    return hf - _log_one_minus(M, "x", ctx) * fo


def _geometric(M: int, var: str, power: int = 1) -> PowerSeries:
    return _pow_one_minus(M, var, -power)


def _thm8(pt: dict) -> list[str]:
    ctx, M = _ctx(pt), pt["order"]
    a = _f_coeffs(pt["f"])
    lam = ctx.lam
    h = harmonic_deg(M, ctx)
    left = PowerSeries(
        [h[n] * sum((a[m] * falling_factorial_deg(n, m, lam) for m in range(len(a))), ctx.zero()) for n in range(M + 1)],
        M,
        "x",
    )
    w = _over_one_minus(M, "x")
    hf_part = PowerSeries([], M, "x")
    f_part = PowerSeries([], M, "x")
    for m, am in enumerate(a):
        if am:
            hf_part = hf_part + hf_poly(m, ctx).compose_series(w) * am
            f_part = f_part + fubini_deg_order(m, 1 - lam, ctx).compose_series(w) * am
    geo = _geometric(M, "x")
    right = geo * hf_part - _log_one_minus(M, "x", ctx) * geo * f_part
    _cmp_series(ctx, "series in x", left, right)
    return []


def _lam_k_order(grid: Grid) -> Iterator[dict]:
    for pt in _lam_n(grid):
        yield {"lambda": pt["lambda"], "k": pt["n"], "order": grid.series_order(pt["n"])}


def _thm9(pt: dict) -> list[str]:
    ctx, k, M = _ctx(pt), pt["k"], pt["order"]
    h = harmonic_deg(M, ctx)
    left = PowerSeries([h[n] * falling_factorial_deg(n, k, ctx.lam) for n in range(M + 1)], M, "x")
    right = _geometric(M, "x") * _rhs_hf_minus_log_f(k, M, ctx)
    _cmp_series(ctx, "series in x", left, right)
    return []


def _thm10(pt: dict) -> list[str]:
    ctx, k, M = _ctx(pt), pt["k"], pt["order"]
    h = harmonic_deg(M, ctx)
    sums, acc = [], ctx.zero()
    for n in range(M + 1):
        if n:
            acc = acc + falling_factorial_deg(n, k, ctx.lam) * h[n]
        sums.append(acc)
    left = PowerSeries(sums, M, "x")
    right = _geometric(M, "x", 2) * _rhs_hf_minus_log_f(k, M, ctx)
    _cmp_series(ctx, "series in x", left, right)
    return []


def _eq38(pt: dict) -> list[str]:
    ctx, k, M = _ctx(pt), pt["k"], pt["order"]
    h = harmonic_deg(M, ctx)
    lam = ctx.lam
    left = PowerSeries(
        [sum((falling_factorial_deg(n, j, lam) for j in range(1, k + 1)), ctx.zero()) * h[n] for n in range(M + 1)],
        M,
        "x",
    )
    block = PowerSeries([], M, "x")
    for l in range(1, k + 1):
        block = block + _rhs_hf_minus_log_f(l, M, ctx)
    right = _geometric(M, "x") * block
    _cmp_series(ctx, "series in x", left, right)
    return []


def _thm11(pt: dict) -> list[str]:
    ctx, k, M = _ctx(pt), pt["k"], pt["order"]
    left = ps_theta_falling(harmonic_gf_series(M, ctx, "x"), k, ctx)
    right = _geometric(M, "x") * _rhs_hf_minus_log_f(k, M, ctx)
    _cmp_series(ctx, "series in x", left, right)
    return []


def _thm12(pt: dict) -> list[str]:
    ctx, r, k = _ctx(pt), pt["r"], pt["n"]
    g = hyperharmonic_gf_series(k, r, ctx)
    gf = g[k]
    rec = hyperharmonic_recurrence(k, r, ctx)[k]
    _cmp_values(ctx, "binomial closed form vs recurrence", hyperharmonic_closed_form(k, r, ctx), rec)
    _cmp_values(ctx, "rising-factorial closed form vs recurrence", hyperharmonic_closed_form_rising(k, r, ctx), rec)
    _cmp_values(ctx, "recurrence vs generating function", rec, gf)
    deriv = ps_derive(g, k)[0]
    _cmp_values(ctx, "k-th derivative at 0 vs k! H^(r)_k", deriv, rec * math.factorial(k))
    explicit = ctx.div_lambda(rising_factorial(r, k) - rising_factorial(r - ctx.lam, k))
    _cmp_values(ctx, "k-th derivative at 0 vs (<r>_k - <r-lam>_k)/lam", deriv, explicit)
    return []


def _random_unit_series(rng: random.Random, order: int) -> PowerSeries:
    cs = [Fraction(1)] + [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(order)]
    return PowerSeries(cs, order, "t")


def _eq3_points(grid: Grid) -> Iterator[dict]:
    for lam in grid.lambdas:
        for i in range(grid.n_pairs):
            yield {"lambda": lam, "pair": i, "order": grid.unit_order, "seed": grid.seed}


def _eq3(pt: dict) -> list[str]:
    ctx, M = _ctx(pt), pt["order"]
    rng = random.Random(f"{pt['seed']}:{pt['pair']}")
    a = _random_unit_series(rng, M)
    b = _random_unit_series(rng, M)
    log_a, log_b = ps_deg_log(a - 1, ctx), ps_deg_log(b - 1, ctx)
    a_pow, b_pow = ps_binom_pow(a - 1, ctx.lam), ps_binom_pow(b - 1, ctx.lam)
    log_ab = ps_deg_log(a * b - 1, ctx)
    _cmp_series(ctx, "log(AB) vs A^lam log B + log A", log_ab, a_pow * log_b + log_a)
    _cmp_series(ctx, "log(AB) vs B^lam log A + log B", log_ab, b_pow * log_a + log_b)
    log_quot = ps_deg_log(ps_div(b, a) - 1, ctx)
    _cmp_series(ctx, "log(B/A) vs (log B - log A)/A^lam", log_quot, ps_div(log_b - log_a, a_pow))
    return []


def _eq17_points(grid: Grid) -> Iterator[dict]:
    for lam in grid.lambdas:
        for r in range(1, grid.r_max + 1):
            for n in range(1, grid.n_max + 1):
                yield {"lambda": lam, "r": r, "n": n}


def _eq17(pt: dict) -> list[str]:
    ctx, r, n = _ctx(pt), pt["r"], pt["n"]
    den = binomial_general(r - ctx.lam, r)
    if not den:
        return [f"binom({r} - lambda, {r}) vanishes at lambda = {ctx.label}; nothing compared"]
    h = harmonic_deg(n + r, ctx)
    right = (h[n + r] - h[r]) * math.comb(n + r, r) / den
    left = hyperharmonic_recurrence(n, r + 1, ctx)[n]
    _cmp_values(ctx, "partial-sum recurrence vs binomial relation", left, right)
    return []


def _random_poly(rng: random.Random, degree: int) -> list[Fraction]:
    cs = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(degree)]
    return cs + [Fraction(rng.choice([-2, -1, 1, 2, 3]))]


def _lemma_points(grid: Grid) -> Iterator[dict]:
    for lam in grid.lambdas:
        for r in range(0, min(2, grid.r_max) + 1):
            for d in range(1, min(grid.n_max, 6) + 1):
                yield {"lambda": lam, "r": r, "degree": d, "seed": grid.seed}


def _lemma_fg(pt: dict) -> tuple[list, Poly]:
    rng = random.Random(f"{pt['seed']}:{pt['r']}:{pt['degree']}")
    f = _random_poly(rng, pt["degree"])
    g = Poly(_random_poly(rng, pt["degree"] + 2))
    return f, g


def _deg_falling_poly_value(a: list, y, ctx: LambdaContext):
    """``f_lam(y) = sum_m a_m (y)_{m,lam}``."""
    return sum((am * falling_factorial_deg(y, m, ctx.lam) for m, am in enumerate(a)), ctx.zero())


def _lemma1a(pt: dict) -> list[str]:
    ctx, r = _ctx(pt), pt["r"]
    a, g = _lemma_fg(pt)
    tri = stirling2_r_deg(len(a) - 1, r, ctx)
    left = Poly([])
    for n, an in enumerate(a):
        for k in range(n + 1):
            left = left + g.derivative(k) * Poly.monomial(an * tri[n, k], k)
    right = Poly([b * _deg_falling_poly_value(a, n + r, ctx) for n, b in enumerate(g.coeffs)])
    _cmp_seq(ctx, "polynomial in x", left.coeffs, right.coeffs)
    return []


def _eq19(pt: dict) -> list[str]:
    ctx, r = _ctx(pt), pt["r"]
    a, g = _lemma_fg(pt)
    entry = _shifted_rstirling(len(a) - 1, r, ctx)
    left = Poly([])
    for m in range(r, len(a)):
        for k in range(r, m + 1):
            left = left + g.derivative(k) * Poly.monomial(a[m] * entry(m, k), k)
    right = []
    for n, b in enumerate(g.coeffs):
        if n < r:
            right.append(ctx.zero())
            continue
        inner = sum((a[m] * falling_factorial_deg(n, m - r, ctx.lam) for m in range(r, len(a))), ctx.zero())
        right.append(b * math.comb(n, r) * math.factorial(r) * inner)
    _cmp_seq(ctx, "polynomial in x", left.coeffs, Poly(right).coeffs)
    return []


def _r_f_points(r_min: int):
    def points(grid: Grid) -> Iterator[dict]:
        for lam in grid.lambdas:
            for r in range(r_min, grid.r_max + 1):
                for label, cs in F_POLYS:
                    if len(cs) - 1 <= grid.n_max:
                        yield {"lambda": lam, "r": r, "f": label, "order": grid.order}

    return points


def _lhs_rpole(a: tuple, r: int, M: int, ctx: LambdaContext, weights) -> PowerSeries:
    """``sum_{n>=r} w_n binom(n,r) r! (sum_{m>=r} a_m (n)_{m-r,lam}) x^n``."""
    out = []
    for n in range(M + 1):
        if n < r:
            out.append(ctx.zero())
            continue
        inner = sum((a[m] * falling_factorial_deg(n, m - r, ctx.lam) for m in range(r, len(a))), ctx.zero())
        out.append(weights[n] * math.comb(n, r) * math.factorial(r) * inner)
    return PowerSeries(out, M, "x")


def _eq33(pt: dict) -> list[str]:
    ctx, r, M = _ctx(pt), pt["r"], pt["order"]
    a = _f_coeffs(pt["f"])
    lam = ctx.lam
    left = _lhs_rpole(a, r, M, ctx, harmonic_deg(M, ctx).values)
    entry = _shifted_rstirling(len(a) - 1, r, ctx)
    w = _over_one_minus(M, "x")
    first = [ctx.zero()] * (len(a))
    second = [ctx.zero()] * (len(a))
    for m in range(r, len(a)):
        for k in range(r, m + 1):
            e = a[m] * entry(m, k)
            first[k] = first[k] + e * ctx.div_lambda(math.factorial(k) - rising_factorial(1 - lam, k))
            second[k] = second[k] + e * rising_factorial(1 - lam, k)
    geo = _geometric(M, "x")
    right = geo * ps_compose(first, w) - geo * _log_one_minus(M, "x", ctx) * ps_compose(second, w)
    _cmp_series(ctx, "series in x", left, right)
    return []


def _rpole_rhs(a: tuple, r: int, M: int, ctx: LambdaContext, printed: bool = False) -> tuple[PowerSeries, PowerSeries]:
    """Right-hand sides of the r-pole identity: the derivative-expanded form and
    the collected form in ``w = x/(1-x)``.  ``printed`` swaps in ``<r-k>_k``."""
    lam = ctx.lam
    hr = hyperharmonic_deg(max(len(a) - 1, 1), r, ctx)
    entry = _shifted_rstirling(len(a) - 1, r, ctx)
    x = _var(M, "x")
    log1m = _log_one_minus(M, "x", ctx)
    expanded = PowerSeries([], M, "x")
    rising_part = [ctx.zero()] * len(a)
    harmonic_part = [ctx.zero()] * len(a)
    for m in range(r, len(a)):
        for k in range(r, m + 1):
            e = a[m] * entry(m, k)
            if not e:
                continue
            lead = rising_factorial(r - k, k) if printed else rising_factorial(r - lam, k)
            tail = ctx.div_lambda(rising_factorial(r, k) - rising_factorial(r - lam, k))
            pole = _pow_one_minus(M, "x", -(r + k))
            expanded = expanded + (x**k) * pole * (log1m * (-lead) + tail) * e
            rising_part[k] = rising_part[k] + e * rising_factorial(r - lam, k)
            harmonic_part[k] = harmonic_part[k] + e * math.factorial(k) * hr[k]
    w = _over_one_minus(M, "x")
    pre = _geometric(M, "x", r)
    collected = pre * ps_compose(harmonic_part, w) - pre * log1m * ps_compose(rising_part, w)
    return expanded, collected


def _eq45(pt: dict) -> list[str]:
    ctx, r, M = _ctx(pt), pt["r"], pt["order"]
    a = _f_coeffs(pt["f"])
    left = _lhs_rpole(a, r, M, ctx, hyperharmonic_deg(M, r, ctx).values)
    expanded, collected = _rpole_rhs(a, r, M, ctx)
    _cmp_series(ctx, "derivative-expanded form", left, expanded)
    _cmp_series(ctx, "collected form", left, collected)
    return []


def _eq45_printed(pt: dict) -> list[str]:
    ctx, r, M = _ctx(pt), pt["r"], pt["order"]
    a = _f_coeffs(pt["f"])
    left = _lhs_rpole(a, r, M, ctx, hyperharmonic_deg(M, r, ctx).values)
    expanded, _ = _rpole_rhs(a, r, M, ctx, printed=True)
    _cmp_series(ctx, "derivative-expanded form with <r-k>_k", left, expanded)
    return []


def _eq46_points(grid: Grid) -> Iterator[dict]:
    for lam in grid.lambdas:
        for r in range(1, grid.r_max + 1):
            for k in range(r, grid.n_max + 1):
                yield {"lambda": lam, "r": r, "k": k, "order": grid.series_order(k)}


def _eq46(pt: dict) -> list[str]:
    ctx, r, k, M = _ctx(pt), pt["r"], pt["k"], pt["order"]
    lam = ctx.lam
    hr = hyperharmonic_deg(max(M, k), r, ctx)
    left = PowerSeries(
        [
            hr[n] * math.comb(n, r) * math.factorial(r) * falling_factorial_deg(n, k - r, lam) if n >= r else ctx.zero()
            for n in range(M + 1)
        ],
        M,
        "x",
    )
    entry = _shifted_rstirling(k, r, ctx)
    rising_part = [ctx.zero()] * (k + 1)
    harmonic_part = [ctx.zero()] * (k + 1)
    for l in range(r, k + 1):
        rising_part[l] = entry(k, l) * rising_factorial(r - lam, l)
        harmonic_part[l] = entry(k, l) * math.factorial(l) * hr[l]
    w = _over_one_minus(M, "x")
    pre = _geometric(M, "x", r)
    log1m = _log_one_minus(M, "x", ctx)
    right = pre * ps_compose(harmonic_part, w) - pre * log1m * ps_compose(rising_part, w)
    _cmp_series(ctx, "series in x", left, right)
    # closed form of the l-th derivative of -log_lam(1-x)/(1-x)^r against formal differentiation
    g = hyperharmonic_gf_series(M + k, r, ctx, "x")
    for l in range(1, k + 1):
        formal = ps_derive(g, l).truncate(M)
        pole = _pow_one_minus(M, "x", -(r + l))
        closed = pole * (log1m * (-rising_factorial(r - lam, l)) + ctx.div_lambda(rising_factorial(r, l) - rising_factorial(r - lam, l)))
        _cmp_series(ctx, f"derivative {l} of the generating function", formal, closed)
    return []


# -- registry ---------------------------------------------------------------

_MISPRINT_NOTES = (
    "The order-alpha Fubini expansion is printed with the summation index also "
    "on the left side; implemented as F^(alpha)_n(x) = sum_{k=0}^{n} <alpha>_k S2(n,k) x^k.",
    "The shifted-order Fubini derivation prints the Stirling bracket as {n brace lam}; read as {n brace k}.",
    "The shifted-order Fubini theorem omits the lambda subscript on F^(1-lam)_n.",
)

_REGISTRY: tuple[IdentitySpec, ...] = (
    IdentitySpec(
        "THM1",
        "n! [t^n] -log_lam(1 - x(e_lam(t)-1)) / (1 - x(e_lam(t)-1)) = sum_{k=1}^n S2(n,k) H_k k! x^k",
        PASS,
        _lam_n_sample,
        _thm1,
    ),
    IdentitySpec(
        "THM2_PRINTED",
        "H_n x^n = sum_{k=1}^n S1(n,k) HF_k(x)  (as printed, without n!)",
        KNOWN_MISPRINT,
        _lam_n,
        _thm2(False),
        ("Coefficient comparison of the t-series forces a factor n! on the left; fails from n = 2 on.",),
    ),
    IdentitySpec(
        "THM2_CORRECTED",
        "n! H_n x^n = sum_{k=1}^n S1(n,k) HF_k(x)",
        PASS,
        _lam_n,
        _thm2(True),
    ),
    IdentitySpec(
        "THM3",
        "n! [t^n] (1/(1 - x(e_lam(t)-1)))^(1-lam) = sum_k <1-lam>_k S2(n,k) x^k = sum_k binom(k-lam,k) k! S2(n,k) x^k",
        PASS,
        _lam_n_sample,
        _thm3,
        _MISPRINT_NOTES,
    ),
    IdentitySpec(
        "THM4",
        "HF_n(y) = (1+y)^(lam-1) sum_{k>=0} (y/(1+y))^k (k)_{n,lam} (H_k + log_lam(1/(1+y)))",
        PASS,
        _lam_n_order(4),
        _thm4_plus,
    ),
    IdentitySpec(
        "THM4_ALT",
        "(1-y)^(lam-1) HF_n(y/(1-y)) = sum_{k>=0} y^k (k)_{n,lam} (H_k + log_lam(1-y))",
        PASS,
        _lam_n_order(4),
        _thm4_minus,
        ("The display divides by (1-y)^lam; checked after multiplying through by that unit series.",),
    ),
    IdentitySpec(
        "THM4_NOTE",
        "(y d/dy)_{n,lam} g(y) + log_lam(1-y) (y d/dy)_{n,lam} 1/(1-y) = (1-y)^(lam-1) HF_n(y/(1-y)),"
        " g = -log_lam(1-y)/(1-y)",
        PASS,
        _lam_n_order(4),
        _thm4_operator,
    ),
    IdentitySpec(
        "THM5",
        "n! [t^n] -log_lam(1 - y(e_lam(t)-1)) / (1 - y(e_lam(t)-1))^r = sum_k H^(r)_k y^k k! S2(n,k)"
        " = sum_k binom(k+r-1,r-1)/binom(r-1-lam,r-1) (H_{k+r-1} - H_{r-1}) k! S2(n,k) y^k",
        PASS,
        lambda grid: ({**pt, "sample": s} for pt in _lam_r_n(grid) for s in grid.samples),
        _thm5,
        ("The binomial-ratio form is skipped where binom(r-1-lam, r-1) vanishes (integer lambda < r).",),
    ),
    IdentitySpec(
        "THM6",
        "HF^(r)_n(y) = (1+y)^(lam-r) sum_{k>=0} (k)_{n,lam} (H^(r)_k + binom(r+k-1,k) log_lam(1/(1+y))) (y/(1+y))^k",
        PASS,
        lambda grid: ({**pt, "order": grid.series_order(pt["n"], pt["n"] + 4)} for pt in _lam_r_n(grid)),
        _thm6_plus,
    ),
    IdentitySpec(
        "THM6_ALT",
        "(1-y)^(lam-r) HF^(r)_n(y/(1-y)) = sum_{k>=0} (k)_{n,lam} (H^(r)_k + binom(r+k-1,k) log_lam(1-y)) y^k",
        PASS,
        lambda grid: ({**pt, "order": grid.series_order(pt["n"], pt["n"] + 4)} for pt in _lam_r_n(grid)),
        _thm6_minus,
    ),
    IdentitySpec(
        "THM7",
        "H_k = (1 - binom(k-lam,k))/lam = (k! - <1-lam>_k)/(lam k!) = g^(k)(0)/k!, g = -log_lam(1-t)/(1-t)",
        PASS,
        _lam_n,
        _thm7,
    ),
    IdentitySpec(
        "THM8",
        "sum_n H_n f_lam(n) x^n = 1/(1-x) sum_m a_m HF_m(x/(1-x)) - log_lam(1-x)/(1-x) sum_m a_m F^(1-lam)_m(x/(1-x))",
        PASS,
        _lam_f,
        _thm8,
    ),
    IdentitySpec(
        "THM9",
        "sum_n H_n (n)_{k,lam} x^n = 1/(1-x) (HF_k(x/(1-x)) - log_lam(1-x) F^(1-lam)_k(x/(1-x)))",
        PASS,
        _lam_k_order,
        _thm9,
    ),
    IdentitySpec(
        "THM10",
        "sum_n (sum_{l<=n} (l)_{k,lam} H_l) x^n = 1/(1-x)^2 (HF_k(x/(1-x)) - log_lam(1-x) F^(1-lam)_k(x/(1-x)))",
        PASS,
        _lam_k_order,
        _thm10,
    ),
    IdentitySpec(
        "EQ38",
        "sum_n (sum_{j=1}^k (n)_{j,lam}) H_n x^n = 1/(1-x) sum_{l=1}^k (HF_l(x/(1-x)) - log_lam(1-x) F^(1-lam)_l(x/(1-x)))",
        PASS,
        _lam_k_order,
        _eq38,
    ),
    IdentitySpec(
        "THM11",
        "(x d/dx)_{k,lam} (-log_lam(1-x)/(1-x)) = 1/(1-x) (HF_k(x/(1-x)) - log_lam(1-x) F^(1-lam)_k(x/(1-x)))",
        PASS,
        _lam_k_order,
        _thm11,
    ),
    IdentitySpec(
        "THM12",
        "H^(r)_k = (binom(r+k-1,k) - binom(r+k-lam-1,k))/lam = (<r>_k - <r-lam>_k)/(lam k!) = g^(k)(0)/k!,"
        " g = -log_lam(1-t)/(1-t)^r",
        PASS,
        _lam_r_n,
        _thm12,
    ),
    IdentitySpec(
        "EQ3",
        "log_lam(AB) = A^lam log_lam B + log_lam A = B^lam log_lam A + log_lam B;"
        " log_lam(B/A) = (log_lam B - log_lam A)/A^lam",
        PASS,
        _eq3_points,
        _eq3,
    ),
    IdentitySpec(
        "EQ17",
        "H^(r+1)_n = binom(n+r,r)/binom(r-lam,r) (H_{n+r} - H_r)",
        PASS,
        _eq17_points,
        _eq17,
        ("Points where binom(r-lam, r) vanishes compare nothing and are reported with a note.",),
    ),
    IdentitySpec(
        "LEMMA1A",
        "sum_n a_n sum_{k=0}^n {n+r brace k+r}_{r,lam} x^k g^(k)(x) = sum_n b_n f_lam(n+r) x^n",
        PASS,
        _lemma_points,
        _lemma1a,
    ),
    IdentitySpec(
        "EQ19",
        "sum_{m>=r} a_m sum_{k=r}^m {m brace k}_{r,lam} x^k g^(k)(x)"
        " = sum_{n>=r} b_n binom(n,r) r! (sum_{m>=r} a_m (n)_{m-r,lam}) x^n",
        PASS,
        _lemma_points,
        _eq19,
        ("{m brace k}_{r,lam} is read as the r-Stirling entry {(m-r)+r brace (k-r)+r}_{r,lam}.",),
    ),
    IdentitySpec(
        "EQ33",
        "sum_{n>=r} binom(n,r) H_n r! (sum_m a_m (n)_{m-r,lam}) x^n = 1/(1-x) sum_m a_m sum_{k=r}^m {m brace k}_{r,lam}"
        " ((k! - <1-lam>_k)/lam) w^k - log_lam(1-x)/(1-x) sum_m a_m sum_k {m brace k}_{r,lam} <1-lam>_k w^k, w = x/(1-x)",
        PASS,
        _r_f_points(0),
        _eq33,
    ),
    IdentitySpec(
        "EQ45",
        "sum_{n>=r} H^(r)_n binom(n,r) r! (sum_m a_m (n)_{m-r,lam}) x^n = -log_lam(1-x)/(1-x)^r sum_m a_m sum_k"
        " {m brace k}_{r,lam} <r-lam>_k w^k + 1/(1-x)^r sum_m a_m sum_k {m brace k}_{r,lam} w^k k! H^(r)_k",
        PASS,
        _r_f_points(1),
        _eq45,
    ),
    IdentitySpec(
        "EQ45_PRINTED",
        "the derivative-expanded r-pole form with <r-k>_k in place of <r-lam>_k",
        KNOWN_MISPRINT,
        _r_f_points(1),
        _eq45_printed,
        ("The derivative of -log_lam(1-t)/(1-t)^r carries <r-lam>_k; <r-k>_k vanishes at k = r.",),
    ),
    IdentitySpec(
        "EQ46",
        "sum_{n>=r} H^(r)_n binom(n,r) r! (n)_{k-r,lam} x^n = -log_lam(1-x)/(1-x)^r sum_{l=r}^k {k brace l}_{r,lam}"
        " <r-lam>_l w^l + 1/(1-x)^r sum_{l=r}^k {k brace l}_{r,lam} w^l l! H^(r)_l",
        PASS,
        _eq46_points,
        _eq46,
    ),
)

_BY_ID = {spec.id: spec for spec in _REGISTRY}
assert len(_BY_ID) == len(_REGISTRY)


def list_identities() -> list[IdentitySpec]:
    return list(_REGISTRY)


def get_identity(identity_id: str) -> IdentitySpec:
    try:
        return _BY_ID[identity_id]
    except KeyError:
        raise UnknownIdentity(identity_id) from None


def _run_point(spec: IdentitySpec, pt: dict) -> IdentityReport:
    try:
        notes = spec.evaluate(pt)
    except _Mismatch as m:
        return IdentityReport(spec.id, pt, FAIL, m.detail)
    return IdentityReport(spec.id, pt, PASS, {"notes": notes} if notes else {})


def check_identity(identity_id: str, overrides: dict | None = None, *, point: dict | None = None) -> list[IdentityReport]:
    """Check one identity on its grid (or on a single recorded ``point``)."""
    spec = get_identity(identity_id)
    if point is not None:
        return [_run_point(spec, dict(point))]
    grid = spec.default_grid.with_overrides(overrides)
    return [_run_point(spec, pt) for pt in spec.points(grid)]


def replay(report: IdentityReport) -> IdentityReport:
    return check_identity(report.id, point=report.grid_point)[0]


# -- suite ------------------------------------------------------------------


def _config_from(config) -> tuple[Grid, tuple[str, ...]]:
    if config is None:
        config = {}
    if isinstance(config, Grid):
        return config.validate(), tuple(_BY_ID)
    if not isinstance(config, dict):
        raise ConfigInvalid(f"config must be a mapping, got {type(config).__name__}")
    cfg = dict(config)
    ids = cfg.pop("ids", None)
    if ids is None:
        ids = tuple(_BY_ID)
    else:
        ids = tuple(ids)
        unknown = [i for i in ids if i not in _BY_ID]
        if unknown:
            raise ConfigInvalid(f"unknown identities {unknown}")
    if cfg.pop("symbolic", True) is False:
        lams = tuple(l for l in cfg.get("lambdas", DEFAULT_LAMBDAS) if l != "symbolic")
        cfg["lambdas"] = lams
    try:
        grid = Grid().with_overrides(cfg)
    except UnsupportedGrid as exc:
        raise ConfigInvalid(str(exc)) from None
    return grid, ids


def run_suite(config=None) -> dict:
    """Run the registry and summarize against expectations.

    Expected-PASS entries must pass at every point; KNOWN_MISPRINT entries
    must fail at least once (unless their grid is empty).
    """
    grid, ids = _config_from(config)
    results = []
    entries = {}
    counts = {"pass": 0, "fail": 0, "known_misprint": 0}
    unexpected = []
    total_points = 0
    for identity_id in ids:
        spec = _BY_ID[identity_id]
        reports = [_run_point(spec, pt) for pt in spec.points(grid)]
        total_points += len(reports)
        n_fail = sum(1 for r in reports if r.status == FAIL)
        n_pass = len(reports) - n_fail
        counts["pass"] += n_pass
        if spec.expected == KNOWN_MISPRINT:
            counts["known_misprint"] += n_fail
            met = n_fail > 0 or not reports
            if not met:
                unexpected.append({"id": spec.id, "reason": "documented misprint did not reproduce"})
        else:
            counts["fail"] += n_fail
            met = n_fail == 0
            first = next((r for r in reports if r.status == FAIL), None)
            if first is not None:
                unexpected.append({"id": spec.id, "reason": "identity failed", "grid_point": first.grid_point})
        entries[spec.id] = {"expected": spec.expected, "points": len(reports), "pass": n_pass, "fail": n_fail, "met": met}
        results.extend(r.to_json() for r in reports)
    summary = {
        **counts,
        "unexpected": len(unexpected),
        "expectations_met": not unexpected,
        "no_grid_points": total_points == 0,
        "entries": entries,
        "unexpected_failures": unexpected,
    }
    cfg = asdict(grid)
    cfg["ids"] = list(ids)
    return {"suite_version": SUITE_VERSION, "config": cfg, "results": results, "summary": summary}
