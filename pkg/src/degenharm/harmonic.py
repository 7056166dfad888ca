"""Degenerate harmonic and hyperharmonic numbers.

``H_{n,lam}`` are the coefficients of ``-log_lambda(1-t)/(1-t)`` and
``H^{(r)}_{n,lam}`` those of ``-log_lambda(1-t)/(1-t)^r``; the hyperharmonic
numbers are also iterated partial sums of the harmonic ones.  Tables are
returned only after every available route has produced identical values.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

from .errors import NonInvertibleRelation, RouteMismatch
from .kernel import LambdaContext, binomial_general, rising_factorial
from .series import PowerSeries, ps_binom_pow, ps_deg_log, ps_div

__all__ = [
    "H_DEG",
    "H_HYPER_DEG",
    "H_CLASSICAL",
    "CLOSED_FORM",
    "GENFUNC",
    "RECURRENCE",
    "RELATION",
    "NumberTable",
    "harmonic_deg",
    "harmonic_closed_form",
    "harmonic_closed_form_rising",
    "harmonic_genfunc",
    "harmonic_gf_series",
    "hyperharmonic_deg",
    "hyperharmonic_closed_form",
    "hyperharmonic_closed_form_rising",
    "hyperharmonic_recurrence",
    "hyperharmonic_relation",
    "relation_denominator",
    "hyperharmonic_genfunc",
    "hyperharmonic_gf_series",
    "classical_harmonic",
]

H_DEG = "H_DEG"
H_HYPER_DEG = "H_HYPER_DEG"
H_CLASSICAL = "H_CLASSICAL"

CLOSED_FORM = "CLOSED_FORM"
GENFUNC = "GENFUNC"
RECURRENCE = "RECURRENCE"
RELATION = "RELATION"


@dataclass(frozen=True)
class NumberTable:
    family: str
    values: tuple
    ctx: LambdaContext | None
    routes: tuple[str, ...]
    r: int = 1

    def __getitem__(self, n: int):
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def nmax(self) -> int:
        return len(self.values) - 1


def _agree(what: str, ctx: LambdaContext, a, b) -> None:
    for n, (x, y) in enumerate(zip(a, b)):
        if ctx.coerce(x) != ctx.coerce(y):
            raise RouteMismatch(what, n, x, y)


# -- harmonic ---------------------------------------------------------------


def harmonic_closed_form(k: int, ctx: LambdaContext):
    """``(1 - binom(k - lam, k)) / lam``."""
    return ctx.div_lambda(1 - binomial_general(k - ctx.lam, k))


def harmonic_closed_form_rising(k: int, ctx: LambdaContext):
    """``(k! - <1 - lam>_k) / (lam k!)``."""
    return ctx.div_lambda(math.factorial(k) - rising_factorial(1 - ctx.lam, k)) / math.factorial(k)


def harmonic_gf_series(order: int, ctx: LambdaContext, var: str = "t") -> PowerSeries:
    """``-log_lambda(1 - var) / (1 - var)``."""
    v = PowerSeries.variable(order, var)
    return ps_div(-ps_deg_log(-v, ctx), 1 - v)


def harmonic_genfunc(nmax: int, ctx: LambdaContext) -> list:
    return list(harmonic_gf_series(nmax, ctx).coeffs)


@lru_cache(maxsize=None)
def harmonic_deg(nmax: int, ctx: LambdaContext) -> NumberTable:
    """``H_{0..nmax, lam}``; closed forms and the generating function must agree."""
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    gf = harmonic_genfunc(nmax, ctx)
    closed = [ctx.zero()] + [harmonic_closed_form(k, ctx) for k in range(1, nmax + 1)]
    rising = [ctx.zero()] + [harmonic_closed_form_rising(k, ctx) for k in range(1, nmax + 1)]
    _agree(f"harmonic(lambda={ctx.label}) closed/gf", ctx, closed, gf)
    _agree(f"harmonic(lambda={ctx.label}) closed/rising", ctx, closed, rising)
    return NumberTable(H_DEG, tuple(ctx.coerce(v) for v in closed), ctx, (CLOSED_FORM, GENFUNC))


def classical_harmonic(nmax: int) -> NumberTable:
    """``H_n = 1 + 1/2 + ... + 1/n`` by direct summation."""
    vals = [Fraction(0)]
    for k in range(1, nmax + 1):
        vals.append(vals[-1] + Fraction(1, k))
    return NumberTable(H_CLASSICAL, tuple(vals), None, (CLOSED_FORM,))


# -- hyperharmonic ----------------------------------------------------------


def hyperharmonic_closed_form(k: int, r: int, ctx: LambdaContext):
    """``(binom(r+k-1, k) - binom(r+k-lam-1, k)) / lam``."""
    return ctx.div_lambda(math.comb(r + k - 1, k) - binomial_general(r + k - 1 - ctx.lam, k))


def hyperharmonic_closed_form_rising(k: int, r: int, ctx: LambdaContext):
    """``(<r>_k - <r - lam>_k) / (lam k!)``."""
    return ctx.div_lambda(rising_factorial(r, k) - rising_factorial(r - ctx.lam, k)) / math.factorial(k)


def hyperharmonic_recurrence(nmax: int, r: int, ctx: LambdaContext) -> list:
    """Iterated partial sums starting from the generating-function harmonic numbers."""
    if r < 1:
        raise ValueError("r must be >= 1")
    vals = harmonic_genfunc(nmax, ctx)
    for _ in range(r - 1):
        acc = ctx.zero()
        nxt = [ctx.zero()]
        for n in range(1, nmax + 1):
            acc = acc + vals[n]
            nxt.append(acc)
        vals = nxt
    return vals


def relation_denominator(r: int, ctx: LambdaContext):
    """``binom(r - 1 - lam, r - 1)``, the divisor in the shift relation for order ``r``."""
    return binomial_general(r - 1 - ctx.lam, r - 1)


def hyperharmonic_relation(n: int, r: int, ctx: LambdaContext, harmonic: NumberTable | None = None):
    """``H^{(r)}_n = binom(n+r-1, r-1) / binom(r-1-lam, r-1) * (H_{n+r-1} - H_{r-1})``.

    Raises NonInvertibleRelation when the binomial divisor vanishes at this lambda.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    den = relation_denominator(r, ctx)
    if not den:
        raise NonInvertibleRelation(f"binom({r - 1} - lambda, {r - 1}) vanishes at lambda = {ctx.label}")
    h = harmonic if harmonic is not None and harmonic.nmax >= n + r - 1 else harmonic_deg(n + r - 1, ctx)
    return (h[n + r - 1] - h[r - 1]) * math.comb(n + r - 1, r - 1) / den


def hyperharmonic_gf_series(order: int, r: int, ctx: LambdaContext, var: str = "t") -> PowerSeries:
    """``-log_lambda(1 - var) / (1 - var)^r``."""
    v = PowerSeries.variable(order, var)
    return -ps_deg_log(-v, ctx) * ps_binom_pow(-v, -r)


def hyperharmonic_genfunc(nmax: int, r: int, ctx: LambdaContext) -> list:
    return list(hyperharmonic_gf_series(nmax, r, ctx).coeffs)


@lru_cache(maxsize=None)
def hyperharmonic_deg(nmax: int, r: int, ctx: LambdaContext) -> NumberTable:
    """``H^{(r)}_{0..nmax, lam}`` checked across recurrence, closed forms,
    the generating function and, when its divisor is nonzero, the shift relation."""
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    if r < 1:
        raise ValueError("r must be >= 1")
    tag = f"hyperharmonic(lambda={ctx.label}, r={r})"
    rec = hyperharmonic_recurrence(nmax, r, ctx)
    closed = [ctx.zero()] + [hyperharmonic_closed_form(k, r, ctx) for k in range(1, nmax + 1)]
    rising = [ctx.zero()] + [hyperharmonic_closed_form_rising(k, r, ctx) for k in range(1, nmax + 1)]
    gf = hyperharmonic_genfunc(nmax, r, ctx)
    _agree(tag + " recurrence/closed", ctx, rec, closed)
    _agree(tag + " closed/rising", ctx, closed, rising)
    _agree(tag + " recurrence/gf", ctx, rec, gf)
    routes = [RECURRENCE, CLOSED_FORM, GENFUNC]
    if relation_denominator(r, ctx):
        h = harmonic_deg(nmax + r - 1, ctx)
        rel = [hyperharmonic_relation(n, r, ctx, h) for n in range(nmax + 1)]
        _agree(tag + " recurrence/relation", ctx, rec, rel)
        routes.append(RELATION)
    else:
        warnings.warn(
            f"{tag}: binomial divisor vanishes, shift relation skipped",
            RuntimeWarning,
            stacklevel=2,
        )
    return NumberTable(H_HYPER_DEG, tuple(ctx.coerce(v) for v in rec), ctx, tuple(routes), r)
