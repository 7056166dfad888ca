"""Degenerate Stirling numbers of both kinds and degenerate r-Stirling numbers.

Each triangle is computed three ways and the results must agree exactly:

* basis conversion -- expand one factorial basis in the other by forward
  substitution on a unit triangular system,
* generating function -- exponential coefficients of ``(e_lambda(t)-1)^k/k!``
  (second kind) or ``log_lambda(1+t)^k/k!`` (first kind),
* the three-term row recurrence.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import RouteMismatch
from .kernel import LambdaContext
from .poly import Poly
from .series import PowerSeries, egf_coeff, ps_deg_exp, ps_deg_log, ps_mul

__all__ = [
    "S1_DEG",
    "S1_DEG_UNSIGNED",
    "S2_DEG",
    "S2_R_DEG",
    "StirlingTriangle",
    "stirling1_deg",
    "stirling1_deg_unsigned",
    "stirling2_deg",
    "stirling2_r_deg",
    "classical_stirling1",
    "classical_stirling2",
    "triangular_solve",
]

S1_DEG = "S1_DEG"
S1_DEG_UNSIGNED = "S1_DEG_UNSIGNED"
S2_DEG = "S2_DEG"
S2_R_DEG = "S2_R_DEG"

_ZERO = Fraction(0)


@dataclass(frozen=True)
class StirlingTriangle:
    """Rows ``0..nmax``; row ``n`` holds entries ``k = 0..n``.

    For ``S2_R_DEG`` entry ``(n, k)`` is the r-Stirling number indexed
    ``(n + r, k + r)``.
    """

    kind: str
    nmax: int
    rows: tuple[tuple, ...]
    ctx: LambdaContext
    r: int = 0

    def __getitem__(self, nk: tuple[int, int]):
        n, k = nk
        if n < 0 or n > self.nmax:
            raise IndexError(f"row {n} outside 0..{self.nmax}")
        if k < 0 or k > n:
            return self.ctx.zero()
        return self.rows[n][k]

    def row(self, n: int) -> tuple:
        return self.rows[n]

    def matrix(self) -> list[list]:
        """Square ``(nmax+1) x (nmax+1)`` lower-triangular matrix."""
        return [[self[n, k] for k in range(self.nmax + 1)] for n in range(self.nmax + 1)]

    def truncate(self, nmax: int) -> StirlingTriangle:
        return StirlingTriangle(self.kind, nmax, self.rows[: nmax + 1], self.ctx, self.r)

    def entries(self):
        for n, row in enumerate(self.rows):
            for k, v in enumerate(row):
                yield n, k, v


def triangular_solve(target: Poly, basis: list[Poly]) -> list:
    """Coefficients ``c`` with ``sum_k c[k] * basis[k] == target``.

    ``basis[k]`` must be monic of degree ``k``; the system is unit triangular,
    so forward substitution from the top degree is exact.
    """
    n = target.degree
    rem = [target.coeff(i) for i in range(n + 1)]
    out = [_ZERO] * (n + 1)
    for k in range(n, -1, -1):
        c = rem[k]
        out[k] = c
        if c:
            b = basis[k]
            for i in range(k + 1):
                bi = b.coeff(i)
                if bi:
                    rem[i] = rem[i] - c * bi
    return out


def _shifted_factorials(n: int, step, shift=0) -> list[Poly]:
    """``[(x+shift)(x+shift-step)...]`` of lengths ``0..n`` as polynomials in x."""
    out = [Poly([Fraction(1)])]
    for j in range(n):
        out.append(out[-1] * Poly([shift - j * step, Fraction(1)]))
    return out


def _compare(what: str, ctx: LambdaContext, a, b) -> None:
    for n, (ra, rb) in enumerate(zip(a, b)):
        for k, (x, y) in enumerate(zip(ra, rb)):
            if ctx.coerce(x) != ctx.coerce(y):
                raise RouteMismatch(what, (n, k), x, y)


def _gf_columns(base: PowerSeries, nmax: int, prefactor: PowerSeries | None = None) -> list[list]:
    """Rows of ``n! [t^n] prefactor * base^k / k!`` for ``0 <= k <= n <= nmax``."""
    rows = [[None] * (n + 1) for n in range(nmax + 1)]
    power = PowerSeries.constant(Fraction(1), nmax, base.var)
    if prefactor is not None:
        power = ps_mul(power, prefactor)
    for k in range(nmax + 1):
        if k:
            power = ps_mul(power, base)
        kf = math.factorial(k)
        for n in range(k, nmax + 1):
            rows[n][k] = egf_coeff(power, n) / kf
    return rows


def _build_s2(nmax: int, ctx: LambdaContext, r: int = 0) -> list[list]:
    lam = ctx.lam
    # basis conversion
    targets = _shifted_factorials(nmax, lam, r)
    falling = _shifted_factorials(nmax, 1)
    by_basis = [triangular_solve(targets[n], falling[: n + 1]) for n in range(nmax + 1)]
    # generating function: e_lambda^r(t) (e_lambda(t) - 1)^k / k!
    t = PowerSeries.variable(nmax)
    e_minus_1 = ps_deg_exp(t, 1, ctx) - 1
    pre = ps_deg_exp(t, r, ctx) if r else None
    by_gf = _gf_columns(e_minus_1, nmax, pre)
    # recurrence
    by_rec = [[Fraction(1)]]
    for n in range(nmax):
        prev = by_rec[-1]
        row = []
        for k in range(n + 2):
            v = prev[k - 1] if k >= 1 else _ZERO
            if k <= n:
                v = v + (k + r - n * lam) * prev[k]
            row.append(v)
        by_rec.append(row)
    what = f"{'r-' if r else ''}Stirling2(lambda={ctx.label}, r={r})"
    _compare(what + " basis/gf", ctx, by_basis, by_gf)
    _compare(what + " basis/recurrence", ctx, by_basis, by_rec)
    return by_basis


def _build_s1(nmax: int, ctx: LambdaContext) -> list[list]:
    lam = ctx.lam
    targets = _shifted_factorials(nmax, 1)
    deg_falling = _shifted_factorials(nmax, lam)
    by_basis = [triangular_solve(targets[n], deg_falling[: n + 1]) for n in range(nmax + 1)]
    t = PowerSeries.variable(nmax)
    by_gf = _gf_columns(ps_deg_log(t, ctx), nmax)
    by_rec = [[Fraction(1)]]
    for n in range(nmax):
        prev = by_rec[-1]
        row = []
        for k in range(n + 2):
            v = prev[k - 1] if k >= 1 else _ZERO
            if k <= n:
                v = v + (k * lam - n) * prev[k]
            row.append(v)
        by_rec.append(row)
    what = f"Stirling1(lambda={ctx.label})"
    _compare(what + " basis/gf", ctx, by_basis, by_gf)
    _compare(what + " basis/recurrence", ctx, by_basis, by_rec)
    return by_basis


_cache: dict = {}
_lock = threading.Lock()


def _cached(kind: str, nmax: int, ctx: LambdaContext, r: int, build) -> StirlingTriangle:
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    key = (kind, ctx, r)
    with _lock:
        hit = _cache.get(key)
    if hit is not None and hit.nmax >= nmax:
        return hit if hit.nmax == nmax else hit.truncate(nmax)
    rows = build()
    tri = StirlingTriangle(
        kind, nmax, tuple(tuple(ctx.coerce(v) for v in row) for row in rows), ctx, r
    )
    with _lock:
        cur = _cache.get(key)
        if cur is None or cur.nmax < nmax:
            _cache[key] = tri
    return tri


def stirling2_deg(nmax: int, ctx: LambdaContext) -> StirlingTriangle:
    """Degenerate Stirling numbers of the second kind: ``(x)_{n,lam} = sum_k S2(n,k) (x)_k``."""
    return _cached(S2_DEG, nmax, ctx, 0, lambda: _build_s2(nmax, ctx))


def stirling1_deg(nmax: int, ctx: LambdaContext) -> StirlingTriangle:
    """Degenerate Stirling numbers of the first kind: ``(x)_n = sum_k S1(n,k) (x)_{k,lam}``."""
    return _cached(S1_DEG, nmax, ctx, 0, lambda: _build_s1(nmax, ctx))


def stirling1_deg_unsigned(nmax: int, ctx: LambdaContext) -> StirlingTriangle:
    signed = stirling1_deg(nmax, ctx)
    rows = tuple(
        tuple(v if (n - k) % 2 == 0 else -v for k, v in enumerate(row))
        for n, row in enumerate(signed.rows)
    )
    return StirlingTriangle(S1_DEG_UNSIGNED, nmax, rows, ctx)


def stirling2_r_deg(nmax: int, r: int, ctx: LambdaContext) -> StirlingTriangle:
    """Degenerate r-Stirling numbers: ``(x+r)_{n,lam} = sum_k T(n,k) (x)_k``."""
    if r < 0:
        raise ValueError("r must be >= 0")
    if r == 0:
        tri = stirling2_deg(nmax, ctx)
        return StirlingTriangle(S2_R_DEG, nmax, tri.rows, ctx, 0)
    return _cached(S2_R_DEG, nmax, ctx, r, lambda: _build_s2(nmax, ctx, r))


def classical_stirling2(nmax: int) -> list[list[int]]:
    """Ordinary Stirling numbers of the second kind, ``x^n = sum_k S(n,k) (x)_k``."""
    falling = _shifted_factorials(nmax, 1)
    return [
        [int(v) for v in triangular_solve(Poly.monomial(Fraction(1), n), falling[: n + 1])]
        for n in range(nmax + 1)
    ]


def classical_stirling1(nmax: int) -> list[list[int]]:
    """Signed Stirling numbers of the first kind, ``(x)_n = sum_k s(n,k) x^k``."""
    falling = _shifted_factorials(nmax, 1)
    return [[int(falling[n].coeff(k)) for k in range(n + 1)] for n in range(nmax + 1)]
