"""Truncated formal power series over the coefficient ring.

A :class:`PowerSeries` of order ``N`` is known modulo ``var^(N+1)`` and
stores ordinary coefficients; the exponential normalization is a view
(:func:`egf_coeff`).  Binary operations truncate at the smaller order and
refuse to mix formal variables.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import NonUnitConstantTerm, NonzeroInnerConstant, OrderExhausted, VarMismatch
from .kernel import LambdaContext, LambdaPoly, binomial_general, falling_factorial_deg

__all__ = [
    "PowerSeries",
    "ps_add",
    "ps_sub",
    "ps_scale",
    "ps_mul",
    "ps_div",
    "ps_compose",
    "ps_binom_pow",
    "ps_deg_log",
    "ps_deg_exp",
    "ps_theta_falling",
    "ps_derive",
    "egf_coeff",
    "deg_log_coefficients",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class PowerSeries:
    __slots__ = ("coeffs", "order", "var", "_hash")

    def __init__(self, coeffs: Iterable, order: int, var: str = "t"):
        if order < 0:
            raise ValueError("order must be >= 0")
        cs = list(coeffs)[: order + 1]
        cs.extend([_ZERO] * (order + 1 - len(cs)))
        self.coeffs = tuple(cs)
        self.order = order
        self.var = var
        self._hash = None

    @classmethod
    def constant(cls, c, order: int, var: str = "t") -> PowerSeries:
        return cls([c], order, var)

    @classmethod
    def variable(cls, order: int, var: str = "t") -> PowerSeries:
        return cls([_ZERO, _ONE], order, var)

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.var == other.var and self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.var, self.order, self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"PowerSeries({self.pretty()})"

    def pretty(self) -> str:
        from .codec import format_pretty

        parts = []
        for n, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if n == 0 else (self.var if n == 1 else f"{self.var}^{n}")
            if isinstance(c, LambdaPoly) and c.is_constant():
                c = c.constant_term()
            if isinstance(c, LambdaPoly):
                neg = False
                text = format_pretty(c)
                if mono and not text.startswith("(") and len([x for x in c.numerators if x]) > 1:
                    text = f"({text})"
            else:
                neg = c < 0
                text = format_pretty(abs(c))
            if mono:
                if text == "1":
                    text = mono
                else:
                    text = f"{text} {mono}"
            parts.append((neg, text))
        out = ""
        for neg, text in parts:
            if not out:
                out = ("-" if neg else "") + text
            else:
                out += (" - " if neg else " + ") + text
        big_o = f"O({self.var}^{self.order + 1})" if self.order else f"O({self.var})"
        return f"{out} + {big_o}" if out else big_o

    def valuation(self) -> int | None:
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def truncate(self, order: int) -> PowerSeries:
        if order > self.order:
            raise OrderExhausted(f"cannot raise order {self.order} to {order}")
        return PowerSeries(self.coeffs, order, self.var)

    def map(self, fn) -> PowerSeries:
        return PowerSeries([fn(c) for c in self.coeffs], self.order, self.var)

    def __add__(self, other):
        if isinstance(other, PowerSeries):
            return ps_add(self, other)
        return PowerSeries([self.coeffs[0] + other, *self.coeffs[1:]], self.order, self.var)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, PowerSeries):
            return ps_sub(self, other)
        return PowerSeries([self.coeffs[0] - other, *self.coeffs[1:]], self.order, self.var)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.order, self.var)

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return ps_mul(self, other)
        return ps_scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return ps_div(self, other)
        return PowerSeries([c / other for c in self.coeffs], self.order, self.var)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = PowerSeries.constant(_ONE, self.order, self.var)
        for _ in range(k):
            result = result * self
        return result


def _check_var(a: PowerSeries, b: PowerSeries) -> None:
    if a.var != b.var:
        raise VarMismatch(f"series in {a.var!r} combined with series in {b.var!r}")


def ps_add(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    _check_var(a, b)
    n = min(a.order, b.order)
    return PowerSeries([a.coeffs[i] + b.coeffs[i] for i in range(n + 1)], n, a.var)


def ps_sub(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    _check_var(a, b)
    n = min(a.order, b.order)
    return PowerSeries([a.coeffs[i] - b.coeffs[i] for i in range(n + 1)], n, a.var)


def ps_scale(a: PowerSeries, c) -> PowerSeries:
    if not c:
        return PowerSeries([], a.order, a.var)
    return PowerSeries([x * c if x else x for x in a.coeffs], a.order, a.var)


def ps_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    _check_var(a, b)
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    nz_b = [(j, bc[j]) for j in range(n + 1) if bc[j]]
    out = [_ZERO] * (n + 1)
    for i in range(n + 1):
        ai = ac[i]
        if not ai:
            continue
        for j, bj in nz_b:
            if i + j > n:
                break
            out[i + j] = out[i + j] + ai * bj
    return PowerSeries(out, n, a.var)


def _unit_inverse(c):
    if isinstance(c, LambdaPoly):
        if not c or not c.is_constant():
            raise NonUnitConstantTerm(f"constant term {c!r} is not a unit")
        return 1 / c.constant_term()
    if not c:
        raise NonUnitConstantTerm("constant term is zero")
    return 1 / Fraction(c)


def ps_div(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Quotient ``q`` with ``q * b == a`` modulo ``var^(order+1)``."""
    _check_var(a, b)
    n = min(a.order, b.order)
    inv = _unit_inverse(b.coeffs[0])
    bc = b.coeffs
    q = []
    for i in range(n + 1):
        acc = a.coeffs[i]
        for j in range(1, i + 1):
            if bc[j] and q[i - j]:
                acc = acc - bc[j] * q[i - j]
        q.append(acc * inv)
    return PowerSeries(q, n, a.var)


@lru_cache(maxsize=512)
def _powers(g: PowerSeries) -> tuple[PowerSeries, ...]:
    pw = [PowerSeries.constant(_ONE, g.order, g.var)]
    for _ in range(g.order):
        pw.append(ps_mul(pw[-1], g))
    return tuple(pw)


def ps_compose(f: PowerSeries | Sequence, g: PowerSeries) -> PowerSeries:
    """``f(g)`` for ``g`` with zero constant term.

    ``f`` may be a PowerSeries (any variable name) or a plain coefficient
    sequence.  The result is exact modulo ``var^(order+1)`` where ``order``
    is the smaller of the two orders, and lives in ``g``'s variable.
    """
    if g.coeffs[0]:
        raise NonzeroInnerConstant("inner series must have zero constant term")
    if isinstance(f, PowerSeries):
        fc, n = f.coeffs, min(f.order, g.order)
    else:
        fc, n = tuple(f), g.order
    g = g if g.order == n else g.truncate(n)
    pw = _powers(g)
    out = [_ZERO] * (n + 1)
    for k in range(min(n, len(fc) - 1) + 1):
        c = fc[k]
        if not c:
            continue
        # g^k has valuation >= k
        pc = pw[k].coeffs
        for i in range(k, n + 1):
            if pc[i]:
                out[i] = out[i] + c * pc[i]
    return PowerSeries(out, n, g.var)


def _binomial_coefficients(q, n: int) -> list:
    out = [_ONE]
    for k in range(1, n + 1):
        out.append(out[-1] * (q - (k - 1)) / k)
    return out


def ps_binom_pow(u: PowerSeries, q) -> PowerSeries:
    """``(1 + u)^q = sum_k binom(q, k) u^k`` for ``u`` with zero constant term."""
    if u.coeffs[0]:
        raise NonzeroInnerConstant("(1+u)^q needs u with zero constant term")
    return ps_compose(_binomial_coefficients(q, u.order), u)


def deg_log_coefficients(n: int, ctx: LambdaContext) -> list:
    """Coefficients of ``log_lambda(1+t)`` up to ``t^n``.

    ``c_k = prod_{j=1}^{k-1} (lambda - j) / k!`` -- no division by lambda.
    """
    lam = ctx.lam
    out = [_ZERO]
    prod = _ONE
    for k in range(1, n + 1):
        if k > 1:
            prod = prod * (lam - (k - 1))
        out.append(prod / math.factorial(k))
    return out


def ps_deg_log(u: PowerSeries, ctx: LambdaContext) -> PowerSeries:
    """``log_lambda(1 + u)``."""
    if u.coeffs[0]:
        raise NonzeroInnerConstant("log_lambda(1+u) needs u with zero constant term")
    return ps_compose(deg_log_coefficients(u.order, ctx), u)


def ps_deg_exp(u: PowerSeries, x, ctx: LambdaContext) -> PowerSeries:
    """``e_lambda^x(u) = sum_n (x)_{n,lambda} u^n / n!``."""
    if u.coeffs[0]:
        raise NonzeroInnerConstant("e_lambda^x(u) needs u with zero constant term")
    lam = ctx.lam
    cs = []
    ff = _ONE
    for n in range(u.order + 1):
        if n:
            ff = ff * (x - (n - 1) * lam)
        cs.append(ff / math.factorial(n))
    return ps_compose(cs, u)


def ps_theta_falling(s: PowerSeries, k: int, ctx: LambdaContext) -> PowerSeries:
    """Apply ``(theta)(theta - lambda)...(theta - (k-1) lambda)``, theta = var * d/dvar."""
    lam = ctx.lam
    return PowerSeries(
        [falling_factorial_deg(n, k, lam) * c if c else c for n, c in enumerate(s.coeffs)],
        s.order,
        s.var,
    )


def ps_derive(s: PowerSeries, k: int = 1) -> PowerSeries:
    """``k``-th formal derivative; the order drops by ``k``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k > s.order:
        raise OrderExhausted(f"cannot differentiate {k} times a series of order {s.order}")
    out = []
    for n in range(k, s.order + 1):
        c = s.coeffs[n]
        out.append(c * (math.factorial(n) // math.factorial(n - k)) if c else c)
    return PowerSeries(out, s.order - k, s.var)


def egf_coeff(s: PowerSeries, n: int):
    """``n! * [var^n] s``."""
    if n < 0 or n > s.order:
        raise OrderExhausted(f"coefficient {n} beyond order {s.order}")
    return s.coeffs[n] * math.factorial(n)
