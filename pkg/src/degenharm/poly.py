"""Dense univariate polynomials in x or y over the coefficient ring."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .kernel import exact_div
from .series import PowerSeries, ps_compose

__all__ = ["Poly", "eval_poly", "interpolate"]

_ZERO = Fraction(0)


class Poly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def monomial(cls, c, k: int, var: str = "x") -> Poly:
        return cls([_ZERO] * k + [c], var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else _ZERO

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.var, self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        from .codec import format_value

        return f"Poly({[format_value(c) for c in self.coeffs]}, var={self.var!r})"

    def _check(self, other: Poly) -> None:
        if self.var != other.var:
            raise ValueError(f"polynomials in {self.var!r} and {other.var!r}")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other], self.var)
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(i) + other.coeff(i) for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other], self.var)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly([c * other for c in self.coeffs], self.var)
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return Poly([], self.var)
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return Poly(out, self.var)

    __rmul__ = __mul__

    def map(self, fn) -> Poly:
        return Poly([fn(c) for c in self.coeffs], self.var)

    def derivative(self, k: int = 1) -> Poly:
        cs = list(self.coeffs)
        for _ in range(k):
            cs = [c * i for i, c in enumerate(cs)][1:]
        return Poly(cs, self.var)

    def __call__(self, v):
        return eval_poly(self, v)

    def to_series(self, order: int) -> PowerSeries:
        return PowerSeries(self.coeffs, order, self.var)

    def compose_series(self, g: PowerSeries) -> PowerSeries:
        """``self(g)`` for a series ``g`` with zero constant term."""
        return ps_compose(self.coeffs, g)


def eval_poly(p: Poly, v):
    """Horner evaluation."""
    acc = _ZERO
    for c in reversed(p.coeffs):
        acc = acc * v + c
    return acc


def interpolate(points: Sequence, values: Sequence, var: str = "x") -> Poly:
    """Lagrange interpolation through ``(points[i], values[i])``."""
    if len(points) != len(values):
        raise ValueError("points and values differ in length")
    result = Poly([], var)
    for i, (xi, yi) in enumerate(zip(points, values)):
        basis = Poly([Fraction(1)], var)
        denom = Fraction(1)
        for j, xj in enumerate(points):
            if j != i:
                basis = basis * Poly([-xj, Fraction(1)], var)
                denom *= xi - xj
        result = result + basis * exact_div(yi, denom)
    return result
