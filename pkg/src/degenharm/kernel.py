"""Exact scalars: rationals, polynomials in lambda, factorial primitives.

Every quantity in the package is a *coefficient value*: either a
``fractions.Fraction`` (with lambda fixed to a nonzero rational by a
:class:`LambdaContext`) or a :class:`LambdaPoly` (lambda kept as an
indeterminate).  Both support ``+ - *`` with each other and with ``int``,
and ``/`` is exact division: for ``LambdaPoly`` it raises
:class:`~degenharm.errors.NonDivisible` when a remainder would be left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import NonDivisible

__all__ = [
    "LambdaPoly",
    "LambdaContext",
    "CoeffValue",
    "falling_factorial_deg",
    "falling_factorial",
    "rising_factorial",
    "binomial_general",
    "div_exact_lambda",
    "exact_div",
    "evaluate_at",
    "to_fraction",
]


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    while num and num[-1] == 0:
        num.pop()
    if not num:
        return (), 1
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = math.gcd(den, *num)
    if g != 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


class LambdaPoly:
    """Dense polynomial in lambda with rational coefficients.

    Stored as integer numerators over one positive common denominator,
    reduced so that the gcd of all of them is 1.  Instances are immutable.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, coeffs: Iterable = ()):
        fracs = [Fraction(c) for c in coeffs]
        den = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
        num = [f.numerator * (den // f.denominator) for f in fracs]
        self._num, self._den = _normalize(num, den)

    @classmethod
    def _raw(cls, num: list[int], den: int) -> LambdaPoly:
        obj = object.__new__(cls)
        obj._num, obj._den = _normalize(num, den)
        return obj

    @classmethod
    def gen(cls) -> LambdaPoly:
        """The indeterminate lambda itself."""
        return cls._raw([0, 1], 1)

    @classmethod
    def const(cls, c) -> LambdaPoly:
        c = Fraction(c)
        return cls._raw([c.numerator], c.denominator)

    # -- inspection ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Coefficients of lambda^0, lambda^1, ... with trailing zeros trimmed."""
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def degree(self) -> int:
        return len(self._num) - 1

    def is_constant(self) -> bool:
        return len(self._num) <= 1

    def constant_term(self) -> Fraction:
        return Fraction(self._num[0], self._den) if self._num else Fraction(0)

    def evaluate(self, at) -> Fraction:
        at = Fraction(at)
        acc = Fraction(0)
        for c in reversed(self._num):
            acc = acc * at + c
        return acc / self._den

    def __bool__(self) -> bool:
        return bool(self._num)

    def __eq__(self, other) -> bool:
        if isinstance(other, LambdaPoly):
            return self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.constant_term())
        return hash((self._num, self._den))

    def __repr__(self) -> str:
        return f"LambdaPoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        from .codec import format_value

        return format_value(self)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, LambdaPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LambdaPoly.const(other)
        return None

    def __neg__(self) -> LambdaPoly:
        return LambdaPoly._raw([-c for c in self._num], self._den)

    def __pos__(self) -> LambdaPoly:
        return self

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._num, o._num
        da, db = self._den, o._den
        if da == db:
            n = len(a) if len(a) >= len(b) else len(b)
            out = [0] * n
            for i, c in enumerate(a):
                out[i] = c
            for i, c in enumerate(b):
                out[i] += c
            return LambdaPoly._raw(out, da)
        n = max(len(a), len(b))
        out = [0] * n
        for i, c in enumerate(a):
            out[i] = c * db
        for i, c in enumerate(b):
            out[i] += c * da
        return LambdaPoly._raw(out, da * db)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return LambdaPoly._raw([c * other for c in self._num], self._den)
        if isinstance(other, Fraction):
            p, q = other.numerator, other.denominator
            return LambdaPoly._raw([c * p for c in self._num], self._den * q)
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        a, b = self._num, other._num
        if not a or not b:
            return LambdaPoly._raw([], 1)
        if len(a) < len(b):
            a, b = b, a
        out = [0] * (len(a) + len(b) - 1)
        for j, bj in enumerate(b):
            if bj:
                for i, ai in enumerate(a):
                    out[i + j] += ai * bj
        return LambdaPoly._raw(out, self._den * other._den)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LambdaPoly:
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = LambdaPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("LambdaPoly division by zero")
            other = Fraction(other)
            p, q = other.numerator, other.denominator
            return LambdaPoly._raw([c * q for c in self._num], self._den * p)
        if isinstance(other, LambdaPoly):
            if other.is_constant():
                return self / other.constant_term()
            return self.exact_div(other)
        return NotImplemented

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def exact_div(self, other: LambdaPoly) -> LambdaPoly:
        """Polynomial quotient; raises NonDivisible on a nonzero remainder."""
        if not other:
            raise ZeroDivisionError("LambdaPoly division by zero")
        rem = list(self.coeffs)
        div = other.coeffs
        lead = div[-1]
        dq = len(rem) - len(div)
        if dq < 0:
            if rem:
                raise NonDivisible(f"{self!r} is not divisible by {other!r}")
            return LambdaPoly()
        quot = [Fraction(0)] * (dq + 1)
        for i in range(dq, -1, -1):
            c = rem[i + len(div) - 1] / lead
            quot[i] = c
            if c:
                for j, d in enumerate(div):
                    rem[i + j] -= c * d
        if any(rem):
            raise NonDivisible(f"{self!r} is not divisible by {other!r}")
        return LambdaPoly(quot)


CoeffValue = Union[Fraction, LambdaPoly, int]


def to_fraction(v) -> Fraction:
    """Return ``v`` as a Fraction; LambdaPoly values must be constant."""
    if isinstance(v, LambdaPoly):
        if not v.is_constant():
            raise ValueError(f"{v!r} depends on lambda")
        return v.constant_term()
    return Fraction(v)


def evaluate_at(v, at) -> Fraction:
    """Substitute lambda = ``at`` (rational values pass through unchanged)."""
    if isinstance(v, LambdaPoly):
        return v.evaluate(at)
    return Fraction(v)


def exact_div(a, b):
    """``a / b`` in the coefficient ring, exact or NonDivisible."""
    if isinstance(b, int) and isinstance(a, int):
        return Fraction(a, b)
    return a / b


@dataclass(frozen=True)
class LambdaContext:
    """Where lambda lives for one computation.

    ``value`` is a nonzero Fraction in rational mode; ``None`` selects
    symbolic mode, where lambda is the indeterminate of :class:`LambdaPoly`.
    """

    value: Fraction | None = None

    def __post_init__(self):
        if self.value is not None:
            v = Fraction(self.value)
            if v == 0:
                raise ValueError("lambda must be nonzero; use symbolic mode and evaluate at 0 for classical limits")
            object.__setattr__(self, "value", v)

    @classmethod
    def symbolic(cls) -> LambdaContext:
        return cls(None)

    @classmethod
    def fixed(cls, value) -> LambdaContext:
        return cls(Fraction(value))

    @classmethod
    def parse(cls, text: str) -> LambdaContext:
        text = text.strip()
        if text.lower() in ("symbolic", "sym", "λ", "lambda"):
            return cls.symbolic()
        return cls.fixed(Fraction(text))

    @property
    def is_symbolic(self) -> bool:
        return self.value is None

    @property
    def lam(self):
        """Lambda as a coefficient value."""
        return LambdaPoly.gen() if self.value is None else self.value

    @property
    def label(self) -> str:
        if self.value is None:
            return "symbolic"
        from .codec import format_rational

        return format_rational(self.value)

    def coerce(self, v):
        """Canonical representative of ``v`` in this context's ring."""
        if self.value is None:
            return v if isinstance(v, LambdaPoly) else LambdaPoly.const(v)
        return to_fraction(v)

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def div_lambda(self, v):
        """``v / lambda``, exact in both modes."""
        if self.value is None:
            return div_exact_lambda(self.coerce(v))
        return Fraction(v) / self.value

    def __str__(self) -> str:
        return self.label


def falling_factorial_deg(x, n: int, lam):
    """``x (x - lam) (x - 2 lam) ... (x - (n-1) lam)``; 1 when ``n == 0``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    acc = Fraction(1)
    for j in range(n):
        acc = acc * (x - j * lam)
    return acc


def falling_factorial(x, n: int):
    if n < 0:
        raise ValueError("n must be >= 0")
    acc = Fraction(1)
    for j in range(n):
        acc = acc * (x - j)
    return acc


def rising_factorial(alpha, k: int):
    if k < 0:
        raise ValueError("k must be >= 0")
    acc = Fraction(1)
    for j in range(k):
        acc = acc * (alpha + j)
    return acc


def binomial_general(q, k: int):
    """``binom(q, k)`` for an arbitrary ring element ``q``."""
    return falling_factorial(q, k) / math.factorial(k)


def div_exact_lambda(p: LambdaPoly) -> LambdaPoly:
    """Return ``q`` with ``lambda * q == p``; ``p`` must vanish at lambda = 0."""
    if not isinstance(p, LambdaPoly):
        p = LambdaPoly.const(p)
    num = p.numerators
    if not num:
        return p
    if num[0] != 0:
        raise NonDivisible(f"constant term of {p!r} is nonzero; cannot divide by lambda")
    return LambdaPoly._raw(list(num[1:]), p.denominator)
