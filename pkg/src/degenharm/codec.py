"""Text and JSON encodings of coefficient values.

Rationals are written ``"p/q"`` (``"p"`` when ``q == 1``), never as decimals.
A :class:`LambdaPoly` has two encodings: a canonical string such as
``"3/2 - 1/2*λ + λ^2"`` (lowest degree first) and a JSON array of rational
strings, e.g. ``["3/2", "-1/2", "1"]``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .kernel import LambdaPoly

LAMBDA = "λ"

_TERM = re.compile(
    r"""^(?P<coef>\d+(?:/\d+)?)?
        (?:\*?(?P<var>λ|lam|lambda|L)(?:\^(?P<exp>\d+))?)?$""",
    re.VERBOSE,
)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


def _monomial(c: Fraction, k: int) -> str:
    if k == 0:
        return format_rational(c)
    var = LAMBDA if k == 1 else f"{LAMBDA}^{k}"
    if c == 1:
        return var
    return f"{format_rational(c)}*{var}"


def _join(terms: list[tuple[Fraction, int]], mono) -> str:
    out = ""
    for c, k in terms:
        if not out:
            out = ("-" if c < 0 else "") + mono(abs(c), k)
        else:
            out += (" - " if c < 0 else " + ") + mono(abs(c), k)
    return out or "0"


def format_value(v) -> str:
    """Canonical string of a rational or lambda polynomial."""
    if isinstance(v, LambdaPoly):
        return _join([(c, k) for k, c in enumerate(v.coeffs) if c], _monomial)
    return format_rational(v)


def format_pretty(v) -> str:
    """Human form with the common denominator pulled out, e.g. ``(3 - λ)/2``."""
    if not isinstance(v, LambdaPoly) or v.is_constant():
        return format_value(v)
    body = _join([(Fraction(c), k) for k, c in enumerate(v.numerators) if c], _monomial)
    if v.denominator == 1:
        return body
    return f"({body})/{v.denominator}"


def parse_value(text: str):
    """Inverse of :func:`format_value`.

    Returns a Fraction for plain rationals and a LambdaPoly as soon as the
    indeterminate appears.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty value")
    if LAMBDA not in s and "lam" not in s and "L" not in s:
        return parse_rational(s)
    coeffs: dict[int, Fraction] = {}
    for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
        m = _TERM.match(body)
        if not m or (m.group("coef") is None and m.group("var") is None):
            raise ValueError(f"cannot parse term {body!r} in {text!r}")
        c = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        k = 0
        if m.group("var"):
            k = int(m.group("exp")) if m.group("exp") else 1
        if sign == "-":
            c = -c
        coeffs[k] = coeffs.get(k, Fraction(0)) + c
    if "".join(sign + body for sign, body in re.findall(r"([+-]?)([^+-]+)", s)) != s:
        raise ValueError(f"cannot parse {text!r}")
    deg = max(coeffs)
    return LambdaPoly(coeffs.get(i, 0) for i in range(deg + 1))


def value_to_json(v):
    """Rationals become strings; lambda polynomials become arrays of strings."""
    if isinstance(v, LambdaPoly):
        return [format_rational(c) for c in v.coeffs]
    return format_rational(v)


def value_from_json(obj):
    if isinstance(obj, list):
        return LambdaPoly(parse_rational(c) for c in obj)
    if isinstance(obj, str):
        return parse_rational(obj)
    raise ValueError(f"unexpected JSON value {obj!r}")
