"""Exception types raised across the package."""

from __future__ import annotations


class DegenError(Exception):
    """Base class for every error raised by degenharm."""


class NonDivisible(DegenError, ArithmeticError):
    """An exact division left a nonzero remainder."""


class VarMismatch(DegenError, ValueError):
    """Two series in different formal variables were combined."""


class NonUnitConstantTerm(DegenError, ZeroDivisionError):
    """Series division by a series whose constant term is not a unit."""


class NonzeroInnerConstant(DegenError, ValueError):
    """Substitution into a series whose constant term is not zero."""


class OrderExhausted(DegenError, IndexError):
    """A coefficient beyond the truncation order was requested."""


class RouteMismatch(DegenError, RuntimeError):
    """Two independent computations of the same quantity disagree."""

    def __init__(self, what: str, index, left, right):
        self.what = what
        self.index = index
        self.left = left
        self.right = right
        super().__init__(f"{what}: routes disagree at {index}: {left!s} != {right!s}")


class NonInvertibleRelation(DegenError, ZeroDivisionError):
    """A closed form needs to divide by a quantity that vanishes at this lambda."""


class UnknownIdentity(DegenError, KeyError):
    pass


class UnsupportedGrid(DegenError, ValueError):
    pass


class ConfigInvalid(DegenError, ValueError):
    pass
