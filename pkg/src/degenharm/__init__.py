"""Exact degenerate harmonic, hyperharmonic and Fubini-type numbers.

Values live either in the rationals (a fixed nonzero lambda) or in
``Q[lambda]`` (symbolic mode); every family is computed by several
independent routes that must agree before a result is returned.
"""

from __future__ import annotations

from .codec import format_pretty, format_value, parse_value
from .errors import (
    ConfigInvalid,
    DegenError,
    NonDivisible,
    NonInvertibleRelation,
    NonUnitConstantTerm,
    NonzeroInnerConstant,
    OrderExhausted,
    RouteMismatch,
    UnknownIdentity,
    UnsupportedGrid,
    VarMismatch,
)
from .fubini import (
    classical_fubini,
    fubini_deg,
    fubini_deg_order,
    hf_poly,
    hfr_poly,
)
from .harmonic import classical_harmonic, harmonic_deg, hyperharmonic_deg
from .identities import Grid, check_identity, list_identities, run_suite
from .kernel import LambdaContext, LambdaPoly
from .poly import Poly
from .series import (
    PowerSeries,
    ps_compose,
    ps_deg_exp,
    ps_deg_log,
    ps_div,
    ps_mul,
)
from .stirling import stirling1_deg, stirling2_deg, stirling2_r_deg

__all__ = [
    "ConfigInvalid",
    "DegenError",
    "Grid",
    "LambdaContext",
    "LambdaPoly",
    "NonDivisible",
    "NonInvertibleRelation",
    "NonUnitConstantTerm",
    "NonzeroInnerConstant",
    "OrderExhausted",
    "Poly",
    "PowerSeries",
    "RouteMismatch",
    "UnknownIdentity",
    "UnsupportedGrid",
    "VarMismatch",
    "check_identity",
    "classical_fubini",
    "classical_harmonic",
    "format_pretty",
    "format_value",
    "fubini_deg",
    "fubini_deg_order",
    "harmonic_deg",
    "hf_poly",
    "hfr_poly",
    "hyperharmonic_deg",
    "list_identities",
    "parse_value",
    "ps_compose",
    "ps_deg_exp",
    "ps_deg_log",
    "ps_div",
    "ps_mul",
    "run_suite",
    "stirling1_deg",
    "stirling2_deg",
    "stirling2_r_deg",
]
