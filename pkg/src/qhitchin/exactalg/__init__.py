"""Exact arithmetic: rationals, rational functions in z, shift-symbol Laurent polynomials."""

from __future__ import annotations

from fractions import Fraction

from .ratfunc import (
    INF,
    DivisionByZero,
    PoleAtEvaluationPoint,
    Poly,
    RatFunc,
    poly_gcd,
    rational_roots,
    residue_at,
)
from .shiftpoly import (
    FractionalExponentOutsideP,
    ParseError,
    P,
    ShiftFrac,
    ShiftPoly,
    T,
    U,
    Y,
    make_monomial,
    parse_expr,
    shift,
)

Rational = Fraction

__all__ = [
    "INF",
    "DivisionByZero",
    "FractionalExponentOutsideP",
    "P",
    "ParseError",
    "PoleAtEvaluationPoint",
    "Poly",
    "RatFunc",
    "Rational",
    "ShiftFrac",
    "ShiftPoly",
    "T",
    "U",
    "Y",
    "make_monomial",
    "parse_expr",
    "poly_gcd",
    "rational_roots",
    "residue_at",
    "shift",
]
