"""Rational helpers: parsing, formatting and fractional parts."""

from __future__ import annotations

import math
from decimal import Context
from fractions import Fraction

Q = Fraction


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction.

    Floats and decimal strings are rejected so that nothing inexact leaks in.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise TypeError(f"cannot read a rational from {type(text).__name__}")
    s = text.strip()
    if not s or any(c in s for c in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(s)


def fmt(x: Fraction | int) -> str:
    """Lossless ``p/q`` rendering (integers render without a denominator)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def frac_part(x: Fraction) -> Fraction:
    """{x} = x - floor(x), always in [0, 1)."""
    return x - math.floor(x)


def decimal_str(x: Fraction, digits: int = 12) -> str:
    """Display-only decimal with ``digits`` significant digits."""
    ctx = Context(prec=digits)
    return str(ctx.divide(x.numerator, x.denominator))
