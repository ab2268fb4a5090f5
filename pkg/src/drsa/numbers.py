"""Exact fixed-point values and percentage rendering.

Attribute values are :class:`decimal.Decimal` quantized to four places, so
``-0.33`` compares exactly and threshold equality is reliable. Ratios
(scores, supports, metrics) are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import decimal
import math
from decimal import Decimal
from fractions import Fraction

QUANTUM = Decimal("0.0001")

_CTX = decimal.Context(prec=34, rounding=decimal.ROUND_HALF_EVEN)


def to_decimal(raw, *, strict: bool = True) -> Decimal:
    """Convert ``raw`` (str, int, Decimal or Fraction) to a quantized Decimal.

    With ``strict`` the value must already be representable at 10^-4;
    otherwise it is rounded half-even to the nearest step.
    Floats are refused: their binary expansion is what this type avoids.
    """
    if isinstance(raw, bool) or isinstance(raw, float):
        raise TypeError(f"refusing inexact value {raw!r}; pass a str or Decimal")
    if isinstance(raw, Fraction):
        value = _CTX.divide(Decimal(raw.numerator), Decimal(raw.denominator))
    elif isinstance(raw, str):
        try:
            value = Decimal(raw.strip())
        except decimal.InvalidOperation:
            raise ValueError(f"not a number: {raw!r}") from None
    else:
        value = Decimal(raw)
    if not value.is_finite():
        raise ValueError(f"not a finite number: {raw!r}")
    q = value.quantize(QUANTUM, context=_CTX)
    if strict and q != value:
        raise ValueError(f"{raw!r} needs more than four decimal places")
    return q


def format_decimal(value: Decimal) -> str:
    """Shortest plain rendering: ``0.5000`` -> ``0.5``, ``1.0000`` -> ``1``."""
    if value == 0:
        return "0"
    return format(value.normalize(), "f")


def format_threshold(value: Decimal) -> str:
    """Rule-threshold rendering: ``1``, ``-0.33``, ``0.50``, ``0.0625``."""
    if value == value.to_integral_value():
        return format_decimal(value)
    two = value.quantize(Decimal("0.01"))
    return str(two) if two == value else format_decimal(value)


def format_truncated(value) -> str:
    """Render a percentage truncated (not rounded) to two decimals.

    >>> format_truncated(Fraction(8000, 85))
    '94.11'
    """
    v = Fraction(value)
    if v < 0:
        raise ValueError("percentages are non-negative")
    hundredths = math.floor(v * 100)
    return f"{hundredths // 100}.{hundredths % 100:02d}"


def percent(part: int, whole: int) -> Fraction:
    return Fraction(100 * part, whole)
