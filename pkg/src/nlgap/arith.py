"""Helpers for the exact-rational / float dual number mode."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

Number = Union[int, Fraction, float]


def is_rational(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


def normalize(values: Iterable[Number]) -> tuple[list, bool]:
    """Return ``(values, exact)``.

    All-rational input is converted to ``Fraction``; anything else
    (a single float is enough) makes the whole list float.
    """
    vals = list(values)
    for v in vals:
        if isinstance(v, bool) or not isinstance(v, (int, float, Fraction, Rational)):
            raise TypeError(f"not a number: {v!r}")
    if all(is_rational(v) for v in vals):
        return [Fraction(v) for v in vals], True
    return [float(v) for v in vals], False


def parse_number(text: str) -> Number:
    """Parse ``p/q``, an integer, or a decimal float."""
    text = text.strip()
    if "/" in text:
        p, q = text.split("/", 1)
        return Fraction(int(p), int(q))
    try:
        return Fraction(int(text))
    except ValueError:
        return float(text)


def format_number(x: Number) -> str:
    """Inverse of :func:`parse_number` (round-trips exactly)."""
    if is_rational(x):
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    r = repr(float(x))
    # keep floats distinguishable from integers on re-read
    if "." not in r and "e" not in r and "inf" not in r and "nan" not in r:
        r += ".0"
    return r


def exact_string(x: Number) -> str | None:
    if is_rational(x):
        return format_number(x)
    return None


def to_float(x: Number) -> float:
    return float(x)


def isclose(a: Number, b: Number, tol: float = 1e-9) -> bool:
    if is_rational(a) and is_rational(b):
        return a == b
    return math.isclose(float(a), float(b), rel_tol=tol, abs_tol=tol)
