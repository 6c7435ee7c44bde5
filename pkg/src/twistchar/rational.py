"""Strict parsing and canonical rendering of exact rationals.

All external surfaces (CLI flags, JSON payloads) exchange rationals as
strings of the form "p", "-p" or "p/q" with q > 0.  Floating point input
is rejected everywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))$|^(-?\d+)$")


class RationalFormatError(ValueError):
    """Raised when a rational literal does not match p, -p or p/q."""


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise RationalFormatError(f"not a rational literal: {text!r}")
    if m.group(3) is not None:
        return Fraction(int(m.group(3)))
    num, den = int(m.group(1)), int(m.group(2))
    if den == 0:
        raise RationalFormatError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
