"""Exact integer and rational arithmetic primitives.

Rational values are ``fractions.Fraction`` instances: always fully reduced,
denominator positive, zero stored as 0/1.  Floats are deliberately rejected
everywhere in this module; the floor function is discontinuous exactly at
the points where binary rounding is ambiguous, so callers must commit to a
rational value before entering the exact pipeline.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

Rational = Fraction

_TOKEN_RE = re.compile(r"([+-]?\d+)(?:/(\d+))?\Z")


def rational_normalize(num: int, den: int) -> Fraction:
    """Reduced fraction num/den with positive denominator."""
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    return Fraction(num, den)


def as_rational(value) -> Fraction:
    """Coerce int, Fraction or text token to Fraction; floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(
        f"exact arithmetic accepts int, Fraction or 'p/q' text, not {type(value).__name__}"
    )


def rational_floor(r) -> int:
    """Greatest integer <= r (floor semantics, never truncation)."""
    r = as_rational(r)
    return r.numerator // r.denominator


def fractional_part(r) -> Fraction:
    """r - floor(r), always in [0, 1)."""
    r = as_rational(r)
    return r - rational_floor(r)


def floor_div(a: int, b: int) -> int:
    """floor(a/b) for all sign combinations."""
    if b == 0:
        raise ZeroDivisionError("division by zero")
    return a // b


def gcd(a: int, b: int) -> int:
    """Non-negative greatest common divisor; gcd(a, 0) = |a|."""
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


def parse_rational(token: str) -> Fraction:
    """Parse 'p', 'p/q' or '-p/q' (no whitespace, q > 0) into a Fraction."""
    match = _TOKEN_RE.match(token)
    if match is None:
        raise ValueError(f"malformed rational token {token!r}")
    num = int(match.group(1))
    den = 1 if match.group(2) is None else int(match.group(2))
    if den == 0:
        raise ValueError(f"zero denominator in rational token {token!r}")
    return Fraction(num, den)


def format_rational(r) -> str:
    """Inverse of parse_rational: 'p' for integers, 'p/q' otherwise."""
    r = as_rational(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"
