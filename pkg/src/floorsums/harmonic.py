"""Floating-point checks of the trigonometric side of the floor-sum identity.

The floor function has the sine expansion

    floor(x) = x - 1/2 + (1/pi) * sum_{j>=1} sin(2*pi*j*x)/j     (x not integer)

whose truncations are evaluated here, together with the closed form for
sum_{k=0}^{p} sin(z + a*k) and the "grouped" sums over one period of the
floor-sum argument, which vanish except when j is a multiple of m' = m/d.

Angles that are exact rational multiples of pi are reduced in exact rational
arithmetic before ever touching a float, so analytic zeros come out as exact
0.0 rather than round-off dust.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import as_rational
from .floorsum import closed_form_sum, decompose, list_integer_hits

_CHUNK = 1 << 20

# float threshold for calling a ~ 0 (mod 2*pi) when no exact form is given
_SINGULAR_EPS = 1e-12

# minimum distance of x/d from the integers for the truncated series to be
# meaningful at desk-scale depths
_RESIDUAL_GUARD = Fraction(1, 1000)


def sin_pi_rational(r) -> float:
    """sin(pi * r) for rational r: exact zeros and +-1, quadrant-reduced floats."""
    r = as_rational(r)
    t = r - 2 * (r.numerator // (2 * r.denominator))  # r mod 2, in [0, 2)
    sign = 1.0
    if t >= 1:
        t -= 1
        sign = -1.0
    if 2 * t > 1:
        t = 1 - t
    if 2 * t == 1:
        return sign
    return sign * math.sin(math.pi * float(t))  # argument within [0, pi/2)


def sawtooth_partial_sum(x: float, terms: int) -> float:
    """x - 1/2 + (1/pi) * sum_{j=1}^{terms} sin(2*pi*j*x)/j.

    Each argument is reduced mod 1 before the sine, so integer x yields the
    midpoint x - 1/2 exactly.  Summation is numpy-pairwise inside fixed-size
    blocks with an exactly-rounded combine across blocks, deterministically.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    x = float(x)
    blocks = []
    for lo in range(1, terms + 1, _CHUNK):
        j = np.arange(lo, min(lo + _CHUNK, terms + 1), dtype=np.float64)
        frac = np.mod(j * x, 1.0)
        blocks.append(float((np.sin((2.0 * np.pi) * frac) / j).sum()))
    return x - 0.5 + math.fsum(blocks) / math.pi


def floor_approx_error(x: float, terms: int) -> float:
    """|sawtooth_partial_sum(x, terms) - floor(x)| for non-integer x."""
    x = float(x)
    if x == math.floor(x):
        raise ValueError("discontinuity point: x is an integer")
    return abs(sawtooth_partial_sum(x, terms) - math.floor(x))


@dataclass(frozen=True)
class SineSumSpec:
    """sum_{k=0}^{p} sin(z + a*k).

    z_pi and a_pi, when set, mean z = z_pi*pi and a = a_pi*pi exactly; they
    take precedence over the floats wherever singularity must be decided.
    """

    z: float
    a: float
    p: int
    z_pi: Fraction | None = None
    a_pi: Fraction | None = None

    def __post_init__(self):
        if self.p < 0:
            raise ValueError("p must be >= 0")

    @classmethod
    def from_pi_multiples(cls, z_pi, a_pi, p: int) -> "SineSumSpec":
        z_pi = as_rational(z_pi)
        a_pi = as_rational(a_pi)
        return cls(float(z_pi) * math.pi, float(a_pi) * math.pi, p, z_pi, a_pi)


def sine_sum_direct(spec: SineSumSpec) -> float:
    """Term-by-term accumulation; the oracle for sine_sum_closed."""
    k = np.arange(spec.p + 1, dtype=np.float64)
    return float(np.sin(spec.z + spec.a * k).sum())


def _sin_z(spec: SineSumSpec) -> float:
    return sin_pi_rational(spec.z_pi) if spec.z_pi is not None else math.sin(spec.z)


def _a_is_two_pi_multiple(spec: SineSumSpec) -> bool:
    if spec.a_pi is not None:
        return spec.a_pi.denominator == 1 and spec.a_pi.numerator % 2 == 0
    return abs(math.sin(0.5 * spec.a)) < _SINGULAR_EPS


def sine_sum_closed(spec: SineSumSpec) -> float:
    """csc(a/2) * sin(a*(p+1)/2) * sin(z + a*p/2).

    The formula is singular when a is a multiple of 2*pi; there every term
    equals sin(z) and the sum degenerates to (p+1)*sin(z).
    """
    p = spec.p
    if _a_is_two_pi_multiple(spec):
        return (p + 1) * _sin_z(spec)
    if spec.a_pi is not None:
        half_a = spec.a_pi / 2
        num1 = sin_pi_rational(half_a * (p + 1))
        den = sin_pi_rational(half_a)
        if spec.z_pi is not None:
            num2 = sin_pi_rational(spec.z_pi + half_a * p)
        else:
            num2 = math.sin(spec.z + 0.5 * spec.a * p)
        return num1 * num2 / den
    half = 0.5 * spec.a
    return math.sin(half * (p + 1)) * math.sin(spec.z + half * p) / math.sin(half)


def grouped_sine_sum(m: int, n: int, x, j: int) -> float:
    """sum_{k=0}^{m-1} sin(2*pi*j*(x + n*k)/m), closed form.

    Zero unless m' | j; for j = l*m' every term collapses to sin(2*pi*l*x/d),
    so the sum is m * sin(2*pi*l*x/d).  x may be rational or float (floats
    are taken at their exact binary value).
    """
    if m < 1:
        raise ValueError("m must be positive")
    if j < 1:
        raise ValueError("j must be positive")
    d, m_p, _ = decompose(m, n)
    if j % m_p != 0:
        return 0.0
    ell = j // m_p
    return m * sin_pi_rational(2 * ell * Fraction(x) / d)


def grouped_sine_sum_direct(m: int, n: int, x, j: int) -> float:
    """Direct m-term accumulation of the grouped sum; oracle for the above."""
    if m < 1:
        raise ValueError("m must be positive")
    k = np.arange(m, dtype=np.float64)
    return float(np.sin((2.0 * np.pi * j / m) * (float(x) + n * k)).sum())


def series_identity_residual(m: int, n: int, x, terms: int) -> float:
    """Gap between the truncated sine-series form of S(m, n, x) and its closed form.

    Evaluates R = x + (m-1)*n/2 - m/2 + (1/pi) * sum_{j<=terms} g(j)/j where
    g is the grouped sine sum, keeping only the surviving modes j = l*m'
    (all others are identically zero), then returns |R - S|.  When the hit
    set is nonempty the series vanishes termwise and R is off by exactly the
    d midpoint corrections, so d/2 is added before comparing.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    x = as_rational(x)
    d, m_p, _ = decompose(m, n)
    hits = list_integer_hits(m, n, x)
    y = x / d
    if not hits:
        frac = y - (y.numerator // y.denominator)
        if min(frac, 1 - frac) < _RESIDUAL_GUARD:
            raise ValueError(
                "x/d closer to an integer than 1/1000; truncated series is unreliable"
            )
    depth = terms // m_p
    series = 0.0
    if depth >= 1:
        num, den = y.numerator, y.denominator
        blocks = []
        if depth * abs(num) < 1 << 60 and den < 1 << 60:
            for lo in range(1, depth + 1, _CHUNK):
                ell = np.arange(lo, min(lo + _CHUNK, depth + 1), dtype=np.int64)
                frac = (ell * num) % den
                blocks.append(float((np.sin(2.0 * np.pi * (frac / den)) / ell).sum()))
        else:
            blocks.append(
                math.fsum(sin_pi_rational(2 * ell * y) / ell for ell in range(1, depth + 1))
            )
        series = d * math.fsum(blocks) / math.pi
    r = float(x) + (m - 1) * n / 2.0 - m / 2.0 + series
    if hits:
        r += d / 2.0
    return abs(r - closed_form_sum(m, n, x))
