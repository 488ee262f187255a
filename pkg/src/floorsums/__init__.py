"""Exact closed-form evaluation of periodic floor sums, with verification tools."""

from .exact import (
    Rational,
    floor_div,
    format_rational,
    fractional_part,
    gcd,
    parse_rational,
    rational_floor,
    rational_normalize,
)
from .floorsum import (
    Counterexample,
    FloorSumInstance,
    GcdDecomposition,
    VerifyReport,
    brute_force_sum,
    closed_form_sum,
    decompose,
    hermite_sum,
    list_integer_hits,
    scan_integer_hits,
    verify_range,
)
from .harmonic import (
    SineSumSpec,
    floor_approx_error,
    grouped_sine_sum,
    grouped_sine_sum_direct,
    sawtooth_partial_sum,
    series_identity_residual,
    sin_pi_rational,
    sine_sum_closed,
    sine_sum_direct,
)

__version__ = "0.1.0"

__all__ = [
    "Rational",
    "rational_normalize",
    "rational_floor",
    "fractional_part",
    "floor_div",
    "gcd",
    "parse_rational",
    "format_rational",
    "GcdDecomposition",
    "FloorSumInstance",
    "Counterexample",
    "VerifyReport",
    "decompose",
    "closed_form_sum",
    "brute_force_sum",
    "hermite_sum",
    "list_integer_hits",
    "scan_integer_hits",
    "verify_range",
    "SineSumSpec",
    "sawtooth_partial_sum",
    "floor_approx_error",
    "sine_sum_direct",
    "sine_sum_closed",
    "grouped_sine_sum",
    "grouped_sine_sum_direct",
    "series_identity_residual",
    "sin_pi_rational",
    "__version__",
]
