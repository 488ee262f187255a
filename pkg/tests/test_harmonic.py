import math
from fractions import Fraction

import numpy as np
import pytest

from floorsums import harmonic
from floorsums.harmonic import SineSumSpec

RNG_SEED = 20260810


def test_sin_pi_rational_exact_points():
    assert harmonic.sin_pi_rational(Fraction(0)) == 0.0
    assert harmonic.sin_pi_rational(Fraction(1)) == 0.0
    assert harmonic.sin_pi_rational(Fraction(1, 2)) == 1.0
    assert harmonic.sin_pi_rational(Fraction(3, 2)) == -1.0
    assert harmonic.sin_pi_rational(Fraction(-7, 2)) == 1.0
    assert harmonic.sin_pi_rational(Fraction(10**9)) == 0.0


def test_sin_pi_rational_matches_libm_off_grid():
    for r in (Fraction(1, 3), Fraction(2, 7), Fraction(-5, 11), Fraction(97, 13)):
        assert harmonic.sin_pi_rational(r) == pytest.approx(
            math.sin(math.pi * float(r)), abs=1e-14
        )


# ---------------------------------------------------------------------------
# sawtooth partial sums
# ---------------------------------------------------------------------------


def test_sawtooth_half_integer_is_zero():
    # every term sin(pi*j) reduces exactly; measured |value| ~ 1.6e-16
    assert abs(harmonic.sawtooth_partial_sum(0.5, 1000)) < 1e-12


def test_sawtooth_integer_midpoint():
    # integer arguments reduce to exact zeros, leaving x - 1/2 exactly
    assert harmonic.sawtooth_partial_sum(3, 500) == pytest.approx(2.5, abs=1e-9)
    for n in range(-20, 21):
        assert abs(harmonic.sawtooth_partial_sum(n, 250) - (n - 0.5)) < 1e-12


def test_sawtooth_quarter_convergence():
    # tolerance 0.01 at J=1000; measured error 1.6e-4
    assert abs(harmonic.sawtooth_partial_sum(0.25, 1000) - 0.0) < 0.01


def test_sawtooth_validates_terms():
    with pytest.raises(ValueError):
        harmonic.sawtooth_partial_sum(0.25, 0)


def test_floor_approx_error_examples():
    assert harmonic.floor_approx_error(0.5, 10) < 1e-12
    assert harmonic.floor_approx_error(0.25, 1000) <= 0.01
    # deeper truncation is strictly better here; measured 1.6e-4 -> 1.6e-5
    assert harmonic.floor_approx_error(0.25, 10000) < harmonic.floor_approx_error(0.25, 1000)


def test_floor_approx_error_rejects_integers():
    with pytest.raises(ValueError, match="discontinuity"):
        harmonic.floor_approx_error(3.0, 100)


def test_windowed_convergence_and_symmetry():
    xs = [x for x in np.arange(-2.0, 2.0, 0.05) if min(x % 1.0, 1.0 - x % 1.0) >= 0.05]
    e3 = [harmonic.floor_approx_error(x, 1000) for x in xs]
    e4 = [harmonic.floor_approx_error(x, 10000) for x in xs]
    # averaged over any 10-point window the deeper truncation never loses
    for i in range(len(xs) - 9):
        assert np.mean(e4[i : i + 10]) <= np.mean(e3[i : i + 10])
    # 1-periodicity up to the linear term; measured worst 3.3e-13
    for x in xs[::7]:
        for terms in (10, 1000):
            lhs = harmonic.sawtooth_partial_sum(x + 1, terms)
            rhs = harmonic.sawtooth_partial_sum(x, terms) + 1
            assert abs(lhs - rhs) < 1e-10


# ---------------------------------------------------------------------------
# sine sums
# ---------------------------------------------------------------------------


def test_sine_sum_direct_examples():
    assert abs(harmonic.sine_sum_direct(SineSumSpec(0.0, math.pi / 2, 3))) < 1e-14
    full = SineSumSpec(math.pi / 2, 2 * math.pi, 4)
    assert harmonic.sine_sum_direct(full) == pytest.approx(5.0, abs=1e-9)
    third = SineSumSpec(0.0, 2 * math.pi / 3, 2)
    assert abs(harmonic.sine_sum_direct(third)) < 1e-14


def test_sine_sum_closed_examples():
    assert abs(harmonic.sine_sum_closed(SineSumSpec(0.0, math.pi / 2, 3))) < 1e-14
    degenerate = SineSumSpec.from_pi_multiples(Fraction(1, 2), 2, 4)
    assert harmonic.sine_sum_closed(degenerate) == 5.0
    spec = SineSumSpec(1.0, 0.7, 50)
    diff = abs(harmonic.sine_sum_closed(spec) - harmonic.sine_sum_direct(spec))
    assert diff <= 1e-9 * 51


def test_sine_sum_closed_matches_direct_randomized():
    # tolerance 1e-9*(p+1); measured worst 5.8e-15 per term over 10^4 specs
    rng = np.random.default_rng(RNG_SEED)
    done = 0
    while done < 1500:
        z = rng.uniform(-math.pi, math.pi)
        a = rng.uniform(-4.0, 4.0)
        if abs(math.sin(0.5 * a)) < 1e-3:
            continue
        p = int(rng.integers(0, 201))
        spec = SineSumSpec(z, a, p)
        diff = abs(harmonic.sine_sum_closed(spec) - harmonic.sine_sum_direct(spec))
        assert diff <= 1e-9 * (p + 1)
        done += 1


def test_sine_sum_degenerate_branch_is_exact_formula():
    rng = np.random.default_rng(RNG_SEED + 1)
    for _ in range(50):
        z = float(rng.uniform(-3, 3))
        p = int(rng.integers(0, 100))
        q = int(rng.integers(-6, 7))
        spec = SineSumSpec(z, 2 * math.pi * q, p, a_pi=Fraction(2 * q))
        assert harmonic.sine_sum_closed(spec) == (p + 1) * math.sin(z)


def test_sine_sum_float_threshold_fallback():
    # no exact fields: |sin(a/2)| < 1e-12 routes to the degenerate branch
    spec = SineSumSpec(0.3, 2 * math.pi, 9)
    assert harmonic.sine_sum_closed(spec) == 10 * math.sin(0.3)


def test_sine_spec_validates_p():
    with pytest.raises(ValueError):
        SineSumSpec(0.0, 1.0, -1)


# ---------------------------------------------------------------------------
# grouped sums over one period
# ---------------------------------------------------------------------------


def test_grouped_examples():
    x = Fraction(5, 2)
    assert harmonic.grouped_sine_sum(6, 4, x, 1) == 0.0
    assert abs(harmonic.grouped_sine_sum_direct(6, 4, x, 1)) <= 1e-8 * 6
    assert harmonic.grouped_sine_sum(6, 4, x, 3) == 6.0  # 6*sin(5*pi/2)
    assert harmonic.grouped_sine_sum_direct(6, 4, x, 3) == pytest.approx(6.0, abs=1e-8 * 6)
    # m=1 reduces to a single sine
    assert harmonic.grouped_sine_sum(1, 0, 0.3, 7) == pytest.approx(
        math.sin(2 * math.pi * 7 * 0.3), abs=1e-12
    )


def test_grouped_validates_arguments():
    with pytest.raises(ValueError):
        harmonic.grouped_sine_sum(0, 1, Fraction(1), 1)
    with pytest.raises(ValueError):
        harmonic.grouped_sine_sum(3, 1, Fraction(1), 0)


def test_grouped_vanishing_and_surviving_randomized():
    # tolerances 1e-8*m; measured worst 1.7e-12 (vanishing), 5.3e-12 (grouping)
    rng = np.random.default_rng(RNG_SEED + 2)
    from floorsums import decompose

    for _ in range(800):
        m = int(rng.integers(1, 65))
        n = int(rng.integers(-64, 65))
        x = float(rng.uniform(-4, 4))
        j = int(rng.integers(1, 257))
        d, m_p, _ = decompose(m, n)
        direct = harmonic.grouped_sine_sum_direct(m, n, x, j)
        closed = harmonic.grouped_sine_sum(m, n, x, j)
        if j % m_p:
            assert closed == 0.0
            assert abs(direct) <= 1e-8 * m
        else:
            ell = j // m_p
            expected = m * harmonic.sin_pi_rational(2 * ell * Fraction(x) / d)
            assert closed == expected
            assert abs(direct - closed) <= 1e-8 * m


# ---------------------------------------------------------------------------
# series identity residual
# ---------------------------------------------------------------------------


def test_residual_non_hit_example():
    # tolerance 0.02 at j-depth 3e4 (l-depth 1e4); measured 3.2e-5
    assert harmonic.series_identity_residual(6, 4, Fraction(5, 2), 30000) <= 0.02


def test_residual_hit_case_exact_at_any_depth():
    # x/d integral kills every surviving mode exactly; measured 0.0
    for terms in (1, 10, 100, 5000):
        assert harmonic.series_identity_residual(2, 2, 4, terms) <= 1e-9
    assert harmonic.series_identity_residual(6, 4, 2, 300) <= 1e-9


def test_residual_m1_reduces_to_sawtooth():
    assert harmonic.series_identity_residual(1, 1, Fraction(1, 2), 1000) <= 0.01


def test_residual_guard_near_discontinuity():
    with pytest.raises(ValueError, match="1/1000"):
        harmonic.series_identity_residual(1, 1, Fraction(1, 2000), 100)


def test_residual_validates_terms():
    with pytest.raises(ValueError):
        harmonic.series_identity_residual(6, 4, Fraction(5, 2), 0)
