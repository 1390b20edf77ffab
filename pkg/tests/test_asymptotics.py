import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from frozenasm.asm_enum import asm_count
from frozenasm.asymptotics import (
    TW_SCALE,
    Y_CRITICAL,
    PrecisionConfig,
    arctic_point,
    boundary_cdf,
    boundary_cdf_estimate,
    airy_ai,
    airy_ai_prime,
    ellipse_residual,
    refined_ratios,
    scaled_s,
    tw_convergence_probe,
    tw_f2,
)
from frozenasm.asm_enum import refined_count
from frozenasm.golden import golden_value


def f2_reference(sigma, m=60, length=16, dps=30):
    """F2 by Gauss-Legendre on the truncated interval [sigma, sigma + length], mpmath Airy."""
    with mpmath.workdps(dps):
        t, w = np.polynomial.legendre.leggauss(m)
        xs = [mpmath.mpf(sigma) + length * (mpmath.mpf(ti) + 1) / 2 for ti in t]
        ws = [mpmath.mpf(length) / 2 * mpmath.mpf(wi) for wi in w]
        ai = [mpmath.airyai(x) for x in xs]
        aip = [mpmath.airyai(x, 1) for x in xs]
        mat = mpmath.matrix(m, m)
        for i in range(m):
            for j in range(m):
                if i == j:
                    k = aip[i] ** 2 - xs[i] * ai[i] ** 2
                else:
                    k = (ai[i] * aip[j] - aip[i] * ai[j]) / (xs[i] - xs[j])
                mat[i, j] = (i == j) - mpmath.sqrt(ws[i] * ws[j]) * k
        return float(mpmath.det(mat))


# --- arctic curve


def test_arctic_endpoints():
    p = arctic_point(1.0)
    assert (p.x, p.y) == pytest.approx((0.5, 0.0), abs=1e-15)
    far = arctic_point(1e12)
    assert (far.x, far.y) == pytest.approx((0.0, 0.5), abs=1e-6)
    assert (arctic_point(math.inf).x, arctic_point(math.inf).y) == (0.0, 0.5)


def test_arctic_domain():
    with pytest.raises(ValueError):
        arctic_point(0.5)


def test_ellipse_residual_examples():
    assert ellipse_residual(0.5, 0.0) == 0
    assert ellipse_residual(0.0, 0.5) == 0


def test_arctic_on_ellipse():
    for omega in np.logspace(0, 6, 100):
        p = arctic_point(float(omega))
        assert abs(ellipse_residual(p.x, p.y)) < 1e-12


def test_diagonal_crossing():
    # x = y happens at omega = 2
    p = arctic_point(2.0)
    assert p.x == pytest.approx(p.y, abs=1e-15)
    assert p.x == pytest.approx(Y_CRITICAL, abs=1e-12)
    # and solves 4x^2 - 8x + 1 = 0
    assert 4 * p.x**2 - 8 * p.x + 1 == pytest.approx(0, abs=1e-12)


# --- Airy


def test_airy_at_zero():
    exact = 3 ** (-2 / 3) / math.gamma(2 / 3)
    assert airy_ai(0.0) == pytest.approx(exact, rel=1e-15)
    assert airy_ai(0.0) == pytest.approx(0.3550280538878172, rel=1e-15)
    # integral representation (1/pi) int_0^inf cos(t^3/3) dt
    quad = mpmath.quadosc(lambda t: mpmath.cos(t**3 / 3), [0, mpmath.inf], zeros=lambda k: mpmath.cbrt(3 * mpmath.pi * k)) / mpmath.pi
    assert airy_ai(0.0) == pytest.approx(float(quad), rel=1e-12)


def test_airy_small_series_points():
    # the switch point moves but values do not
    for x in (-9.2, 9.0, 9.7):
        assert airy_ai(x, PrecisionConfig(airy_switch=8.5)) == pytest.approx(airy_ai(x), rel=1e-13)


@pytest.mark.parametrize("x", np.linspace(-10, 10, 81))
def test_airy_relative_accuracy(x):
    ref = float(mpmath.airyai(x))
    refp = float(mpmath.airyai(x, 1))
    # relative where the value is not a near-zero of Ai
    assert abs(airy_ai(x) - ref) <= 1e-13 * abs(ref) + 1e-16
    assert abs(airy_ai_prime(x) - refp) <= 1e-13 * abs(refp) + 1e-16


@pytest.mark.parametrize("x", [10.01, 12.0, 20.0, 50.0, 200.0])
def test_airy_right_tail_absolute(x):
    assert abs(airy_ai(x) - float(mpmath.airyai(x))) < 1e-15


def test_airy_decay_at_ten():
    v = airy_ai(10.0)
    assert 0 < v < 1e-9


@pytest.mark.parametrize("x", [-2.0, 0.0, 2.0])
def test_airy_ode(x):
    # sixth-order central second difference
    h = 1e-2
    weights = (1 / 90, -3 / 20, 3 / 2, -49 / 18, 3 / 2, -3 / 20, 1 / 90)
    d2 = sum(w * airy_ai(x + (k - 3) * h) for k, w in enumerate(weights)) / h**2
    assert abs(d2 - x * airy_ai(x)) < 1e-10


# --- Tracy-Widom


def test_f2_right_edge():
    assert tw_f2(8.0) == pytest.approx(1.0, abs=1e-10)


def test_f2_left_edge():
    assert tw_f2(-8.0) < 1e-6


@pytest.mark.parametrize("sigma", [-3.0, -1.0, 0.0, 2.0])
def test_f2_against_reference(sigma):
    assert tw_f2(sigma) == pytest.approx(f2_reference(sigma), abs=1e-12)


def test_f2_tail_against_reference():
    # the tail value is what the leading asymptotic is later compared against
    assert 1 - tw_f2(5.0) == pytest.approx(1 - f2_reference(5.0), rel=1e-4)


def test_f2_known_values():
    assert tw_f2(0.0) == pytest.approx(0.969372828355, abs=1e-11)
    assert tw_f2(-2.0) == pytest.approx(0.413224142505, abs=1e-11)


# --- boundary CDF


def test_refined_ratios():
    ctx = mpmath.MPContext()
    ctx.prec = 200
    for m in (1, 2, 7, 25):
        got = refined_ratios(m, ctx)
        for p in range(1, m + 1):
            exact = Fraction(refined_count(m, p), asm_count(m))
            assert abs(got[p - 1] - ctx.mpf(exact.numerator) / exact.denominator) < ctx.mpf(2) ** -190


def test_cdf_examples():
    assert boundary_cdf(10, 3) == pytest.approx(32490142348 / 129534272700, abs=1e-10)
    for n in (7, 12, 21):
        for s in range(n // 2 + 1, n + 1, 2):
            assert boundary_cdf(n, s) == pytest.approx(0.0, abs=1e-10)
    ratio = Fraction(881410992082437335865516641683862633616426168, asm_count(20))
    assert boundary_cdf(20, 4) == pytest.approx(float(ratio), abs=1e-10)


def test_cdf_matches_exact_ratio_small():
    for n in range(2, 15):
        for s in range(1, n + 1):
            exact = Fraction(golden_value(n, s), asm_count(n))
            assert abs(boundary_cdf(n, s) - float(exact)) < 1e-10


def test_float_path_matches_exact_path():
    for n in (15, 22, 30, 40):
        for s in range(1, n // 2 + 2, 3):
            f = boundary_cdf(n, s)
            e = boundary_cdf(n, s, method="exact")
            assert abs(f - e) < 1e-12


def test_cdf_monotone_in_s():
    # beyond floor(n/2) + 1 the values vanish identically (checked above)
    for n in range(1, 41, 3):
        vals = [boundary_cdf(n, s) for s in range(1, min(n, n // 2 + 1) + 1)]
        assert all(0 <= v <= 1 for v in vals)
        assert all(a >= b - 1e-15 for a, b in zip(vals, vals[1:]))


def test_error_estimate_bounds_further_doubling():
    est = boundary_cdf_estimate(30, 8)
    finer = boundary_cdf_estimate(30, 8, PrecisionConfig(bits=est.bits * 2))
    assert abs(finer.value - est.value) <= max(est.error, 1e-16)


def test_precision_error_raised():
    from frozenasm.asymptotics import PrecisionError
    with pytest.raises(PrecisionError):
        boundary_cdf_estimate(40, 10, PrecisionConfig(bits=8, tol=1e-300, max_doublings=1))


def test_cdf_domain():
    with pytest.raises(ValueError):
        boundary_cdf(5, 0)


# --- probe


def test_scaled_s():
    assert scaled_s(100, 0.0) == 13 == math.floor(100 * (1 - math.sqrt(3) / 2))
    assert TW_SCALE == pytest.approx(2 ** (4 / 3) * 3 ** (1 / 6))


def test_probe_records():
    probes = tw_convergence_probe([20, 40], 0.0)
    assert [p.s_scaled for p in probes] == [scaled_s(20, 0.0), scaled_s(40, 0.0)]
    for p in probes:
        assert 0 <= p.p_boundary <= 1
        assert p.f2 == pytest.approx(tw_f2(0.0))
        assert p.gap == abs(p.p_boundary - p.f2)


def test_probe_too_small():
    with pytest.raises(ValueError):
        tw_convergence_probe([2], 3.0)
