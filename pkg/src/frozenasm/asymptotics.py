"""Large-n numerics: arctic curve, boundary CDF, Airy functions, GUE Tracy-Widom.

The boundary CDF P_n(xi > s) = det(1 - M) is evaluated in multiprecision
floating point. Refined-count ratios A_{m,p}/A_m are built by telescoping
products, so no factorial is ever materialized. F_2 is the Fredholm
determinant of the Airy kernel on (sigma, inf), discretized by Gauss-Legendre
nodes pulled back from (0, 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import mpmath
import numpy as np

from .asm_enum import asm_count
from .conjecture import conjecture_det
from .numkit import binomial

__all__ = [
    "PrecisionError",
    "ConvergenceError",
    "ArcticPoint",
    "arctic_point",
    "ellipse_residual",
    "Y_CRITICAL",
    "PrecisionConfig",
    "CdfEstimate",
    "refined_ratios",
    "boundary_cdf",
    "boundary_cdf_estimate",
    "airy_ai",
    "airy_ai_prime",
    "tw_f2",
    "tw_f2_nystrom",
    "TW_SCALE",
    "scaled_s",
    "TwProbe",
    "tw_convergence_probe",
]

Y_CRITICAL = 1.0 - math.sqrt(3.0) / 2.0
TW_SCALE = 2.0 ** (4.0 / 3.0) * 3.0 ** (1.0 / 6.0)


class PrecisionError(ArithmeticError):
    """Estimates at successive precisions do not agree."""


class ConvergenceError(ArithmeticError):
    """Quadrature estimates at successive node counts do not agree."""


# --- arctic curve -----------------------------------------------------------


@dataclass(frozen=True)
class ArcticPoint:
    omega: float
    x: float
    y: float


def arctic_point(omega: float) -> ArcticPoint:
    """Point of the top-left arctic arc at parameter ``omega >= 1``.

    ``omega = inf`` gives the tangency point (0, 1/2).
    """
    if not omega >= 1:
        raise ValueError(f"omega must be >= 1, got {omega}")
    if math.isinf(omega):
        return ArcticPoint(omega, 0.0, 0.5)
    r = 2.0 * math.sqrt(omega * omega - omega + 1.0)
    return ArcticPoint(omega, 1.0 - (2.0 * omega - 1.0) / r, 1.0 - (omega + 1.0) / r)


def ellipse_residual(x: float, y: float) -> float:
    return 4 * x * x + 4 * y * y - 4 * x * y - 4 * x - 4 * y + 1


# --- boundary distribution --------------------------------------------------


@dataclass(frozen=True)
class PrecisionConfig:
    """Knobs for the floating-point evaluations.

    ``bits=None`` picks ``ceil(3.3 * digits(A_n))`` significand bits for the
    boundary CDF. ``tol`` is the accepted disagreement between successive
    precisions (or node counts); ``max_doublings`` bounds the retries.
    """

    bits: int | None = None
    nodes: tuple[int, ...] = (32, 64, 128)
    airy_switch: float = 10.0
    tol: float = 1e-12
    tw_tol: float = 1e-10
    max_doublings: int = 3

    def cdf_bits(self, n: int) -> int:
        if self.bits is not None:
            return self.bits
        digits = math.floor((asm_count(n).bit_length() - 1) * math.log10(2)) + 1
        return max(64, math.ceil(3.3 * digits))


@dataclass(frozen=True)
class CdfEstimate:
    n: int
    s: int
    value: float
    error: float
    bits: int

    def __float__(self) -> float:
        return self.value


def refined_ratios(m: int, ctx) -> list:
    """``[A_{m,p} / A_m for p = 1..m]`` in the precision of ``ctx``."""
    out = [1 / _growth(m, ctx)]
    for p in range(1, m):
        out.append(out[-1] * (m - p) * (m + p - 1) / (p * (2 * m - p - 1)))
    return out


def _growth(m: int, ctx):
    """A_m / A_{m-1} = prod_{k=2m}^{3m-2} k / prod_{k=m}^{2m-2} k."""
    g = ctx.mpf(1)
    for k in range(2 * m, 3 * m - 1):
        g *= k
    for k in range(m, 2 * m - 1):
        g /= k
    return g


def _float_matrix(n: int, s: int, ctx):
    """M in floating point, entries from the decoupled quadruple sum."""
    ratios = {}

    def ratio(m):
        if m not in ratios:
            ratios[m] = refined_ratios(m, ctx)
        return ratios[m]

    left = {}
    right = {}
    for i in range(1, s + 1):
        a = n - s + i
        ra = ratio(a)
        sg = (-1) ** i
        for d in range(2 * s + 1):
            acc = ctx.mpf(0)
            for p in range(1, a + 1):
                top = i - d - p
                br = _b(i - 1, top) - sg * _b(i - 1, top - 1)
                if br:
                    acc += (-1) ** p * br * ra[p - 1]
            left[i, d] = acc
        b = n - s + i
        rb = ratio(b)
        for l in range(i + 1):
            acc = ctx.mpf(0)
            for q in range(1, b + 1):
                top = i - l - q
                br = _b(i - 1, top) + sg * _b(i - 1, top - 1)
                if br:
                    acc += (-1) ** q * br * rb[q - 1]
            right[i, l] = acc
    mat = ctx.matrix(s, s)
    for i in range(1, s + 1):
        for j in range(1, s + 1):
            total = ctx.mpf(0)
            for k in range(i + j + 1):
                sgn = (-1) ** (i + j - k)
                for l in range(min(k, j) + 1):
                    total += sgn * binomial(k, l) * left[i, k - l] * right[j, l]
            # 1/(A_a A_{b-1}) * A_{a,p} A_{b,q} = ratio_a(p) ratio_b(q) * A_b / A_{b-1}
            mat[i - 1, j - 1] = total * _growth(n - s + j, ctx)
    return mat


def _b(a: int, b: int) -> int:
    return binomial(a, b) if a >= 0 else 0


def _det_one_minus(n: int, s: int, bits: int):
    ctx = mpmath.MPContext()
    ctx.prec = bits
    m = _float_matrix(n, s, ctx)
    return ctx.det(ctx.eye(s) - m)


def boundary_cdf_estimate(
    n: int, s: int, cfg: PrecisionConfig | None = None, method: str = "float"
) -> CdfEstimate:
    """P_n(xi > s) = det(1 - M) with an error estimate.

    ``method='float'`` evaluates at the configured precision and at twice that,
    doubling again while the two disagree by more than ``cfg.tol``.
    ``method='exact'`` forms det(1 - M) as an exact rational and rounds it.
    """
    cfg = cfg or PrecisionConfig()
    if n < 1 or not 1 <= s <= n:
        raise ValueError(f"need 1 <= s <= n, got n={n}, s={s}")
    if method == "exact":
        v = conjecture_det(n, s)
        return CdfEstimate(n, s, _clamp(float(v)), 0.0, 0)
    if method != "float":
        raise ValueError(f"unknown method {method!r}")
    bits = cfg.cdf_bits(n)
    prev = _det_one_minus(n, s, bits)
    for _ in range(cfg.max_doublings):
        bits *= 2
        cur = _det_one_minus(n, s, bits)
        err = float(abs(cur - prev))
        if err <= cfg.tol:
            return CdfEstimate(n, s, _clamp(float(cur)), err, bits)
        prev = cur
    raise PrecisionError(
        f"det(1-M) for n={n}, s={s} still moves by {err:.3e} at {bits} bits; "
        "raise PrecisionConfig.bits"
    )


def boundary_cdf(n: int, s: int, cfg: PrecisionConfig | None = None, method: str = "float") -> float:
    return boundary_cdf_estimate(n, s, cfg, method).value


def _clamp(v: float) -> float:
    return min(1.0, max(0.0, v))


# --- Airy function ----------------------------------------------------------

_AI0 = 0.35502805388781723926
_AIP0 = -0.25881940379280679840


def _airy_series(x: float) -> tuple[float, float]:
    # Maclaurin series; terms reach ~exp(2/3 |x|^1.5) before cancelling, so
    # the sum is carried with that many extra bits.
    extra = int(2.0 * abs(x) ** 1.5 / math.log(2)) + 40
    ctx = mpmath.MPContext()
    ctx.prec = 53 + extra
    xm = ctx.mpf(x)
    x3 = xm**3
    c1 = 1 / (ctx.cbrt(9) * ctx.gamma(ctx.mpf(2) / 3))
    c2 = 1 / (ctx.cbrt(3) * ctx.gamma(ctx.mpf(1) / 3))
    f = t = ctx.mpf(1)
    g = u = xm
    fp = ctx.mpf(0)
    a = xm * xm / 2
    gp = bq = ctx.mpf(1)
    eps = ctx.ldexp(1, -ctx.prec)
    k = 1
    while True:
        if k > 1:
            a = a * x3 / ((3 * k - 3) * (3 * k - 1))
        t = t * x3 / ((3 * k - 1) * (3 * k))
        u = u * x3 / ((3 * k) * (3 * k + 1))
        bq = bq * x3 / ((3 * k) * (3 * k - 2))
        f += t
        g += u
        fp += a
        gp += bq
        if max(abs(t), abs(u), abs(a), abs(bq)) < eps * max(abs(f), abs(g), 1):
            break
        k += 1
    return float(c1 * f - c2 * g), float(c1 * fp - c2 * gp)


def _asym_coeffs(count: int) -> tuple[list[float], list[float]]:
    u = [1.0]
    v = [1.0]
    for k in range(1, count):
        uk = u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k)
        u.append(uk)
        v.append(-(6 * k + 1) / (6 * k - 1) * uk)
    return u, v


_U, _V = _asym_coeffs(40)


def _airy_asymptotic(x: float) -> tuple[float, float]:
    z = abs(x)
    zeta = 2.0 / 3.0 * z**1.5
    q = z**0.25
    sqpi = math.sqrt(math.pi)
    if x > 0:
        if zeta > 700:
            return 0.0, 0.0
        su = sv = 0.0
        prev = math.inf
        for k in range(len(_U)):
            tu = (-1) ** k * _U[k] / zeta**k
            if abs(tu) > prev:
                break
            prev = abs(tu)
            su += tu
            sv += (-1) ** k * _V[k] / zeta**k
            if abs(tu) < 1e-17:
                break
        e = math.exp(-zeta)
        return e / (2 * sqpi * q) * su, -q * e / (2 * sqpi) * sv
    # oscillatory side
    ue = uo = ve = vo = 0.0
    prev = math.inf
    for k in range(len(_U) // 2):
        te = (-1) ** k * _U[2 * k] / zeta ** (2 * k)
        to = (-1) ** k * _U[2 * k + 1] / zeta ** (2 * k + 1)
        if abs(te) > prev:
            break
        prev = abs(te)
        ue += te
        uo += to
        ve += (-1) ** k * _V[2 * k] / zeta ** (2 * k)
        vo += (-1) ** k * _V[2 * k + 1] / zeta ** (2 * k + 1)
        if abs(te) < 1e-17:
            break
    c = math.cos(zeta - math.pi / 4)
    s = math.sin(zeta - math.pi / 4)
    return (c * ue + s * uo) / (sqpi * q), q * (s * ve - c * vo) / sqpi


def _airy_pair(x: float, switch: float = 10.0) -> tuple[float, float]:
    if x == 0:
        return _AI0, _AIP0
    if abs(x) <= switch:
        return _airy_series(x)
    return _airy_asymptotic(x)


def airy_ai(x: float, cfg: PrecisionConfig | None = None) -> float:
    """Ai(x): Maclaurin series for ``|x| <= cfg.airy_switch``, asymptotic expansions beyond."""
    return _airy_pair(float(x), (cfg or PrecisionConfig()).airy_switch)[0]


def airy_ai_prime(x: float, cfg: PrecisionConfig | None = None) -> float:
    return _airy_pair(float(x), (cfg or PrecisionConfig()).airy_switch)[1]


# --- Tracy-Widom F2 ---------------------------------------------------------


def tw_f2_nystrom(sigma: float, m: int, switch: float = 10.0) -> float:
    """F_2(sigma) from an m-node Nystrom discretization, no convergence check."""
    t, w = np.polynomial.legendre.leggauss(m)
    t = (t + 1) / 2
    w = w / 2
    # (0, 1) -> (sigma, inf); the log map compresses the super-exponential tail
    scale = 2.0 + max(0.0, -sigma) / 2.0
    x = sigma - scale * np.log1p(-t)
    w = w * scale / (1 - t)
    pairs = [_airy_pair(float(xi), switch) for xi in x]
    ai = np.array([p[0] for p in pairs])
    aip = np.array([p[1] for p in pairs])
    dx = x[:, None] - x[None, :]
    np.fill_diagonal(dx, 1.0)
    k = (ai[:, None] * aip[None, :] - aip[:, None] * ai[None, :]) / dx
    np.fill_diagonal(k, aip**2 - x * ai**2)
    sw = np.sqrt(w)
    return float(np.linalg.det(np.eye(m) - sw[:, None] * k * sw[None, :]))


def tw_f2(sigma: float, cfg: PrecisionConfig | None = None) -> float:
    """GUE Tracy-Widom distribution F_2(sigma).

    Node counts in ``cfg.nodes`` are tried in turn; the first value that agrees
    with its predecessor within ``cfg.tw_tol`` is returned.
    """
    cfg = cfg or PrecisionConfig()
    prev = None
    for m in cfg.nodes:
        cur = tw_f2_nystrom(float(sigma), m, cfg.airy_switch)
        if prev is not None and abs(cur - prev) <= cfg.tw_tol:
            return min(1.0, max(0.0, cur))
        prev = cur
    raise ConvergenceError(
        f"F2({sigma}) not converged over node counts {cfg.nodes} (tol {cfg.tw_tol})"
    )


# --- convergence probe ------------------------------------------------------


def scaled_s(n: int, sigma: float) -> int:
    """``floor(n y_c - n^(1/3) sigma / (2^(4/3) 3^(1/6)))``."""
    return math.floor(n * Y_CRITICAL - n ** (1.0 / 3.0) * sigma / TW_SCALE)


@dataclass(frozen=True)
class TwProbe:
    sigma: float
    n: int
    s_scaled: int
    p_boundary: float
    f2: float
    error: float = field(default=0.0, compare=False)

    @property
    def gap(self) -> float:
        return abs(self.p_boundary - self.f2)


def tw_convergence_probe(
    n_list: Sequence[int], sigma: float, cfg: PrecisionConfig | None = None
) -> list[TwProbe]:
    cfg = cfg or PrecisionConfig()
    f2 = tw_f2(sigma, cfg)
    out = []
    for n in n_list:
        s = scaled_s(n, sigma)
        if s < 1:
            raise ValueError(f"n={n} too small for sigma={sigma}: scaled s = {s}")
        est = boundary_cdf_estimate(n, s, cfg)
        out.append(TwProbe(float(sigma), n, s, est.value, f2, est.error))
    return out

