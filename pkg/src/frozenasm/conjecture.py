"""The s x s matrix M and the determinant formula B(n, s) = A_n det(1 - M).

Two exact routes build M. The contour route extracts Laurent coefficients of
the kernels f_i^+ and f_j^-, turning the double contour integral against
1/(1 - z - w) into a finite double sum. The enumeration route evaluates the
closed quadruple sum over plain and refined ASM counts. Both return exact
rationals; they must agree entry by entry.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .asm_enum import asm_count, g_poly, refined_vector
from .numkit import LaurentPoly, RationalMatrix, binomial, det_exact

__all__ = [
    "IntegrityError",
    "f_kernel",
    "matrix_entry_contour",
    "matrix_entry_sum",
    "FrozenMatrix",
    "frozen_matrix",
    "conjecture_det",
    "conjecture_count",
]


class IntegrityError(ArithmeticError):
    """A quantity that must be a nonnegative integer came out otherwise."""


def _check_params(n: int, s: int, *idx: int) -> None:
    if n < 1 or not 1 <= s <= n:
        raise ValueError(f"need 1 <= s <= n, got n={n}, s={s}")
    for i in idx:
        if not 1 <= i <= s:
            raise ValueError(f"matrix index {i} outside 1..{s}")


@lru_cache(maxsize=None)
def f_kernel(i: int, sign: str, n: int, s: int) -> LaurentPoly:
    """``[1 +- (-1)^i z] (1-z)^(i-1) z^(-i) g_{n-s+i}(z)``; ``sign`` is ``'+'`` or ``'-'``."""
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    _check_params(n, s, i)
    eps = (1 if sign == "+" else -1) * (-1) ** i
    lead = LaurentPoly({0: 1, 1: eps})
    return (lead * LaurentPoly({0: 1, 1: -1}) ** (i - 1) * g_poly(n - s + i)).shift(-i)


def matrix_entry_contour(n: int, s: int, i: int, j: int) -> Fraction:
    """M_ij from the double contour integral, as formal residues.

    Near the origin 1/(1-z-w) = sum_m (z+w)^m; residues of f_i^+(z) z^a and
    f_j^-(w) w^b vanish once a >= i or b >= j, so m runs up to i+j-2.
    """
    _check_params(n, s, i, j)
    fp = f_kernel(i, "+", n, s)
    fm = f_kernel(j, "-", n, s)
    total = Fraction(0)
    for m in range(i + j - 1):
        for t in range(m + 1):
            total += binomial(m, t) * fp.coeff(-1 - (m - t)) * fm.coeff(-1 - t)
    b = n - s + j
    return Fraction(asm_count(b), asm_count(b - 1)) * total


def _left_factor(i: int, a: int, d: int) -> int:
    # sum_p (-1)^p [C(i-1, i-d-p) - (-1)^i C(i-1, i-d-p-1)] A_{a,p}, with d = k - l
    ref = refined_vector(a)
    sgn_i = (-1) ** i
    out = 0
    for p in range(1, a + 1):
        top = i - d - p
        br = _binom0(i - 1, top) - sgn_i * _binom0(i - 1, top - 1)
        if br:
            out += (-1) ** p * br * ref[p - 1]
    return out


def _right_factor(j: int, b: int, l: int) -> int:
    # sum_q (-1)^q [C(j-1, j-l-q) + (-1)^j C(j-1, j-l-q-1)] A_{b,q}
    ref = refined_vector(b)
    sgn_j = (-1) ** j
    out = 0
    for q in range(1, b + 1):
        top = j - l - q
        br = _binom0(j - 1, top) + sgn_j * _binom0(j - 1, top - 1)
        if br:
            out += (-1) ** q * br * ref[q - 1]
    return out


def _binom0(a: int, b: int) -> int:
    return binomial(a, b) if a >= 0 else 0


def matrix_entry_sum(n: int, s: int, i: int, j: int) -> Fraction:
    """M_ij from the quadruple sum over refined enumerations.

    The sums over p and q decouple once k and l are fixed, so the sum is
    evaluated as sum_{k,l} (-1)^(i+j-k) C(k,l) L(k-l) R(l). The k-sum stops at
    i + j: beyond it the p-bracket vanishes for every admissible l.
    """
    _check_params(n, s, i, j)
    a = n - s + i
    b = n - s + j
    left = {d: _left_factor(i, a, d) for d in range(i + j + 1)}
    right = {l: _right_factor(j, b, l) for l in range(j + 1)}
    total = 0
    for k in range(i + j + 1):
        sgn = (-1) ** (i + j - k)
        for l in range(min(k, j) + 1):
            term = left[k - l] * right[l]
            if term:
                total += sgn * binomial(k, l) * term
    return Fraction(total, asm_count(a) * asm_count(b - 1))


@dataclass(frozen=True)
class FrozenMatrix:
    n: int
    s: int
    entries: RationalMatrix

    def one_minus(self) -> RationalMatrix:
        return RationalMatrix.identity(self.s) - self.entries


def frozen_matrix(n: int, s: int, route: str = "sum") -> FrozenMatrix:
    """Build M by the ``'sum'`` (default) or ``'contour'`` route."""
    if route == "sum":
        entry = matrix_entry_sum
    elif route == "contour":
        entry = matrix_entry_contour
    else:
        raise ValueError(f"unknown route {route!r}")
    _check_params(n, s)
    return FrozenMatrix(n, s, RationalMatrix.from_function(s, lambda i, j: entry(n, s, i, j)))


def conjecture_det(n: int, s: int, route: str = "sum") -> Fraction:
    """det(1 - M) as an exact rational."""
    return det_exact(frozen_matrix(n, s, route).one_minus())


def conjecture_count(n: int, s: int, route: str = "sum") -> int:
    """A_n det(1 - M); raises IntegrityError unless that is a nonnegative integer."""
    value = asm_count(n) * conjecture_det(n, s, route)
    if value.denominator != 1 or value < 0:
        raise IntegrityError(f"A_{n} det(1-M) = {value} for s={s} is not a nonnegative integer")
    return value.numerator
