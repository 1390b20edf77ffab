"""B(n, s) as a constant-term extraction from the multiple-integral formula.

Every factor of the integrand except ``prod_j z_j^-(n-s)`` is regular at the
origin, so the contour integrals reduce to the coefficient of
``prod_j z_j^(n-s-1)`` in a power series truncated at that degree in each
variable. The inner determinant is expanded over permutations.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .asm_enum import asm_count, g_poly
from .conjecture import IntegrityError
from .numkit import LaurentPoly, TruncatedSeries, binomial

__all__ = ["MirGuardError", "MirInstance", "mir_count", "DEFAULT_S_MAX", "DEFAULT_N_MAX"]

DEFAULT_S_MAX = 4
DEFAULT_N_MAX = 12


class MirGuardError(ValueError):
    """The requested (n, s) exceeds the cost guard."""


def _perm_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            k = seen[i]
            seen[i], seen[k] = seen[k], seen[i]
            sign = -sign
    return sign


@dataclass(frozen=True)
class MirInstance:
    n: int
    s: int
    margin: int = 0

    @property
    def degree(self) -> int:
        """Degree of the extracted monomial in every variable."""
        return self.n - self.s - 1

    @property
    def caps(self) -> tuple[int, ...]:
        return (self.degree + self.margin,) * self.s

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(f"z{j}" for j in range(1, self.s + 1))

    def _uni(self, j: int, coeffs) -> TruncatedSeries:
        return TruncatedSeries.univariate(self.variables, self.caps, j, coeffs)

    def pole_factor(self, j: int) -> TruncatedSeries:
        """``(z_j - 1)^-(s-j+1)`` for 1-based j."""
        e = self.s - j + 1
        sign = (-1) ** e
        cap = self.caps[j - 1]
        return self._uni(j - 1, [sign * binomial(m + e - 1, e - 1) for m in range(cap + 1)])

    def cross_factor(self, j: int, k: int) -> TruncatedSeries:
        """``1 / (z_j z_k - z_j + 1) = sum_m z_j^m (1 - z_k)^m`` for 1-based j < k."""
        cap_j = self.caps[j - 1]
        cap_k = self.caps[k - 1]
        terms = {}
        for m in range(cap_j + 1):
            for t in range(min(m, cap_k) + 1):
                mono = [0] * self.s
                mono[j - 1] = m
                mono[k - 1] = t
                terms[tuple(mono)] = (-1) ** t * binomial(m, t)
        return TruncatedSeries(self.variables, self.caps, terms)

    def det_entry(self, j: int, k: int) -> LaurentPoly:
        """``(z_j - 1)^(s-k) z_j^(k-1) g_{n-k+1}(z_j)`` as a polynomial in z_j."""
        return (LaurentPoly({0: -1, 1: 1}) ** (self.s - k) * g_poly(self.n - k + 1)).shift(k - 1)

    def det_series(self) -> TruncatedSeries:
        """The inner determinant, one permutation term at a time."""
        s = self.s
        total = TruncatedSeries(self.variables, self.caps, {})
        for perm in permutations(range(s)):
            term = TruncatedSeries.one(self.variables, self.caps).scale(_perm_sign(perm))
            for j in range(s):
                poly = self.det_entry(j + 1, perm[j] + 1)
                term = term * self._uni(j, poly.to_list(0, self.caps[j]))
            total = total + term
        return total

    def coefficient(self) -> Fraction:
        series = self.det_series()
        for j in range(1, self.s + 1):
            series = series * self.pole_factor(j)
        for j in range(1, self.s + 1):
            for k in range(j + 1, self.s + 1):
                series = series * self.cross_factor(j, k)
        return series.coeff((self.degree,) * self.s)


def mir_count(
    n: int,
    s: int,
    *,
    s_max: int = DEFAULT_S_MAX,
    n_max: int = DEFAULT_N_MAX,
    margin: int = 0,
) -> int:
    """B(n, s) = (-1)^s A_n [prod z_j^(n-s-1)] (regular part of the integrand)."""
    if n < 1 or not 1 <= s <= n:
        raise ValueError(f"need 1 <= s <= n, got n={n}, s={s}")
    if s > s_max or n > n_max:
        raise MirGuardError(
            f"mir route refused for n={n}, s={s}: cost grows like (n-s)^s * s!; "
            f"limits are s <= {s_max}, n <= {n_max} (raise them explicitly to override)"
        )
    if n - s - 1 < 0:
        # no monomial of negative degree exists
        return 0
    value = (-1) ** s * asm_count(n) * MirInstance(n, s, margin).coefficient()
    if value.denominator != 1 or value < 0:
        raise IntegrityError(f"mir value {value} for n={n}, s={s} is not a nonnegative integer")
    return value.numerator
