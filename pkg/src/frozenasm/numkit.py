"""Exact-arithmetic substrate.

Integers are Python ``int`` and rationals are :class:`fractions.Fraction`
(always in lowest terms with a positive denominator). On top of those this
module provides sparse univariate Laurent polynomials, multivariate series
truncated per variable, and an exact fraction-free determinant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "binomial",
    "LaurentPoly",
    "laurent_mul",
    "laurent_coeff",
    "TruncatedSeries",
    "series_mul",
    "RationalMatrix",
    "det_exact",
]


def binomial(a: int, b: int) -> int:
    """C(a, b) with the combinatorial convention: zero outside ``0 <= b <= a``.

    A negative upper index is refused rather than read as a generalized
    binomial, since no sum in this package should ever produce one.
    """
    if a < 0:
        raise ValueError(f"binomial upper index must be >= 0, got {a}")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def _clean(coeffs: Mapping) -> dict:
    return {k: Fraction(v) for k, v in coeffs.items() if v != 0}


@dataclass(frozen=True)
class LaurentPoly:
    """Finite Laurent polynomial ``sum c_e * var**e`` with rational coefficients."""

    coeffs: Mapping[int, Fraction] = field(default_factory=dict)
    var: str = "z"

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _clean(self.coeffs))

    @classmethod
    def constant(cls, c, var: str = "z") -> LaurentPoly:
        return cls({0: c}, var)

    @classmethod
    def monomial(cls, e: int, c=1, var: str = "z") -> LaurentPoly:
        return cls({e: c}, var)

    @classmethod
    def from_list(cls, coeffs: Sequence, low: int = 0, var: str = "z") -> LaurentPoly:
        """Build from a dense list whose first entry is the coefficient of ``var**low``."""
        return cls({low + k: c for k, c in enumerate(coeffs)}, var)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def low(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no lowest exponent")
        return min(self.coeffs)

    @property
    def high(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no highest exponent")
        return max(self.coeffs)

    def coeff(self, e: int) -> Fraction:
        return self.coeffs.get(e, Fraction(0))

    def to_list(self, low: int | None = None, high: int | None = None) -> list[Fraction]:
        """Dense coefficient list over ``[low, high]`` (defaults to the support)."""
        if low is None:
            low = self.low if self.coeffs else 0
        if high is None:
            high = self.high if self.coeffs else low - 1
        return [self.coeff(e) for e in range(low, high + 1)]

    def __call__(self, x):
        return sum((c * x**e for e, c in self.coeffs.items()), Fraction(0))

    def _check(self, other: LaurentPoly) -> None:
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var!r} vs {other.var!r}")

    def _lift(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        return LaurentPoly.constant(other, self.var)

    def __add__(self, other) -> LaurentPoly:
        other = self._lift(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self.coeffs.items()}, self.var)

    def __sub__(self, other) -> LaurentPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> LaurentPoly:
        return self._lift(other) - self

    def __mul__(self, other) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            return LaurentPoly({e: c * other for e, c in self.coeffs.items()}, self.var)
        return laurent_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = LaurentPoly.constant(1, self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``var**k``."""
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()}, self.var)

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"LaurentPoly(0, {self.var})"
        terms = " + ".join(f"({c})*{self.var}^{e}" for e, c in sorted(self.coeffs.items()))
        return f"LaurentPoly({terms})"


def laurent_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    p._check(q)
    out: dict[int, Fraction] = {}
    for e1, c1 in p.coeffs.items():
        for e2, c2 in q.coeffs.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return LaurentPoly(out, p.var)


def laurent_coeff(p: LaurentPoly, e: int) -> Fraction:
    return p.coeff(e)


@dataclass(frozen=True)
class TruncatedSeries:
    """Multivariate polynomial truncated at a per-variable maximum degree.

    Monomials are exponent tuples aligned with ``variables``; any monomial with
    an exponent above its cap is dropped on construction.
    """

    variables: tuple[str, ...]
    caps: tuple[int, ...]
    coeffs: Mapping[tuple[int, ...], Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        variables = tuple(self.variables)
        caps = tuple(self.caps)
        if len(variables) != len(caps):
            raise ValueError("one cap per variable is required")
        if any(c < 0 for c in caps):
            raise ValueError("caps must be nonnegative")
        kept = {}
        for mono, c in self.coeffs.items():
            mono = tuple(mono)
            if len(mono) != len(caps):
                raise ValueError(f"monomial {mono} does not match {len(caps)} variables")
            if any(m < 0 for m in mono):
                raise ValueError(f"negative exponent in {mono}")
            if c != 0 and all(m <= cap for m, cap in zip(mono, caps)):
                kept[mono] = Fraction(c)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "caps", caps)
        object.__setattr__(self, "coeffs", kept)

    @classmethod
    def one(cls, variables: Sequence[str], caps: Sequence[int]) -> TruncatedSeries:
        return cls(tuple(variables), tuple(caps), {(0,) * len(caps): Fraction(1)})

    @classmethod
    def univariate(
        cls,
        variables: Sequence[str],
        caps: Sequence[int],
        index: int,
        coeffs: Iterable,
    ) -> TruncatedSeries:
        """Embed a dense univariate coefficient list in variable ``index``."""
        zero = [0] * len(caps)
        terms = {}
        for e, c in enumerate(coeffs):
            if e > caps[index]:
                break
            mono = list(zero)
            mono[index] = e
            terms[tuple(mono)] = c
        return cls(tuple(variables), tuple(caps), terms)

    def coeff(self, mono: Sequence[int]) -> Fraction:
        return self.coeffs.get(tuple(mono), Fraction(0))

    def _compatible(self, other: TruncatedSeries) -> None:
        if self.variables != other.variables or self.caps != other.caps:
            raise ValueError("series have different variables or caps")

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._compatible(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return TruncatedSeries(self.variables, self.caps, out)

    def __neg__(self) -> TruncatedSeries:
        return self.scale(-1)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self + (-other)

    def scale(self, c) -> TruncatedSeries:
        return TruncatedSeries(
            self.variables, self.caps, {m: v * c for m, v in self.coeffs.items()}
        )

    def __mul__(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def truncate(self, caps: Sequence[int]) -> TruncatedSeries:
        """Re-truncate to tighter caps."""
        return TruncatedSeries(self.variables, tuple(caps), self.coeffs)


def series_mul(p: TruncatedSeries, q: TruncatedSeries) -> TruncatedSeries:
    p._compatible(q)
    caps = p.caps
    out: dict[tuple[int, ...], Fraction] = {}
    for m1, c1 in p.coeffs.items():
        for m2, c2 in q.coeffs.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            if any(e > cap for e, cap in zip(m, caps)):
                continue
            out[m] = out.get(m, 0) + c1 * c2
    return TruncatedSeries(p.variables, caps, out)


@dataclass(frozen=True)
class RationalMatrix:
    """Dense square matrix of exact rationals."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("RationalMatrix must be square")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, s: int) -> RationalMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(s)) for i in range(s)))

    @classmethod
    def from_function(cls, s: int, fn) -> RationalMatrix:
        """Build with entries ``fn(i, j)`` for 1-based ``i, j``."""
        return cls(tuple(tuple(fn(i, j) for j in range(1, s + 1)) for i in range(1, s + 1)))

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        return RationalMatrix(
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows))
        )

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        cols = list(zip(*other.rows))
        return RationalMatrix(
            tuple(tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols)
                  for r in self.rows)
        )

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(tuple(zip(*self.rows)))


def _bareiss(a: list[list[int]]) -> int:
    """Determinant of an integer matrix by Bareiss elimination (destroys ``a``)."""
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def det_exact(m: RationalMatrix | Sequence[Sequence]) -> Fraction:
    """Exact determinant.

    Each row is scaled to integers by the lcm of its denominators, the integer
    determinant is taken by Bareiss fraction-free elimination, and the row
    scalings are divided back out.
    """
    rows = m.rows if isinstance(m, RationalMatrix) else tuple(tuple(map(Fraction, r)) for r in m)
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    scale = 1
    ints = []
    for r in rows:
        d = math.lcm(*(Fraction(x).denominator for x in r))
        scale *= d
        ints.append([int(Fraction(x) * d) for x in r])
    return Fraction(_bareiss(ints), scale)
