"""Plain and refined ASM enumeration and the refined generating polynomial."""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .numkit import LaurentPoly, binomial

__all__ = [
    "asm_count",
    "refined_count",
    "refined_vector",
    "RefinedVector",
    "g_poly",
    "PropertyCheck",
    "verify_properties",
]

_lock = threading.Lock()
_plain: list[int] = [1, 1]  # _plain[n] = A_n; A_0 = 1 by the empty product


def asm_count(n: int) -> int:
    """Number of n x n alternating sign matrices, ``prod_{j<n} (3j+1)!/(n+j)!``.

    Computed through the ratio A_n / A_{n-1} = (3n-2)! (n-1)! / ((2n-2)! (2n-1)!),
    which is built as a cancelled running rational. ``asm_count(0) == 1``.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n < len(_plain):
        return _plain[n]
    with _lock:
        while len(_plain) <= n:
            m = len(_plain)
            # (3m-2)!/(2m-1)! = prod_{k=2m}^{3m-2} k ; (m-1)!/(2m-2)! = 1/prod_{k=m}^{2m-2} k
            ratio = Fraction(1)
            for k in range(2 * m, 3 * m - 1):
                ratio *= k
            for k in range(m, 2 * m - 1):
                ratio /= k
            value = _plain[-1] * ratio
            if value.denominator != 1:
                raise ArithmeticError(f"A_{m} is not an integer: {value}")
            _plain.append(value.numerator)
    return _plain[n]


@lru_cache(maxsize=None)
def refined_vector(n: int) -> tuple[int, ...]:
    """``(A_{n,1}, ..., A_{n,n})``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    # prod_{j=0}^{n-2} (3j+1)!/(n+j)! = A_{n-1} (n-1)!/(2n-2)!
    base = Fraction(asm_count(n - 1))
    for k in range(n, 2 * n - 1):
        base /= k
    out = []
    for r in range(1, n + 1):
        # (2n-r-1)!/(n-r)! = prod_{k=n-r+1}^{2n-r-1} k
        v = base * binomial(n + r - 2, r - 1)
        for k in range(n - r + 1, 2 * n - r):
            v *= k
        if v.denominator != 1:
            raise ArithmeticError(f"A_{{{n},{r}}} is not an integer: {v}")
        out.append(v.numerator)
    return tuple(out)


def refined_count(n: int, r: int) -> int:
    """A_{n,r}: ASMs whose first-row 1 sits in column r."""
    if n < 1 or not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got n={n}, r={r}")
    return refined_vector(n)[r - 1]


@dataclass(frozen=True)
class RefinedVector:
    n: int
    counts: tuple[int, ...]

    @classmethod
    def of(cls, n: int) -> RefinedVector:
        return cls(n, refined_vector(n))

    def check(self) -> bool:
        c = self.counts
        ok = sum(c) == asm_count(self.n) and c == c[::-1]
        if self.n >= 2:
            ok = ok and c[0] == asm_count(self.n - 1)
        return ok


@lru_cache(maxsize=None)
def g_poly(n: int) -> LaurentPoly:
    """``2F1(1-n, n; 2n; 1-z)`` expanded in powers of z.

    The series terminates after n terms; each term ``c_m (1-z)^m`` is expanded
    binomially and accumulated into dense coefficients.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    coeffs = [Fraction(0)] * n
    term = Fraction(1)
    for m in range(n):
        if m:
            term = term * (m - n) * (n + m - 1) / ((2 * n + m - 1) * m)
        for k in range(m + 1):
            c = binomial(m, k)
            coeffs[k] += term * (-c if k % 2 else c)
    return LaurentPoly.from_list(coeffs)


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    n: int
    s: int | None
    expected: int
    actual: int

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        where = f"n={self.n}" + (f" s={self.s}" if self.s is not None else "")
        return f"{status} {self.name} {where}: expected {self.expected}, got {self.actual}"


def _odd_size_sum(s: int) -> int:
    a = refined_vector(s + 1)
    return sum(
        binomial(j + k - 2, j - 1) * a[j - 1] * a[k - 1]
        for j in range(1, s + 2)
        for k in range(1, s + 2)
    )


def verify_properties(n: int, frozen: Callable[[int, int], int]) -> list[PropertyCheck]:
    """Check the elementary identities satisfied by B(n, s) for one n.

    ``frozen(n, s)`` supplies B(n, s) from any method. Returns one record per
    identity instance; nothing is raised on failure.
    """
    out = []
    if n >= 2:
        out.append(PropertyCheck("first-row-sum", n, 1, sum(refined_vector(n)[:-1]), frozen(n, 1)))
    for s in range(n // 2 + 1, n + 1):
        out.append(PropertyCheck("vanishing", n, s, 0, frozen(n, s)))
    if n % 2 == 0 and n >= 2:
        s = n // 2
        out.append(PropertyCheck("even-square", n, s, asm_count(s) ** 2, frozen(n, s)))
    if n % 2 == 1 and n >= 3:
        s = n // 2
        out.append(PropertyCheck("odd-size-sum", n, s, _odd_size_sum(s), frozen(n, s)))
    return out
