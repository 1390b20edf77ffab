"""Ground-truth B(n, s) by counting constrained monotone triangles.

A monotone triangle of size n has strictly increasing rows of lengths 1..n,
consecutive rows weakly interlace, and the bottom row is 1..n. ASMs with an
s x s frozen corner correspond to triangles whose first s rows have every
entry <= n - s. Rows are grown top-down with a memo keyed on the row and on
whether the next row is still inside the capped zone.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .asm_enum import asm_count

__all__ = [
    "Row",
    "successors",
    "count_frozen",
    "count_triangles_from",
    "AsmMatrix",
    "is_asm",
    "asm_to_monotone",
    "monotone_to_asm",
    "is_monotone_triangle",
    "all_asms",
    "brute_force_frozen",
]

Row = tuple[int, ...]


def _check_row(r: Sequence[int]) -> None:
    if any(a >= b for a, b in zip(r, r[1:])):
        raise ValueError(f"row {tuple(r)} is not strictly increasing")


def _successors(r: Row, cap: int) -> Iterator[Row]:
    # b_1 <= r_1 <= b_2 <= ... <= r_l <= b_{l+1}, strictly increasing, 1 <= b <= cap
    ell = len(r)
    if ell and r[-1] > cap:
        return
    bounds = [1, *r, cap]

    def grow(j: int, prefix: tuple[int, ...]) -> Iterator[Row]:
        if j == ell + 1:
            yield prefix
            return
        lo, hi = bounds[j], bounds[j + 1]
        if prefix and prefix[-1] >= lo:
            lo = prefix[-1] + 1
        for b in range(lo, hi + 1):
            yield from grow(j + 1, prefix + (b,))

    yield from grow(0, ())


def successors(r: Sequence[int], n: int) -> list[Row]:
    """All strictly increasing rows of length ``len(r)+1`` in [1, n] interlacing ``r``."""
    r = tuple(r)
    _check_row(r)
    if len(r) >= n:
        raise ValueError(f"row of length {len(r)} has no successor for n={n}")
    return list(_successors(r, n))


def count_triangles_from(top: Sequence[int], n: int, s: int = 0, memo: dict | None = None) -> int:
    """Number of ways to complete a monotone triangle of size n from row ``top``.

    Rows of length <= s are capped at n - s. ``memo`` may be shared between
    calls with the same (n, s); pass ``None`` to disable memoization.
    """
    top = tuple(top)
    cap = n - s
    if sys.getrecursionlimit() < 4 * n + 100:
        sys.setrecursionlimit(4 * n + 100)

    def count(row: Row) -> int:
        ell = len(row)
        if ell >= n - 1:
            return 1
        capped = ell < s
        key = (row, capped)
        if memo is not None:
            hit = memo.get(key)
            if hit is not None:
                return hit
        total = 0
        for nxt in _successors(row, cap if capped else n):
            total += count(nxt)
        if memo is not None:
            memo[key] = total
        return total

    if len(top) == n:
        return 1
    return count(top)


def count_frozen(n: int, s: int, memoize: bool = True) -> int:
    """B(n, s): monotone triangles of size n with rows 1..s bounded by n - s."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= s <= n:
        raise ValueError(f"need 0 <= s <= n, got n={n}, s={s}")
    if s == 0:
        return asm_count(n)
    memo: dict | None = {} if memoize else None
    if n == 1:
        return 0
    return sum(count_triangles_from((t,), n, s, memo) for t in range(1, n - s + 1))


@dataclass(frozen=True)
class AsmMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        entries = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", entries)
        if not is_asm(entries):
            raise ValueError(f"not an alternating sign matrix: {entries}")

    @property
    def n(self) -> int:
        return len(self.entries)


def _alternates(line: Sequence[int]) -> bool:
    nz = [x for x in line if x != 0]
    if any(x not in (-1, 1) for x in nz):
        return False
    if sum(nz) != 1:
        return False
    return all(a == -b for a, b in zip(nz, nz[1:]))


def is_asm(m: Sequence[Sequence[int]]) -> bool:
    """Direct check of the definition: entries in {-1,0,1}, nonzeros alternate, lines sum to 1."""
    n = len(m)
    if any(len(r) != n for r in m):
        return False
    return all(_alternates(r) for r in m) and all(_alternates(c) for c in zip(*m))


def is_monotone_triangle(t: Sequence[Sequence[int]]) -> bool:
    n = len(t)
    if [len(r) for r in t] != list(range(1, n + 1)):
        return False
    if tuple(t[-1]) != tuple(range(1, n + 1)):
        return False
    for r in t:
        if any(a >= b for a, b in zip(r, r[1:])):
            return False
    for up, down in zip(t, t[1:]):
        if any(not (down[j] <= up[j] <= down[j + 1]) for j in range(len(up))):
            return False
    return True


def monotone_to_asm(t: Sequence[Sequence[int]]) -> AsmMatrix:
    """Rebuild the ASM whose partial column sums have 1s in row i at columns ``t[i]``."""
    if not is_monotone_triangle(t):
        raise ValueError(f"not a monotone triangle: {t}")
    n = len(t)
    partial = [[1 if j + 1 in set(row) else 0 for j in range(n)] for row in t]
    prev = [0] * n
    rows = []
    for p in partial:
        rows.append(tuple(a - b for a, b in zip(p, prev)))
        prev = p
    return AsmMatrix(tuple(rows))


def asm_to_monotone(m: AsmMatrix | Sequence[Sequence[int]]) -> tuple[Row, ...]:
    entries = m.entries if isinstance(m, AsmMatrix) else m
    n = len(entries)
    col = [0] * n
    out = []
    for row in entries:
        col = [c + a for c, a in zip(col, row)]
        out.append(tuple(j + 1 for j in range(n) if col[j] == 1))
    return tuple(out)


def _asm_rows(n: int) -> list[tuple[int, ...]]:
    return [r for r in product((-1, 0, 1), repeat=n) if _alternates(r)]


def all_asms(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every n x n ASM, found by stacking admissible rows with column pruning."""
    rows = _asm_rows(n)

    def stack(prefix: list, col: list[int]) -> Iterator:
        if len(prefix) == n:
            m = tuple(prefix)
            if is_asm(m):
                yield m
            return
        for r in rows:
            new = [c + a for c, a in zip(col, r)]
            # partial column sums of an ASM column stay in {0, 1}
            if all(x in (0, 1) for x in new):
                prefix.append(r)
                yield from stack(prefix, new)
                prefix.pop()

    yield from stack([], [0] * n)


BRUTE_MAX_N = 4


def brute_force_frozen(n: int, s: int) -> int:
    """Count ASMs with ``a_ij = 0`` for all ``i, j <= s`` straight from the definition."""
    if n > BRUTE_MAX_N:
        raise ValueError(f"brute force is limited to n <= {BRUTE_MAX_N} (3^(n^2) scan), got {n}")
    if n < 1 or not 0 <= s <= n:
        raise ValueError(f"need n >= 1 and 0 <= s <= n, got n={n}, s={s}")
    return sum(
        1
        for m in all_asms(n)
        if all(m[i][j] == 0 for i in range(s) for j in range(s))
    )
