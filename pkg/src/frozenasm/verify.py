"""Cross-checks between the B(n, s) routes, the identities, and the reference tables."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .asm_enum import PropertyCheck, verify_properties
from .conjecture import conjecture_count
from .frozen_oracle import BRUTE_MAX_N, brute_force_frozen, count_frozen
from .golden import golden_value
from .mir import mir_count

__all__ = ["Cell", "VerifyReport", "run_verify", "ORACLE_N_MAX", "ORACLE_SLOW_N_MAX"]

ORACLE_N_MAX = 14
ORACLE_SLOW_N_MAX = 16
MIR_N_MAX = 8
MIR_S_MAX = 4
COLUMNS = ("oracle", "conjecture", "mir", "brute", "golden")


@dataclass
class Cell:
    n: int
    s: int
    values: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return len(set(self.values.values())) <= 1

    def mismatch(self) -> tuple[str, str] | None:
        """First pair of methods that disagree, in column order."""
        present = [m for m in COLUMNS if m in self.values]
        for a in present:
            for b in present:
                if self.values[a] != self.values[b]:
                    return a, b
        return None

    def row(self) -> str:
        cols = " ".join(f"{m}={self.values[m]}" if m in self.values else f"{m}=-" for m in COLUMNS)
        return f"{'PASS' if self.passed else 'FAIL'} n={self.n} s={self.s} {cols}"


@dataclass
class VerifyReport:
    cells: list[Cell] = field(default_factory=list)
    properties: list[PropertyCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells) and all(p.passed for p in self.properties)

    def first_failure(self) -> str | None:
        for c in self.cells:
            pair = c.mismatch()
            if pair:
                a, b = pair
                return (f"n={c.n} s={c.s} {a} vs {b}: "
                        f"{c.values[a]} != {c.values[b]}")
        for p in self.properties:
            if not p.passed:
                return p.line()
        return None

    def lines(self) -> list[str]:
        out = [c.row() for c in self.cells]
        out += [p.line() for p in self.properties]
        n_fail = sum(not c.passed for c in self.cells) + sum(not p.passed for p in self.properties)
        out.append(f"{'ALL PASS' if self.passed else 'FAILED'}: {len(self.cells)} cells, "
                   f"{len(self.properties)} identities, {n_fail} failures")
        return out


def run_verify(
    n_max: int,
    *,
    golden_only: bool = False,
    slow: bool = False,
    oracle: Callable[[int, int], int] | None = None,
    progress: Callable[[str], None] | None = None,
) -> VerifyReport:
    """Compute every (n, s) with 1 <= s <= n <= n_max by each applicable route.

    The oracle runs up to n = 14 (16 with ``slow``); mir up to n = 8, s = 4;
    brute force up to n = 4. ``golden_only`` restricts to conjecture vs table.
    Identities are checked on conjecture values.
    """
    oracle = oracle or count_frozen
    report = VerifyReport()
    oracle_limit = ORACLE_SLOW_N_MAX if slow else ORACLE_N_MAX
    conj: dict[tuple[int, int], int] = {}
    for n in range(1, n_max + 1):
        if progress:
            progress(f"n={n}")
        for s in range(1, n + 1):
            cell = Cell(n, s)
            conj[n, s] = cell.values["conjecture"] = conjecture_count(n, s)
            g = golden_value(n, s)
            if g is not None:
                cell.values["golden"] = g
            if not golden_only:
                if n <= oracle_limit:
                    cell.values["oracle"] = oracle(n, s)
                if n <= MIR_N_MAX and s <= MIR_S_MAX:
                    cell.values["mir"] = mir_count(n, s)
                if n <= BRUTE_MAX_N:
                    cell.values["brute"] = brute_force_frozen(n, s)
            if golden_only and g is None:
                continue
            report.cells.append(cell)
        if not golden_only:
            report.properties.extend(verify_properties(n, lambda nn, ss: conj[nn, ss]))
    return report
