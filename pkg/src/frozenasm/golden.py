"""Embedded reference values of B(n, s) for 2 <= n <= 20."""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

__all__ = ["golden_table", "golden_value", "GOLDEN_N_MAX", "SMALL_N_MAX"]

GOLDEN_N_MAX = 20
SMALL_N_MAX = 12


@lru_cache(maxsize=None)
def _load() -> dict:
    text = resources.files("frozenasm").joinpath("data/golden.json").read_text()
    data = json.loads(text)
    if data.get("format") != "frozenasm-golden" or data.get("version") != 1:
        raise ValueError("unrecognized golden data file")
    return data


def golden_table(which: str = "all") -> dict[tuple[int, int], int]:
    """Nonzero reference values keyed by (n, s); ``which`` is 'small', 'large' or 'all'."""
    tables = _load()["tables"]
    names = ("small", "large") if which == "all" else (which,)
    out = {}
    for name in names:
        for key, value in tables[name].items():
            n, s = map(int, key.split(","))
            out[n, s] = int(value)
    return out


def golden_value(n: int, s: int) -> int | None:
    """Reference B(n, s), 0 where the table omits a vanishing value, None if n is not covered."""
    if not 2 <= n <= GOLDEN_N_MAX or not 1 <= s <= n:
        return None
    return golden_table().get((n, s), 0)
