"""Result records and the append-only JSON-lines cache."""
from __future__ import annotations

import json
import os
import threading
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterator

from . import __version__

__all__ = ["METHODS", "ResultRecord", "ResultCache", "cache_dir", "CACHE_ENV"]

METHODS = ("oracle", "conjecture", "mir", "brute")
CACHE_ENV = "FROZENASM_CACHE_DIR"


@dataclass(frozen=True)
class ResultRecord:
    method: str
    n: int
    s: int
    value: str
    wall_time: float = 0.0
    tool_version: str = __version__

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        # must be a plain decimal integer
        if str(int(self.value)) != self.value:
            raise ValueError(f"value {self.value!r} is not a canonical decimal integer")

    @classmethod
    def of(cls, method: str, n: int, s: int, value: int, wall_time: float = 0.0) -> ResultRecord:
        return cls(method, n, s, str(value), round(wall_time, 6))

    @property
    def int_value(self) -> int:
        return int(self.value)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> ResultRecord:
        d = json.loads(line)
        return cls(d["method"], int(d["n"]), int(d["s"]), str(d["value"]),
                   float(d.get("wall_time", 0.0)), str(d.get("tool_version", "")))


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "frozenasm"


class ResultCache:
    """One JSON object per line; later records for the same key win on lookup."""

    _lock = threading.Lock()

    def __init__(self, directory: Path | str | None = None) -> None:
        self.path = Path(directory or cache_dir()) / "results.jsonl"

    def __iter__(self) -> Iterator[ResultRecord]:
        if not self.path.exists():
            return
        with self.path.open() as fh:
            for line in fh:
                line = line.strip()
                if line:
                    yield ResultRecord.from_json(line)

    def get(self, method: str, n: int, s: int) -> ResultRecord | None:
        found = None
        for rec in self:
            if (rec.method, rec.n, rec.s) == (method, n, s):
                found = rec
        return found

    def append(self, rec: ResultRecord) -> None:
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a") as fh:
                fh.write(rec.to_json() + "\n")
