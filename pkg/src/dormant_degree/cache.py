"""Persistent exact-value cache: append-only JSON lines.

Each line stores one computed value under a canonical key.  Duplicate
keys are legal (append-only, crash-safe): the last line wins.  Corrupt
lines are skipped with a warning and never fatal.  Entries recorded by a
different tool version are ignored, forcing a recompute.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Mapping, Optional

from . import __version__

ENV_CACHE_DIR = "DORMANT_DEGREE_CACHE"
CACHE_FILE_NAME = "values.jsonl"


def canonical_key(formula: str, params: Mapping[str, object]) -> str:
    """'formula:param=value,...' with parameter names sorted."""
    body = ",".join(f"{k}={params[k]}" for k in sorted(params))
    return f"{formula}:{body}"


@dataclass(frozen=True)
class CacheEntry:
    key: str
    num: str
    den: str
    backend: str
    tool_version: str
    created_at: str

    def value(self) -> Fraction:
        return Fraction(int(self.num), int(self.den))


class ValueCache:
    """One cache directory holding a single append-only JSONL file."""

    def __init__(self, cache_dir: str | os.PathLike | None = None):
        if cache_dir is None:
            cache_dir = os.environ.get(ENV_CACHE_DIR) or os.path.join(
                os.path.expanduser("~"), ".cache", "dormant-degree"
            )
        self.directory = Path(cache_dir)
        self.path = self.directory / CACHE_FILE_NAME

    def _scan(self) -> tuple[dict[str, CacheEntry], list[str]]:
        entries: dict[str, CacheEntry] = {}
        warnings: list[str] = []
        if not self.path.exists():
            return entries, warnings
        with open(self.path, "r", encoding="utf-8") as handle:
            for lineno, line in enumerate(handle, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    raw = json.loads(line)
                    entry = CacheEntry(
                        key=raw["key"],
                        num=raw["num"],
                        den=raw["den"],
                        backend=raw["backend"],
                        tool_version=raw["tool_version"],
                        created_at=raw["created_at"],
                    )
                    entry.value()  # must round-trip to a rational
                except (json.JSONDecodeError, KeyError, TypeError, ValueError, ZeroDivisionError):
                    warnings.append(f"ignored corrupt cache line {lineno} in {self.path}")
                    continue
                entries[entry.key] = entry  # last write wins
        return entries, warnings

    def lookup(
        self, key: str, tool_version: str = __version__
    ) -> tuple[Optional[CacheEntry], list[str]]:
        entries, warnings = self._scan()
        entry = entries.get(key)
        if entry is not None and entry.tool_version != tool_version:
            entry = None
        return entry, warnings

    def store(
        self,
        key: str,
        value: Fraction,
        backend: str,
        tool_version: str = __version__,
    ) -> CacheEntry:
        entry = CacheEntry(
            key=key,
            num=str(value.numerator),
            den=str(value.denominator),
            backend=backend,
            tool_version=tool_version,
            created_at=time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        )
        self.directory.mkdir(parents=True, exist_ok=True)
        line = json.dumps(entry.__dict__, sort_keys=True) + "\n"
        with open(self.path, "a", encoding="utf-8") as handle:
            handle.write(line)  # single write call: atomic enough for appends
        return entry

    def lookup_or_compute(
        self,
        key: str,
        compute: Callable[[], Fraction],
        backend: str,
        tool_version: str = __version__,
    ) -> tuple[Fraction, bool, list[str]]:
        """(value, cache_hit, warnings); computes and appends on a miss."""
        entry, warnings = self.lookup(key, tool_version)
        if entry is not None:
            return entry.value(), True, warnings
        value = compute()
        self.store(key, value, backend, tool_version)
        return value, False, warnings

    def stats(self) -> dict[str, object]:
        entries, warnings = self._scan()
        size = self.path.stat().st_size if self.path.exists() else 0
        return {
            "entries": len(entries),
            "file_bytes": size,
            "path": str(self.path),
            "warnings": warnings,
        }


def cache_lookup_store(
    key: str,
    compute: Callable[[], Fraction],
    cache_dir: str | os.PathLike | None = None,
    backend: str = "exact",
) -> Fraction:
    """Module-level convenience wrapper around ValueCache.lookup_or_compute."""
    value, _hit, _warnings = ValueCache(cache_dir).lookup_or_compute(key, compute, backend)
    return value
