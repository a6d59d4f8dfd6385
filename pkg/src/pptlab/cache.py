"""Append-only JSON-lines result cache.

One object per line: {"key": ..., "version": ..., "record": ...}.  The
cache is a pure accelerator: entries from other tool versions are
ignored, corrupted lines are skipped with a warning, and any I/O failure
degrades to cache-off without changing results.
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
from pathlib import Path

CACHE_FILE = "cache.jsonl"
CACHE_ENV = "PPTLAB_CACHE"


def content_hash(payload: dict) -> str:
    """SHA-256 of the canonical byte encoding of a JSON-able payload."""
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _warn(message: str) -> None:
    print(f"pptlab: cache warning: {message}", file=sys.stderr)


class ResultCache:
    def __init__(self, directory: str | Path):
        self.path = Path(directory) / CACHE_FILE

    @classmethod
    def from_environment(cls, flag_value: str | None = None) -> "ResultCache | None":
        directory = flag_value or os.environ.get(CACHE_ENV)
        return cls(directory) if directory else None

    def get(self, key: str, version: str) -> dict | None:
        try:
            if not self.path.exists():
                return None
            lines = self.path.read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            _warn(f"read failed ({exc}); continuing without cache")
            return None
        found = None
        for lineno, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            try:
                entry = json.loads(line)
                if entry["version"] != version:
                    continue
                if entry["key"] == key:
                    found = entry["record"]
            except (json.JSONDecodeError, KeyError, TypeError):
                _warn(f"skipping corrupted line {lineno} in {self.path}")
        return found

    def put(self, key: str, version: str, record: dict) -> None:
        entry = {"key": key, "version": version, "record": record}
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(entry, sort_keys=True) + "\n")
        except OSError as exc:
            _warn(f"write failed ({exc}); result not cached")
