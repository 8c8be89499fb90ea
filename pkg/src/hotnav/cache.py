"""Append-only JSON Lines cache keyed by unit, so reruns skip finished work."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union


class JsonlCache:
    """Maps string keys to JSON payloads, persisted one record per line.

    Records are ``{"key": ..., "value": ...}``; the last record for a key
    wins, so interrupted runs can simply append.
    """

    def __init__(self, path: Union[str, Path, None]):
        self._path = Path(path) if path is not None else None
        self._entries: dict[str, Any] = {}
        if self._path is not None and self._path.exists():
            with open(self._path, "r", encoding="utf-8") as handle:
                for line in handle:
                    if not line.strip():
                        continue
                    record = json.loads(line)
                    self._entries[record["key"]] = record["value"]

    def __contains__(self, key: str) -> bool:
        return key in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, key: str) -> Any:
        return self._entries.get(key)

    def put(self, key: str, value: Any) -> None:
        self._entries[key] = value
        if self._path is not None:
            self._path.parent.mkdir(parents=True, exist_ok=True)
            with open(self._path, "a", encoding="utf-8") as handle:
                handle.write(json.dumps({"key": key, "value": value}, ensure_ascii=False) + "\n")
