"""Content-addressed JSON cache for computed fusion-system tables.

Keys hash the canonical spec together with the caps in force, so a cap
change invalidates older entries.  Warm reads must reproduce cold runs
byte for byte; the stored payload is the full morphism table set.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Any, Optional

CACHE_VERSION = 1
ENV_CACHE_DIR = "FUSIONCELL_CACHE"


def _stable_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cache_key(kind: str, spec: Any, caps: dict) -> str:
    blob = _stable_dumps(
        {"version": CACHE_VERSION, "kind": kind, "spec": spec, "caps": caps}
    )
    return hashlib.sha256(blob.encode()).hexdigest()


class JsonCache:
    def __init__(self, root: Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def read(self, key: str) -> Optional[Any]:
        path = self.root / f"{key}.json"
        if not path.exists():
            return None
        return json.loads(path.read_text())

    def write(self, key: str, data: Any) -> None:
        path = self.root / f"{key}.json"
        tmp = path.with_suffix(".tmp")
        tmp.write_text(_stable_dumps(data))
        os.replace(tmp, path)


def resolve_cache_dir(cli_value: Optional[str]) -> Optional[Path]:
    """--cache-dir wins, then the environment override, else no cache."""
    if cli_value:
        return Path(cli_value)
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env)
    return None
