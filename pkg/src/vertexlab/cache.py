"""Optional on-disk cache for character tables.

Activated by the VERTEXLAB_CACHE environment variable; files are written
atomically (temp file + rename) so concurrent runs can share a directory.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

ENV_VAR = "VERTEXLAB_CACHE"


def cache_dir() -> Path | None:
    path = os.environ.get(ENV_VAR)
    if not path:
        return None
    d = Path(path)
    d.mkdir(parents=True, exist_ok=True)
    return d


def group_content_hash(group) -> str:
    payload = json.dumps(
        [group.degree, sorted(g.images for g in group.generators)],
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def load_json(key: str):
    d = cache_dir()
    if d is None:
        return None
    f = d / f"{key}.json"
    if not f.exists():
        return None
    try:
        return json.loads(f.read_text())
    except (OSError, json.JSONDecodeError):
        return None


def store_json(key: str, payload) -> None:
    d = cache_dir()
    if d is None:
        return
    data = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, d / f"{key}.json")
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass
