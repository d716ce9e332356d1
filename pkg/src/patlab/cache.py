"""On-disk result cache for exact pattern sets.

Enabled by setting PATLAB_CACHE_DIR.  Entries are keyed by the SHA-256 of
(canonical map spec, operation name, n, engine version) and hold the
canonical JSON of the result, so a cache hit is byte-identical to a fresh
computation.  Writes go through a temp file and rename, so a crashed run
cannot leave a truncated entry.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile

ENV_VAR = "PATLAB_CACHE_DIR"


def cache_dir() -> str | None:
    return os.environ.get(ENV_VAR) or None


def cache_key(spec_json: str, op: str, n: int, version: str) -> str:
    payload = json.dumps(
        {"n": n, "op": op, "spec": json.loads(spec_json), "version": version},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def _path(directory: str, key: str) -> str:
    return os.path.join(directory, f"{key}.json")


def load(key: str) -> str | None:
    directory = cache_dir()
    if directory is None:
        return None
    try:
        with open(_path(directory, key), encoding="utf-8") as fh:
            return fh.read()
    except OSError:
        return None


def store(key: str, text: str) -> None:
    directory = cache_dir()
    if directory is None:
        return
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, _path(directory, key))
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass
