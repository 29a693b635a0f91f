"""Persistent on-disk cache of cluster polynomials.

One JSON file per (pattern set, n); the file name is the SHA-256 of the
canonical key.  Writes go to a temporary file in the same directory and are
moved into place with ``os.replace`` so readers never see a partial record.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from typing import Optional

SCHEMA_VERSION = 1

log = logging.getLogger(__name__)


def record_path(cache_dir: str, pattern_key: str, n: int) -> str:
    digest = hashlib.sha256(f"{pattern_key}|{n}".encode()).hexdigest()
    return os.path.join(cache_dir, f"{digest}.json")


def cache_put(cache_dir: str, pattern_key: str, n: int, coeffs: dict) -> str:
    """Store ``{k: r_{n,k}}`` atomically; returns the record path."""
    os.makedirs(cache_dir, exist_ok=True)
    record = {
        "version": SCHEMA_VERSION,
        "patterns": pattern_key,
        "n": n,
        "coeffs": {str(k): str(v) for k, v in sorted(coeffs.items())},
    }
    path = record_path(cache_dir, pattern_key, n)
    fd, tmp = tempfile.mkstemp(dir=cache_dir, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(record, fh)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def cache_get(cache_dir: str, pattern_key: str, n: int) -> Optional[dict]:
    """Return ``{k: r_{n,k}}`` or None when absent, stale or unreadable."""
    path = record_path(cache_dir, pattern_key, n)
    try:
        with open(path) as fh:
            record = json.load(fh)
    except FileNotFoundError:
        return None
    except (OSError, ValueError) as exc:
        log.warning("ignoring unreadable cache record %s: %s", path, exc)
        return None
    if record.get("version") != SCHEMA_VERSION:
        return None
    if record.get("patterns") != pattern_key or record.get("n") != n:
        return None
    return {int(k): int(v) for k, v in record["coeffs"].items()}
