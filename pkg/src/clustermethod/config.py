"""Runtime caps and defaults.

A single module-level :class:`Settings` instance holds the caps every
operation consults when no explicit value is passed.  Use :func:`override`
to change them temporarily, or :func:`load_config` to read a JSON file.
"""
from __future__ import annotations

import contextlib
import dataclasses
import json
import os
from dataclasses import dataclass
from typing import Iterator, Optional


@dataclass
class Settings:
    brute_cap: int = 10
    brute_avoid_cap: int = 11
    extension_cap: int = 48
    state_budget: int = 2_000_000
    cluster_n_max: int = 80
    layout_budget: int = 4000
    series_N: int = 20
    tol: float = 1e-9
    threads: int = 1
    cache_dir: Optional[str] = None


settings = Settings()

_KEYS = {f.name for f in dataclasses.fields(Settings)}


def load_config(path: str | os.PathLike) -> dict:
    """Read a JSON config file and return the recognised keys."""
    with open(path) as fh:
        raw = json.load(fh)
    unknown = set(raw) - _KEYS
    if unknown:
        from .errors import InvalidInput

        raise InvalidInput(f"unknown config keys: {sorted(unknown)}")
    return raw


def apply(values: dict) -> None:
    for key, value in values.items():
        if value is not None:
            setattr(settings, key, value)


@contextlib.contextmanager
def override(**values) -> Iterator[Settings]:
    saved = dataclasses.asdict(settings)
    try:
        apply(values)
        yield settings
    finally:
        apply(saved)
        settings.cache_dir = saved["cache_dir"]
