"""On-disk cache of complete enumeration results.

Entries are keyed by (family, n, algorithm version) and hold exactly the
bytes of ``StructureSet.dumps()``, so a hit is byte-identical to a rerun.
"""

from __future__ import annotations

import json
import os
import warnings
from pathlib import Path

from .enumeration import ALGORITHM_VERSION, StructureSet

CACHE_ENV = "ARITHGRAPH_CACHE"


class CacheWarning(UserWarning):
    pass


def cache_root(override: str | os.PathLike | None = None) -> Path | None:
    """The flag wins over the environment; None disables caching."""
    if override:
        return Path(override)
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else None


def cache_path(root: Path, family: str, n: int, version: str = ALGORITHM_VERSION) -> Path:
    return Path(root) / f"{family}-{n}-v{version}.json"


def cache_lookup(root: Path | None, family: str, n: int,
                 version: str = ALGORITHM_VERSION) -> StructureSet | None:
    if root is None:
        return None
    path = cache_path(root, family, n, version)
    if not path.is_file():
        return None
    try:
        text = path.read_text()
        result = StructureSet.from_json(json.loads(text))
        if not result.complete or result.dumps() != text:
            raise ValueError("entry does not round-trip")
    except Exception as exc:  # any damage means recompute
        warnings.warn(f"ignoring corrupt cache entry {path}: {exc}", CacheWarning, stacklevel=2)
        return None
    return result


def cache_store(root: Path | None, family: str, n: int, result: StructureSet,
                version: str = ALGORITHM_VERSION) -> Path | None:
    if root is None or not result.complete:
        return None
    path = cache_path(root, family, n, version)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(result.dumps())
    tmp.replace(path)
    return path
