"""Access to the character tables and decomposition sidecars shipped with the package."""

from __future__ import annotations

import hashlib
import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .table import CharTable, table_from_dict

TABLE_NAMES = ("c3", "c9", "s3", "d8", "q8", "a4", "s4", "a5", "d18", "c3xc3", "f21")


def _data():
    return resources.files("perfiso") / "data"


def table_text(name: str) -> str:
    key = name.lower().removesuffix(".json")
    if key not in TABLE_NAMES:
        raise KeyError(f"no bundled table named {name!r}")
    return (_data() / f"{key}.json").read_text()


@lru_cache(maxsize=None)
def bundled_table(name: str) -> CharTable:
    return table_from_dict(json.loads(table_text(name)))


def sidecar_names() -> list[str]:
    return sorted(p.name.removesuffix(".json") for p in (_data() / "decomp").iterdir()
                  if p.name.endswith(".json"))


def sidecar_text(name: str) -> str:
    key = name.lower().removesuffix(".json")
    return (_data() / "decomp" / f"{key}.json").read_text()


def resolve(arg: str, kind: str = "table") -> tuple[str, str]:
    """Return (text, label) for a file path or a bundled name."""
    path = Path(arg)
    if path.is_file():
        return path.read_text(), str(path)
    if kind == "table":
        return table_text(arg), f"bundled:{arg.lower().removesuffix('.json')}"
    return sidecar_text(arg), f"bundled:decomp/{arg.lower().removesuffix('.json')}"


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()
