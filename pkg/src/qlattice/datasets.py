"""Built-in ray systems shipped with the package.

The JSON files under ``data/`` are generated by ``scripts/build_datasets.py``
and validated again on every load.
"""

from __future__ import annotations

from importlib import resources

from .io import ray_system_from_json, read_json
from .ks import RaySystem

__all__ = ["BUILTIN_NAMES", "builtin_dataset", "list_datasets"]

BUILTIN_NAMES = ("peres33", "peres33-core", "cabello18", "lisonek21", "dim2-control")

_DESCRIPTIONS = {
    "peres33": "Peres rays in d=3 with the triads completed (57 rays, 40 triads), m=2",
    "peres33-core": "the bare 33 Peres rays with their 16 complete triads (colourable), m=2",
    "cabello18": "18 rays, 9 bases in d=4, each ray in two bases, m=1",
    "lisonek21": "21 rays, 7 bases in d=6 with cube-root-of-unity phases, m=3",
    "dim2-control": "two unrelated bases in d=2 (colourable control)",
}


def builtin_dataset(name: str) -> RaySystem:
    if name not in BUILTIN_NAMES:
        raise KeyError(f"unknown dataset {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    ref = resources.files("qlattice") / "data" / f"{name}.json"
    with resources.as_file(ref) as path:
        data, src = read_json(path)
    return ray_system_from_json(data, src, name=name)


def list_datasets() -> list[tuple[str, str]]:
    return [(name, _DESCRIPTIONS[name]) for name in BUILTIN_NAMES]
