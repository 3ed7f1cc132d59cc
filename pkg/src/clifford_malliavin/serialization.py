"""JSON (de)serialization for tensors, chaos expansions and processes.

Formats::

    tensor   {"degree": n, "slots": d, "width": w, "entries": [{"idx": [i1, ...], "re": x, "im": y}, ...]}
    element  {"grid": {"slots": d, "width": w}, "levels": [{"degree": n, "tensor": <tensor>}, ...]}
    process  {"grid": {...}, "slots": [{"k": k, "element": <element>}, ...]}

Indices are 1-based and strictly increasing; loaders validate them.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .antisym import AntiTensor
from .chaos import CliffordElement
from .errors import DegreeMismatchError, GridMismatchError
from .grid import TimeGrid
from .malliavin import ProcessElement


def tensor_to_dict(f: AntiTensor, tol: float = 0.0) -> dict:
    return {
        "degree": f.degree,
        "slots": f.grid.slots,
        "width": f.grid.width,
        "entries": [
            {"idx": list(idx), "re": float(c.real), "im": float(c.imag)}
            for idx, c in f.entries(tol).items()
        ],
    }


def tensor_from_dict(data: dict, grid: TimeGrid | None = None) -> AntiTensor:
    g = TimeGrid(int(data["slots"]), float(data.get("width", 1.0)))
    if grid is not None and g != grid:
        raise GridMismatchError(f"tensor grid {g} does not match {grid}")
    n = int(data["degree"])
    entries: dict[tuple, complex] = {}
    for e in data.get("entries", []):
        idx = tuple(int(i) for i in e["idx"])
        if len(idx) != n:
            raise DegreeMismatchError(f"entry {idx} has the wrong length for degree {n}")
        if idx in entries:
            raise ValueError(f"duplicate entry {idx}")
        entries[idx] = complex(float(e.get("re", 0.0)), float(e.get("im", 0.0)))
    if n > g.slots:
        if any(v != 0 for v in entries.values()):
            raise ValueError(f"degree {n} exceeds {g.slots} slots")
        return AntiTensor.zero(g, n)
    return AntiTensor.from_entries(g, n, entries)


def element_to_dict(F: CliffordElement, tol: float = 0.0) -> dict:
    return {
        "grid": F.grid.to_dict(),
        "levels": [{"degree": n, "tensor": tensor_to_dict(t, tol)} for n, t in F.levels.items()],
    }


def element_from_dict(data: dict) -> CliffordElement:
    grid = TimeGrid.from_dict(data["grid"])
    levels = []
    for lv in data.get("levels", []):
        t = tensor_from_dict(lv["tensor"], grid)
        if t.degree != int(lv["degree"]):
            raise DegreeMismatchError(f"level {lv['degree']} holds a degree-{t.degree} tensor")
        levels.append(t)
    return CliffordElement(grid, levels)


def process_to_dict(u: ProcessElement, tol: float = 0.0) -> dict:
    return {
        "grid": u.grid.to_dict(),
        "slots": [{"k": k, "element": element_to_dict(c, tol)} for k, c in enumerate(u.components, start=1)],
    }


def process_from_dict(data: dict) -> ProcessElement:
    grid = TimeGrid.from_dict(data["grid"])
    parts = {}
    for s in data.get("slots", []):
        k = int(s["k"])
        if k in parts:
            raise ValueError(f"slot {k} given twice")
        el = element_from_dict(s["element"])
        if el.grid != grid:
            raise GridMismatchError(f"slot {k} lives on {el.grid}, not {grid}")
        parts[k] = el
    return ProcessElement.from_slots(grid, parts)


def load_json(path: str | Path) -> Any:
    with open(path) as fh:
        return json.load(fh)


def load_tensor(path: str | Path) -> AntiTensor:
    return tensor_from_dict(load_json(path))


def load_element(path: str | Path) -> CliffordElement:
    """Read a Clifford element; a bare tensor file is read as ``J_n(f)``."""
    data = load_json(path)
    if "levels" in data:
        return element_from_dict(data)
    return CliffordElement.J(tensor_from_dict(data))
