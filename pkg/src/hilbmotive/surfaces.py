"""Built-in surface descriptors and the JSON surface-file format.

A surface file is a JSON object::

    {
      "name": "P2",
      "betti": [1, 0, 1, 0, 1],
      "hodge": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
      "chow_ranks": [1, 1, 1],
      "cellular": true,
      "projective": true
    }

Only ``name`` and ``betti`` are required.  ``hodge`` is either the full 3x3
matrix ``h[p][q]`` or its upper triangle ``[[h00, h01, h02], [h11, h12], [h22]]``
(filled in by Hodge symmetry).  ``chow_ranks`` lists the ranks of A_0, A_1, A_2.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .graded import BiGradedDimension, SurfaceDescriptor

__all__ = ["SurfaceFileError", "BUILTINS", "builtin", "load_surface", "surface_from_dict", "surface_to_dict"]


class SurfaceFileError(ValueError):
    """Raised for malformed surface files; ``errors`` lists field-level problems."""

    def __init__(self, errors: list[str], source: str = "<surface>") -> None:
        self.errors = errors
        self.source = source
        super().__init__(f"{source}: " + "; ".join(errors))


def _hodge_from_json(value: Any) -> BiGradedDimension:
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise ValueError("must be a list of rows")
    lengths = [len(r) for r in value]
    if lengths == [3, 3, 3]:
        return BiGradedDimension.from_matrix(value)
    if lengths == [3, 2, 1]:
        entries = {}
        for p, row in enumerate(value):
            for offset, c in enumerate(row):
                q = p + offset
                entries[(p, q)] = c
                entries[(q, p)] = c
        return BiGradedDimension(entries)
    raise ValueError("expected a 3x3 matrix or an upper triangle with row lengths 3, 2, 1")


def surface_from_dict(data: Any, source: str = "<surface>") -> SurfaceDescriptor:
    errors: list[str] = []
    if not isinstance(data, dict):
        raise SurfaceFileError(["top level must be a JSON object"], source)
    unknown = set(data) - {"name", "betti", "hodge", "chow_ranks", "cellular", "projective"}
    if unknown:
        errors.append(f"unknown fields: {sorted(unknown)}")

    name = data.get("name")
    if not isinstance(name, str) or not name:
        errors.append("name: required non-empty string")

    betti = data.get("betti")
    if not (isinstance(betti, list) and len(betti) == 5 and all(isinstance(b, int) and b >= 0 for b in betti)):
        errors.append("betti: required list of 5 non-negative integers")

    hodge = None
    if data.get("hodge") is not None:
        try:
            hodge = _hodge_from_json(data["hodge"])
        except (ValueError, TypeError) as exc:
            errors.append(f"hodge: {exc}")

    chow = data.get("chow_ranks")
    if chow is not None and not (
        isinstance(chow, list) and len(chow) == 3 and all(isinstance(r, int) and r >= 0 for r in chow)
    ):
        errors.append("chow_ranks: expected list of 3 non-negative integers")

    cellular = data.get("cellular", False)
    projective = data.get("projective", True)
    for key, val in (("cellular", cellular), ("projective", projective)):
        if not isinstance(val, bool):
            errors.append(f"{key}: expected boolean")

    if errors:
        raise SurfaceFileError(errors, source)
    try:
        return SurfaceDescriptor(
            name=name,
            betti=tuple(betti),
            hodge=hodge,
            chow_ranks=tuple(chow) if chow is not None else None,
            cellular=cellular,
            projective=projective,
        )
    except ValueError as exc:
        raise SurfaceFileError([str(exc)], source) from exc


def surface_to_dict(s: SurfaceDescriptor) -> dict:
    out: dict = {"name": s.name, "betti": list(s.betti)}
    if s.hodge is not None:
        out["hodge"] = [[s.hodge[p, q] for q in range(3)] for p in range(3)]
    if s.chow_ranks is not None:
        out["chow_ranks"] = list(s.chow_ranks)
    out["cellular"] = s.cellular
    out["projective"] = s.projective
    return out


def load_surface(source: str | Path) -> SurfaceDescriptor:
    """Load a surface from a JSON file, or by built-in name (``P2``, ``K3``, ...)."""
    key = str(source)
    if key in BUILTINS:
        return BUILTINS[key]
    path = Path(source)
    if not path.exists():
        raise SurfaceFileError([f"no such file and not a built-in ({', '.join(BUILTINS)})"], key)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SurfaceFileError([f"invalid JSON: {exc}"], key) from exc
    return surface_from_dict(data, key)


def _diag(*h):
    return BiGradedDimension({(i, i): c for i, c in enumerate(h)})


BUILTINS: dict[str, SurfaceDescriptor] = {
    "P2": SurfaceDescriptor("P2", (1, 0, 1, 0, 1), _diag(1, 1, 1), (1, 1, 1), cellular=True),
    "P1xP1": SurfaceDescriptor("P1xP1", (1, 0, 2, 0, 1), _diag(1, 2, 1), (1, 2, 1), cellular=True),
    "K3": SurfaceDescriptor(
        "K3", (1, 0, 22, 0, 1),
        BiGradedDimension.from_matrix([[1, 0, 1], [0, 20, 0], [1, 0, 1]]),
    ),
    "abelian": SurfaceDescriptor(
        "abelian", (1, 4, 6, 4, 1),
        BiGradedDimension.from_matrix([[1, 2, 1], [2, 4, 2], [1, 2, 1]]),
    ),
    # quasi-projective; Chow ranks indexed by cycle dimension
    "A2": SurfaceDescriptor("A2", (1, 0, 0, 0, 0), _diag(1), (0, 0, 1), cellular=True, projective=False),
}


def builtin(name: str) -> SurfaceDescriptor:
    try:
        return BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown built-in surface {name!r}; choose from {sorted(BUILTINS)}") from None
