"""Canonical JSON instance format.

``{"m": int, "ranges": [[int, ...], ...], "weights": [float, ...]?,
"points": [[x, y], ...]?, "shapes": {"kind": str, "items": [[...], ...]}?}``

Indices are 0-based and ranges sorted; the optional geometric payload is
kept verbatim so generated files reproduce the instance exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .geometry import GeometryInstance
from .setsystem import SetSystem, WeightVector


@dataclass(frozen=True)
class LoadedInstance:
    system: SetSystem
    weights: WeightVector | None
    geometry: GeometryInstance | None
    kind: str | None


def instance_to_dict(system: SetSystem, weights: WeightVector | None = None,
                     geometry: GeometryInstance | None = None) -> dict:
    doc = {
        "m": system.num_points,
        "ranges": [list(r) for r in system.ranges],
    }
    if weights is not None:
        doc["weights"] = list(weights.weights)
    if geometry is not None:
        if geometry.points:
            doc["points"] = [list(p) for p in geometry.points]
        if geometry.shapes:
            doc["shapes"] = {
                "kind": geometry.kind,
                "items": [list(params) for _tag, params in geometry.shapes],
            }
        elif geometry.kind:
            doc["shapes"] = {"kind": geometry.kind, "items": []}
    return doc


_SHAPE_TAG = {"discs": "disc", "rects": "rect", "halfplanes": "halfplane", "intervals": "interval"}


def instance_from_dict(doc: dict) -> LoadedInstance:
    try:
        system = SetSystem(doc["m"], doc["ranges"])
    except KeyError as exc:
        raise ValueError(f"instance JSON is missing required key {exc}") from None
    weights = WeightVector(doc["weights"]) if doc.get("weights") is not None else None
    geometry = None
    kind = None
    if "shapes" in doc:
        kind = doc["shapes"].get("kind")
        points = tuple(tuple(p) for p in doc.get("points", []))
        tag = _SHAPE_TAG.get(kind)
        if tag is None:
            shapes = ()
        else:
            shapes = tuple((tag, tuple(item)) for item in doc["shapes"].get("items", []))
        geometry = GeometryInstance(kind, points, shapes, system)
    return LoadedInstance(system, weights, geometry, kind)


def dumps_canonical(doc: dict) -> str:
    """Deterministic JSON text (sorted keys, fixed layout, trailing newline)."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_instance(path, system: SetSystem, weights: WeightVector | None = None,
                   geometry: GeometryInstance | None = None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(instance_to_dict(system, weights, geometry)))


def read_instance(path) -> LoadedInstance:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed instance file {path}: {exc}") from None
    return instance_from_dict(doc)
