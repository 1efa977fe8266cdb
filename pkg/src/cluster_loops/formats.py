"""JSON reading and writing for surfaces and tagged arcs.

Surface files hold ``arcs``, ``boundary``, ``punctures``, ``marked_points``,
``triangles`` (clockwise label triples) and ``self_folded`` (a list of
``{"radius", "loop", "puncture"}`` objects).  Arc files hold ``name``,
``endpoints`` (two ``{"point", "tag"}`` objects), ``crossings``,
``first_triangle`` and optionally ``last_triangle``.  Arc files may also carry
``exits``, one slot position per crossing, for curves that pass the folded side
of a self-folded triangle.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .surface import (
    NOTCHED,
    PLAIN,
    CombinatorialTriangulation,
    Endpoint,
    SelfFolded,
    SurfaceError,
    TaggedArc,
)


class InputFormatError(SurfaceError):
    """A JSON document that does not describe a surface or an arc."""


def _require(doc: dict, key: str, kind: type | tuple, where: str):
    if key not in doc:
        raise InputFormatError(f"{where}: missing key {key!r}")
    val = doc[key]
    if not isinstance(val, kind):
        raise InputFormatError(f"{where}: {key!r} has the wrong type")
    return val


def surface_from_dict(doc: dict[str, Any]) -> CombinatorialTriangulation:
    if not isinstance(doc, dict):
        raise InputFormatError("surface: expected a JSON object")
    arcs = _require(doc, "arcs", list, "surface")
    boundary = _require(doc, "boundary", list, "surface")
    triangles = _require(doc, "triangles", list, "surface")
    for tri in triangles:
        if not isinstance(tri, list) or len(tri) != 3:
            raise InputFormatError("surface: every triangle must list three labels")
    folded = []
    for sf in doc.get("self_folded", []):
        if not isinstance(sf, dict) or "radius" not in sf or "loop" not in sf:
            raise InputFormatError("surface: self_folded entries need 'radius' and 'loop'")
        folded.append(SelfFolded(str(sf["radius"]), str(sf["loop"]), str(sf.get("puncture", ""))))
    return CombinatorialTriangulation(
        arcs=tuple(arcs),
        boundary=tuple(boundary),
        triangles=tuple(tuple(tri) for tri in triangles),
        self_folded=tuple(folded),
        punctures=tuple(str(p) for p in doc.get("punctures", [])),
        marked_points=tuple(str(m) for m in doc.get("marked_points", [])),
    )


def surface_to_dict(t: CombinatorialTriangulation) -> dict[str, Any]:
    return {
        "arcs": list(t.arcs),
        "boundary": list(t.boundary),
        "punctures": list(t.punctures),
        "marked_points": list(t.marked_points),
        "triangles": [list(tri) for tri in t.triangles],
        "self_folded": [
            {"radius": sf.radius, "loop": sf.loop, "puncture": sf.puncture} for sf in t.self_folded
        ],
    }


def arc_from_dict(doc: dict[str, Any]) -> TaggedArc:
    if not isinstance(doc, dict):
        raise InputFormatError("arc: expected a JSON object")
    eps = _require(doc, "endpoints", list, "arc")
    if len(eps) != 2:
        raise InputFormatError("arc: 'endpoints' must have two entries")
    endpoints = []
    for ep in eps:
        if not isinstance(ep, dict) or "point" not in ep:
            raise InputFormatError("arc: endpoints need a 'point'")
        tag = ep.get("tag", PLAIN)
        if tag not in (PLAIN, NOTCHED):
            raise InputFormatError(f"arc: unknown tag {tag!r}")
        endpoints.append(Endpoint(str(ep["point"]), tag))
    crossings = _require(doc, "crossings", list, "arc")
    first = _require(doc, "first_triangle", int, "arc")
    last = doc.get("last_triangle")
    exits = doc.get("exits")
    return TaggedArc(
        endpoints=tuple(endpoints),
        crossings=tuple(str(c) for c in crossings),
        first_triangle=first,
        last_triangle=last,
        name=str(doc.get("name", "gamma")),
        exits=tuple(exits) if exits is not None else None,
    )


def arc_to_dict(arc: TaggedArc) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "name": arc.name,
        "endpoints": [{"point": e.point, "tag": e.tag} for e in arc.endpoints],
        "crossings": list(arc.crossings),
        "first_triangle": arc.first_triangle,
        "last_triangle": arc.last_triangle,
    }
    if arc.exits is not None:
        doc["exits"] = list(arc.exits)
    return doc


def _read(path: str | Path) -> Any:
    text = Path(path).read_text(encoding="utf-8")  # OSError propagates to the caller
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc


def load_surface(path: str | Path) -> CombinatorialTriangulation:
    return surface_from_dict(_read(path))


def load_arc(path: str | Path) -> TaggedArc:
    return arc_from_dict(_read(path))


def dump_json(doc: Any, path: str | Path) -> None:
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
