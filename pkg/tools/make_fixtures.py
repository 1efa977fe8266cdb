"""Regenerate the JSON fixtures under ``tests/fixtures``.

The two worked examples are written out by hand below.  Oracle fixtures are
drawn from seeded random flip sequences on small surfaces; each records the
flip sequence, the arc it produces (as a curve on the starting
triangulation), and the mutation result with boundary variables set to 1.
Run from the repository root::

    python3 tools/make_fixtures.py
"""
from __future__ import annotations

import random
from pathlib import Path

from cluster_loops.corpus import flip_sequence_case, punctured_polygon
from cluster_loops.expansion import expand, specialize_boundary
from cluster_loops.formats import arc_to_dict, dump_json, surface_to_dict
from cluster_loops.mutation import variable_by_flips
from cluster_loops.surface import (
    NOTCHED,
    PLAIN,
    CombinatorialTriangulation,
    Endpoint,
    TaggedArc,
    UnsupportedInputError,
    flip,
)

ROOT = Path(__file__).resolve().parents[1] / "tests" / "fixtures"

SINGLE_SURFACE = CombinatorialTriangulation(
    arcs=tuple("123456"),
    boundary=("7", "8", "10", "11", "14", "15"),
    triangles=(("4", "1", "3"), ("1", "10", "2"), ("2", "15", "3"),
               ("4", "14", "5"), ("5", "6", "11"), ("6", "8", "7")),
    punctures=("p",),
)
SINGLE_ARC = TaggedArc((Endpoint("p", NOTCHED), Endpoint("q", PLAIN)), ("4", "5", "6"), 0, name="single")
SINGLE_FLIPS = ["2", "1", "3", "4", "5", "6"]

DOUBLE_SURFACE = CombinatorialTriangulation(
    arcs=tuple(str(i) for i in range(1, 10)),
    boundary=("10", "11", "12"),
    triangles=(("11", "2", "1"), ("9", "12", "1"), ("6", "8", "7"), ("9", "7", "8"),
               ("10", "5", "3"), ("5", "6", "4"), ("2", "3", "4")),
    punctures=("s", "p", "q"),
)
DOUBLE_ARC = TaggedArc((Endpoint("p", NOTCHED), Endpoint("q", NOTCHED)), ("6",), 2, name="double")
DOUBLE_FLIPS = ["6", "8", "7", "6", "4", "3", "5", "8"]

ANNULUS = CombinatorialTriangulation(
    arcs=tuple("1234"),
    boundary=tuple("5678"),
    triangles=(("1", "2", "5"), ("7", "3", "2"), ("3", "4", "6"), ("8", "1", "4")),
)


def _flippable(t: CombinatorialTriangulation) -> list[str]:
    return [
        a for a in t.arcs
        if a not in t.radius_to_loop and a not in t.loop_to_radius
        and len({s.triangle for s in t.slots[a]}) == 2
    ]


def oracle_case(rng: random.Random, t: CombinatorialTriangulation, min_tiles: int) -> dict:
    while True:
        flips, cur = [], t
        for _ in range(rng.randint(2, 7)):
            f = rng.choice(_flippable(cur))
            flips.append(f)
            cur = flip(cur, f)
        try:
            t2, arc = flip_sequence_case(t, flips)
        except UnsupportedInputError:
            continue
        if len(arc.crossings) < min_tiles:
            continue
        value = variable_by_flips(t2, flips, flips[-1])
        if value != specialize_boundary(expand(t2, arc).polynomial, t2):  # pragma: no cover
            raise SystemExit(f"oracle disagrees on {flips}")
        return {
            "surface": surface_to_dict(t2), "arc": arc_to_dict(arc),
            "flips": flips, "position": flips[-1], "expected": str(value),
        }


def main() -> None:
    for name, t, arc, flips in (
        ("single", SINGLE_SURFACE, SINGLE_ARC, SINGLE_FLIPS),
        ("double", DOUBLE_SURFACE, DOUBLE_ARC, DOUBLE_FLIPS),
    ):
        d = ROOT / name
        d.mkdir(parents=True, exist_ok=True)
        dump_json(surface_to_dict(t), d / "surface.json")
        dump_json(arc_to_dict(arc), d / "arc.json")
        dump_json({"flips": flips, "position": flips[-1]}, d / "oracle.json")
        (d / "expand.golden").write_text(str(expand(t, arc).polynomial) + "\n", encoding="utf-8")

    rng = random.Random(20240611)
    families = [
        ("punctured_square", lambda: punctured_polygon(rng, 4, 1)[0], 2),
        ("punctured_pentagon", lambda: punctured_polygon(rng, 5, 1)[0], 2),
        ("annulus", lambda: ANNULUS, 2),
        ("hexagon", lambda: punctured_polygon(rng, 6, 0)[0], 2),
        ("heptagon", lambda: punctured_polygon(rng, 7, 0)[0], 3),
        ("twice_punctured_triangle", lambda: punctured_polygon(rng, 3, 2)[0], 2),
    ]
    out = ROOT / "oracle"
    out.mkdir(parents=True, exist_ok=True)
    for family, make, min_tiles in families:
        t = make()
        for i in range(2):
            dump_json(oracle_case(rng, t, min_tiles), out / f"{family}_{i + 1}.json")


if __name__ == "__main__":
    main()
