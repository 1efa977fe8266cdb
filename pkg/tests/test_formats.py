"""JSON input and output.

Oracle: trivial, round trips through the JSON readers and writers.
"""
import json

import pytest

from cluster_loops.formats import (
    InputFormatError,
    arc_from_dict,
    arc_to_dict,
    dump_json,
    load_arc,
    load_surface,
    surface_from_dict,
    surface_to_dict,
)
from cluster_loops.surface import SurfaceError, TaggedArc

from conftest import FIXTURES


@pytest.mark.parametrize("name", ["single", "double"])
def test_round_trip(name, tmp_path):
    t = load_surface(FIXTURES / name / "surface.json")
    arc = load_arc(FIXTURES / name / "arc.json")
    assert surface_from_dict(surface_to_dict(t)) == t
    assert arc_from_dict(arc_to_dict(arc)) == arc
    dump_json(surface_to_dict(t), tmp_path / "s.json")
    assert load_surface(tmp_path / "s.json") == t


def test_exit_slots_survive():
    arc = TaggedArc((("u", "plain"), ("v", "plain")), ("1", "1"), 0, exits=(0, 2))
    doc = arc_to_dict(arc)
    assert doc["exits"] == [0, 2]
    assert arc_from_dict(doc).exits == (0, 2)


@pytest.mark.parametrize(
    "doc, fragment",
    [
        ([], "expected a JSON object"),
        ({"boundary": [], "triangles": []}, "missing key 'arcs'"),
        ({"arcs": "1", "boundary": [], "triangles": []}, "wrong type"),
        ({"arcs": [], "boundary": [], "triangles": [["1", "2"]]}, "three labels"),
        ({"arcs": [], "boundary": [], "triangles": [], "self_folded": [{"radius": "1"}]}, "'loop'"),
    ],
)
def test_bad_surfaces(doc, fragment):
    with pytest.raises(InputFormatError, match=fragment):
        surface_from_dict(doc)


@pytest.mark.parametrize(
    "doc, fragment",
    [
        ({"endpoints": [{"point": "p"}], "crossings": [], "first_triangle": 0}, "two entries"),
        ({"endpoints": [{}, {}], "crossings": [], "first_triangle": 0}, "need a 'point'"),
        ({"endpoints": [{"point": "p", "tag": "dotted"}, {"point": "q"}], "crossings": [], "first_triangle": 0},
         "unknown tag"),
        ({"endpoints": [{"point": "p"}, {"point": "q"}], "crossings": []}, "first_triangle"),
    ],
)
def test_bad_arcs(doc, fragment):
    with pytest.raises(InputFormatError, match=fragment):
        arc_from_dict(doc)


def test_format_errors_are_surface_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SurfaceError, match="not valid JSON"):
        load_surface(bad)
    with pytest.raises(OSError):
        load_arc(tmp_path / "missing.json")


def test_files_are_plain_json(tmp_path):
    dump_json({"a": [1, 2]}, tmp_path / "x.json")
    assert json.loads((tmp_path / "x.json").read_text()) == {"a": [1, 2]}
