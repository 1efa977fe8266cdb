"""Command-line interface: outputs and exit codes.

Oracles: the stored expansion goldens and the mutation oracle fixtures.
"""
import io
import json
import subprocess
import sys

import pytest

from cluster_loops.cli import EXIT_CODES, main
from cluster_loops.laurent import parse

from conftest import FIXTURES, ORACLE_FILES


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def inputs(name):
    d = FIXTURES / name
    return ["--surface", str(d / "surface.json"), "--arc", str(d / "arc.json")]


@pytest.mark.parametrize("name", ["single", "double"])
def test_expand_prints_golden(name):
    code, out, err = run("expand", *inputs(name))
    assert code == 0 and err == ""
    assert out == (FIXTURES / name / "expand.golden").read_text()


def test_expand_fraction_form_and_matchings():
    code, out, _ = run("expand", *inputs("double"), "--form", "fraction", "--emit-matchings")
    assert code == 0
    lines = out.splitlines()
    num, den = lines[0].split(") / (")
    assert parse(num.lstrip("(")) / parse(den.rstrip(")")) == parse(run("expand", *inputs("double"))[1])
    assert "# good matchings: 12" in lines
    assert sum(1 for ln in lines if ln[:1].isdigit()) == 12


def test_specialized_boundary_drops_boundary_variables():
    code, out, _ = run("expand", *inputs("single"), "--specialize-boundary", "1")
    assert code == 0
    assert not {"x7", "x8", "x15"} & parse(out).variables()


def test_lattice_to_file(tmp_path):
    target = tmp_path / "lat.dot"
    code, out, _ = run("lattice", *inputs("double"), "-o", str(target))
    assert code == 0 and out == ""
    assert target.read_text().count("[label=\"{") == 12


@pytest.mark.parametrize("what, marker", [("quiver", "->"), ("loop", "style=dashed")])
def test_lattice_other_views(what, marker):
    code, out, _ = run("lattice", *inputs("single"), "--what", what)
    assert code == 0 and marker in out


@pytest.mark.parametrize("name, count", [("single", 15), ("double", 12)])
def test_verify_bijection(name, count):
    code, out, _ = run("verify-bijection", *inputs(name))
    assert code == 0
    assert f"good matchings: {count}" in out
    assert "formula equals expansion: True" in out


def test_oracle_matches_fixture(tmp_path):
    doc = json.loads(ORACLE_FILES[0].read_text())
    surface = tmp_path / "surface.json"
    surface.write_text(json.dumps(doc["surface"]))
    code, out, _ = run(
        "oracle", "--surface", str(surface), "--flips", ",".join(doc["flips"]),
        "--position", doc["position"], "--specialize-boundary", "1",
    )
    assert code == 0
    assert parse(out) == parse(doc["expected"])


def test_oracle_compares_with_expansion():
    flips = json.loads((FIXTURES / "single" / "oracle.json").read_text())
    code, out, _ = run("oracle", *inputs("single"), "--flips", ",".join(flips["flips"]),
                       "--position", flips["position"])
    assert code == 0 and out.strip().endswith("matches expansion: True")


def test_selftest_small():
    code, out, _ = run("selftest", "--seed", "3", "--count", "4")
    assert code == 0
    assert out.strip().endswith("0 failures")


# --------------------------------------------------------------------------
# failures

def test_missing_file_is_io_error(tmp_path):
    code, out, err = run("expand", "--surface", str(tmp_path / "no.json"), "--arc", str(tmp_path / "no.json"))
    assert code == EXIT_CODES["IO_ERROR"] == 3
    assert err.startswith("error: IO_ERROR: ") and err.count("\n") == 1


def test_bad_json_is_format_error(tmp_path):
    bad = tmp_path / "s.json"
    bad.write_text("[1, 2")
    code, _, err = run("expand", "--surface", str(bad), "--arc", str(FIXTURES / "single" / "arc.json"))
    assert code == EXIT_CODES["FORMAT_ERROR"]
    assert "FORMAT_ERROR" in err


def test_inconsistent_surface_is_invalid_input(tmp_path):
    doc = json.loads((FIXTURES / "single" / "surface.json").read_text())
    doc["triangles"][0][0] = "99"
    bad = tmp_path / "s.json"
    bad.write_text(json.dumps(doc))
    code, _, err = run("expand", "--surface", str(bad), "--arc", str(FIXTURES / "single" / "arc.json"))
    assert code == EXIT_CODES["INVALID_INPUT"]
    assert "INVALID_INPUT" in err


def test_plain_arc_in_verify_is_unsupported(tmp_path):
    doc = json.loads((FIXTURES / "single" / "arc.json").read_text())
    doc["endpoints"][0]["tag"] = "plain"
    arc = tmp_path / "a.json"
    arc.write_text(json.dumps(doc))
    code, _, err = run("verify-bijection", "--surface", str(FIXTURES / "single" / "surface.json"), "--arc", str(arc))
    assert code == EXIT_CODES["UNSUPPORTED_INPUT"]


def test_unknown_flip_label():
    code, _, err = run("oracle", "--surface", str(FIXTURES / "single" / "surface.json"),
                       "--flips", "1,42", "--position", "1")
    assert code == EXIT_CODES["INVALID_INPUT"]
    assert "'42'" in err


def test_argument_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        run("expand", "--surface", "x.json")
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        run("expand", *inputs("single"), "--specialize-boundary", "2")


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cluster_loops.cli", "expand", *inputs("double")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == (FIXTURES / "double" / "expand.golden").read_text()
