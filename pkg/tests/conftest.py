"""Shared fixtures: the frozen surface/arc files under ``tests/fixtures``."""
from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest

from cluster_loops.formats import load_arc, load_surface, surface_from_dict, arc_from_dict

FIXTURES = Path(__file__).parent / "fixtures"
ORACLE_FILES = sorted((FIXTURES / "oracle").glob("*.json"))


def load_case(name: str):
    """``(surface, arc)`` from ``tests/fixtures/<name>``."""
    d = FIXTURES / name
    return load_surface(d / "surface.json"), load_arc(d / "arc.json")


def load_flips(name: str) -> tuple[list[str], str]:
    doc = json.loads((FIXTURES / name / "oracle.json").read_text())
    return doc["flips"], doc["position"]


def load_oracle_fixture(path: Path):
    doc = json.loads(path.read_text())
    return surface_from_dict(doc["surface"]), arc_from_dict(doc["arc"]), doc


@pytest.fixture(scope="session")
def single_case():
    return load_case("single")


@pytest.fixture(scope="session")
def double_case():
    return load_case("double")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("[", 1)[1].split("]", 1)[0])):
            terminalreporter.write_line(line)
