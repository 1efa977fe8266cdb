"""Generated surfaces and arcs.

Oracle: the mutation oracle, run on the surface each flip sequence returns.
"""
import pytest

from cluster_loops.corpus import corpus_seed, flip_sequence_case, generate_cases
from cluster_loops.surface import UnsupportedInputError, validate_arc, validate_triangulation

from cluster_loops.expansion import expand, specialize_boundary
from cluster_loops.mutation import variable_by_flips

from conftest import ORACLE_FILES, load_case, load_oracle_fixture


def test_same_seed_same_cases():
    a = [(c.surface, c.arc) for c in generate_cases(5, seed=9)]
    b = [(c.surface, c.arc) for c in generate_cases(5, seed=9)]
    assert a == b


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("CLUSTER_LOOPS_SEED", "123")
    assert corpus_seed() == 123
    monkeypatch.delenv("CLUSTER_LOOPS_SEED")
    assert corpus_seed(7) == 7


@pytest.mark.parametrize("tags, notches", [("plain", 0), ("single", 1), ("double", 2)])
def test_tag_policy(tags, notches):
    for case in generate_cases(15, seed=4, tags=tags, max_tiles=8):
        assert validate_triangulation(case.surface) == []
        assert validate_arc(case.surface, case.arc) == []
        assert sum(case.arc.notched_ends) == notches
        assert len(case.arc.crossings) <= 8


@pytest.mark.parametrize("path", ORACLE_FILES, ids=lambda p: p.stem)
def test_flip_sequence_case_agrees_with_oracle(path):
    """The arc made by the last flip expands to the variable mutation puts there."""
    t, _, doc = load_oracle_fixture(path)
    t2, arc = flip_sequence_case(t, doc["flips"])
    got = specialize_boundary(expand(t2, arc).polynomial, t2)
    assert got == specialize_boundary(variable_by_flips(t2, doc["flips"], doc["position"]), t2)
    with pytest.raises(ValueError):
        flip_sequence_case(t, [])


def test_flip_sequence_back_to_an_arc_of_t_is_unsupported():
    t, _ = load_case("single")
    with pytest.raises(UnsupportedInputError):
        flip_sequence_case(t, ["4", "4"])
