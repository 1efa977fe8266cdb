"""Triangulation data, validation, flips and crossing-sequence resolution.

Oracles: hand-built surfaces and the textbook matrix mutation rule.
"""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cluster_loops.corpus import generate_cases
from cluster_loops.mutation import mutate_matrix
from cluster_loops.surface import (
    NOTCHED,
    PLAIN,
    CombinatorialTriangulation,
    Endpoint,
    SelfFolded,
    SurfaceError,
    TaggedArc,
    UnknownLabelError,
    adjacency_matrix,
    arc_endpoints,
    arc_path,
    flip,
    flip_with_arc,
    ideal_to_tagged,
    pi_T,
    puncture_star,
    require_valid,
    reverse_arc,
    tagged_to_ideal,
    validate_arc,
    validate_triangulation,
)

SQUARE = CombinatorialTriangulation(
    arcs=("1",), boundary=("a", "b", "c", "d"), triangles=(("1", "a", "b"), ("1", "c", "d"))
)
FOLDED_DIGON = CombinatorialTriangulation(
    arcs=("r", "l"), boundary=("b1", "b2"),
    triangles=(("r", "r", "l"), ("l", "b1", "b2")),
    self_folded=(SelfFolded("r", "l", "p"),), punctures=("p",),
)

corpus_surfaces = st.integers(0, 10_000).map(
    lambda s: next(generate_cases(1, seed=s, max_flips=6)).surface
)


def with_triangles(t, triangles, **kw):
    return CombinatorialTriangulation(
        arcs=kw.get("arcs", t.arcs), boundary=kw.get("boundary", t.boundary),
        triangles=triangles, self_folded=kw.get("self_folded", t.self_folded),
        punctures=t.punctures,
    )


# --------------------------------------------------------------------------
# validation

def test_small_surfaces_are_valid(single_case, double_case):
    for t in (SQUARE, FOLDED_DIGON, single_case[0], double_case[0]):
        assert validate_triangulation(t) == []


def test_square_has_four_boundary_vertices():
    assert SQUARE.vertex_count == 4
    assert not any(SQUARE.is_puncture(v) for v in range(4))
    assert SQUARE.puncture_vertices == ()


@pytest.mark.parametrize(
    "triangles, kw, fragment",
    [
        ((("1", "a", "b"), ("1", "c", "c")), {}, "boundary segment 'd' occupies 0"),
        ((("1", "a", "b"), ("1", "c", "e")), {}, "'e' used in a triangle but not declared"),
        ((("1", "a", "b"), ("x", "c", "d")), {}, "arc '1' occupies 1"),
        ((("1", "a", "b"), ("1", "c", "d")), {"boundary": ("a", "b", "c", "d", "a")}, "declared twice"),
    ],
)
def test_validation_reports_each_problem(triangles, kw, fragment):
    diags = validate_triangulation(with_triangles(SQUARE, triangles, **kw))
    assert any(fragment in d for d in diags), diags
    with pytest.raises(SurfaceError):
        require_valid(with_triangles(SQUARE, triangles, **kw))


def test_folded_side_needs_a_record():
    t = with_triangles(FOLDED_DIGON, FOLDED_DIGON.triangles, self_folded=())
    assert any("no self_folded record" in d for d in validate_triangulation(t))


def test_self_folded_record_must_match_geometry():
    t = with_triangles(FOLDED_DIGON, FOLDED_DIGON.triangles, self_folded=(SelfFolded("l", "r", "p"),))
    assert any("not folded inside" in d for d in validate_triangulation(t))


# --------------------------------------------------------------------------
# exchange matrices

def test_self_folded_radius_rows_use_the_loop():
    assert pi_T(FOLDED_DIGON, "r") == "l"
    assert pi_T(FOLDED_DIGON, "l") == "l"
    with pytest.raises(UnknownLabelError):
        pi_T(FOLDED_DIGON, "b1")
    assert np.array_equal(adjacency_matrix(FOLDED_DIGON), np.zeros((2, 2)))


@settings(max_examples=40, deadline=None)
@given(corpus_surfaces)
def test_adjacency_matrix_is_skew_symmetric(t):
    B = adjacency_matrix(t)
    assert np.array_equal(B, -B.T)
    assert np.abs(B).max(initial=0) <= 2


@settings(max_examples=30, deadline=None)
@given(corpus_surfaces)
def test_flip_changes_matrix_by_mutation(t):
    """Oracle: matrix mutation, implemented independently of the triangle data."""
    B = adjacency_matrix(t)
    for k, a in enumerate(t.arcs):
        try:
            t2 = flip(t, a)
        except SurfaceError:
            continue
        assert validate_triangulation(t2) == []
        assert np.array_equal(adjacency_matrix(t2), mutate_matrix(B, k))
        try:
            back = flip(t2, a)
        except SurfaceError:  # the flip produced a self-folded triangle
            continue
        assert np.array_equal(adjacency_matrix(back), B)


def test_flip_refuses_boundary_and_folded_arcs():
    with pytest.raises(SurfaceError):
        flip(SQUARE, "a")
    with pytest.raises(SurfaceError):
        flip(FOLDED_DIGON, "r")
    with pytest.raises(SurfaceError):
        flip(FOLDED_DIGON, "l")


# --------------------------------------------------------------------------
# punctures and tagged triangulations

def test_puncture_star_of_fixture(single_case):
    t, _ = single_case
    star = puncture_star(t, "p")
    assert len(star) == len(t.corners_at(t.vertex_by_name("p")))
    assert set(star) <= set(t.arcs)
    with pytest.raises(SurfaceError):
        puncture_star(SQUARE, 0)


def test_loop_of_self_folded_triangle_is_notched_radius():
    tt = ideal_to_tagged(FOLDED_DIGON)
    v = FOLDED_DIGON.self_folded_puncture_vertex("r")
    assert tt.entry("l").underlying == "r"
    assert tt.entry("l").notched_at == frozenset({v})
    assert tt.entry("r").notched_at == frozenset()
    assert tagged_to_ideal(tt) == FOLDED_DIGON


# --------------------------------------------------------------------------
# arcs

def test_square_diagonal_path():
    arc = TaggedArc((Endpoint("v0"), Endpoint("v2")), ("1",), first_triangle=0)
    steps = arc_path(SQUARE, arc)
    assert [s.triangle for s in steps] == [0, 1]
    assert validate_arc(SQUARE, arc) == []
    a, b = arc_endpoints(SQUARE, arc)
    assert a != b


@pytest.mark.parametrize(
    "crossings, first, fragment",
    [(("1",), 5, "out of range"), (("a",), 0, "not an interior arc"), (("1", "1"), 0, "no side")],
)
def test_arc_path_errors(crossings, first, fragment):
    arc = TaggedArc((Endpoint("u"), Endpoint("v")), crossings, first_triangle=first)
    with pytest.raises(SurfaceError, match=fragment):
        arc_path(SQUARE, arc)


def test_notched_boundary_endpoint_is_reported():
    arc = TaggedArc((Endpoint("v0", NOTCHED), Endpoint("v2")), ("1",), first_triangle=0)
    assert any("boundary" in d for d in validate_arc(SQUARE, arc))


def test_last_triangle_is_checked():
    arc = TaggedArc((Endpoint("u"), Endpoint("v")), ("1",), first_triangle=0, last_triangle=0)
    with pytest.raises(SurfaceError, match="last_triangle"):
        arc_path(SQUARE, arc)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_reverse_arc_is_an_involution(seed):
    case = next(generate_cases(1, seed=seed))
    t, arc = case.surface, case.arc
    rev = reverse_arc(t, arc)
    assert rev.crossings == arc.crossings[::-1]
    assert rev.endpoints == arc.endpoints[::-1]
    assert arc_path(t, reverse_arc(t, rev)) == arc_path(t, arc)


def test_flip_with_arc_keeps_curve_valid(single_case):
    t, arc = single_case
    for lab in t.arcs:
        try:
            t2, arc2 = flip_with_arc(t, lab, arc)
        except SurfaceError:
            continue
        assert validate_triangulation(t2) == []
        assert validate_arc(t2, arc2) == []
        assert arc2.endpoints == arc.endpoints


def test_tags_are_validated():
    with pytest.raises(SurfaceError):
        TaggedArc((Endpoint("u"), Endpoint("v")), ("1",), 0, exits=(0, 1))
    arc = TaggedArc((("u", PLAIN), ("v", NOTCHED)), ("1",), 0)
    assert arc.notched_ends == (False, True)
    assert arc.with_tags(NOTCHED, PLAIN).notched_ends == (True, False)
