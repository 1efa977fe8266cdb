"""Hooks, loop-graph gluing, good matchings and cut classification.

Oracle: brute-force enumeration of perfect matchings of the glued graph.
"""
import pytest
from hypothesis import given, settings, strategies as st

from cluster_loops.corpus import generate_cases
from cluster_loops.loopgraph import (
    CCW,
    CW,
    LoopGraph,
    NotGoodMatchingError,
    check_formula_hypotheses,
    hooked_path,
    loop_graph,
)
from cluster_loops.snakegraph import SnakeGraph, SnakeGraphError, perfect_matchings
from cluster_loops.surface import Endpoint, SurfaceError, TaggedArc, UnsupportedInputError

loop_cases = st.tuples(st.integers(0, 10_000), st.sampled_from(["single", "double"])).map(
    lambda a: next(generate_cases(1, seed=a[0], tags=a[1], max_tiles=7))
)


def test_single_fixture_shape(single_case):
    t, arc = single_case
    lg = loop_graph(t, arc)
    assert len(lg) == 6
    assert [(c.end, c.k) for c in lg.cuts] == [("start", 4)]
    assert (lg.k1, lg.k2) == (4, 6)
    assert len(lg.good_matchings) == 15
    assert {gm.cut_types for gm in lg.good_matchings} == {("left",), ("right",), ("centre",)}


def test_double_fixture_has_two_loops_on_one_tile(double_case):
    t, arc = double_case
    lg = loop_graph(t, arc)
    assert [(c.end, c.k) for c in lg.cuts] == [("start", 3), ("end", 3)]
    assert len(lg.good_matchings) == 12
    # no good matching is centre at both cuts on a shared tile
    assert all(types.count("centre") <= 1 for types in (gm.cut_types for gm in lg.good_matchings))


def test_hook_length_is_puncture_degree(single_case):
    t, arc = single_case
    steps, k1, k2, (ls, le) = hooked_path(t, arc)
    p = t.vertex_by_name("p")
    assert ls == len(t.corners_at(p)) and le == 0
    assert k2 - k1 + 1 == len(arc.crossings)
    assert len(steps) - 1 == ls + len(arc.crossings)


def test_both_hook_directions_give_the_same_count(single_case):
    t, arc = single_case
    cw = loop_graph(t, arc, (CW, CW))
    ccw = loop_graph(t, arc, (CCW, CCW))
    assert len(cw.good_matchings) == len(ccw.good_matchings)


@settings(max_examples=40, deadline=None)
@given(loop_cases)
def test_good_matchings_match_bruteforce(case):
    """Oracle: backtracking over the glued multigraph, filtered by the cut rules."""
    try:
        lg = loop_graph(case.surface, case.arc)
    except UnsupportedInputError:
        return
    fast = {gm.edges: gm for gm in lg.good_matchings}
    slow = {gm.edges: gm for gm in lg.good_matchings_bruteforce()}
    assert fast.keys() == slow.keys()
    for key, gm in fast.items():
        assert gm.extension == slow[key].extension
        assert gm.cut_types == slow[key].cut_types
    # every good matching extends uniquely, so extensions are distinct snake matchings
    exts = [gm.extension for gm in fast.values()]
    assert len(set(exts)) == len(exts)
    assert set(exts) <= set(perfect_matchings(lg.snake))


@settings(max_examples=30, deadline=None)
@given(loop_cases)
def test_positive_twist_adds_one_tile_to_height(case):
    try:
        lg = loop_graph(case.surface, case.arc)
    except UnsupportedInputError:
        return
    for gm in lg.good_matchings:
        for j in range(1, len(lg) + 1):
            tw = lg.positive_twist(gm, j)
            if tw is not None:
                assert tw.height == gm.height | {j}
                assert j not in gm.height


def test_classify_rejects_non_perfect_and_bad_cuts(single_case):
    t, arc = single_case
    lg = loop_graph(t, arc)
    with pytest.raises(ValueError):
        lg.classify([])
    goods = {gm.edges for gm in lg.good_matchings}
    bad = [m for m in _glued_perfect(lg) if m not in goods]
    for m in bad:
        with pytest.raises(NotGoodMatchingError):
            lg.classify(m)
        assert not lg.is_good(m)


def _glued_perfect(lg):
    from cluster_loops.snakegraph import matchings_by_backtracking

    return matchings_by_backtracking(lg.glued_vertices, lg.glued_edges)


def test_from_snake_validates_cut_positions():
    g = SnakeGraph.from_shape("RTRT")
    with pytest.raises(SnakeGraphError):
        LoopGraph.from_snake(g, start_k=1)
    with pytest.raises(SnakeGraphError):
        LoopGraph.from_snake(g, end_k=5)
    with pytest.raises(SnakeGraphError, match="no later"):
        LoopGraph.from_snake(g, start_k=4, end_k=2)


def test_abstract_loop_graph_still_enumerates():
    lg = LoopGraph.from_snake(SnakeGraph.from_shape("RTR"), start_k=3)
    assert len(lg.good_matchings) == len(lg.good_matchings_bruteforce()) > 0
    assert "start->G3" in repr(lg)


def test_arc_in_triangulation_is_out_of_scope(single_case):
    t, _ = single_case
    arc = TaggedArc((Endpoint("p", "notched"), Endpoint("q")), (), first_triangle=0)
    with pytest.raises(UnsupportedInputError):
        check_formula_hypotheses(t, arc)


def test_notch_at_boundary_point_is_rejected():
    from cluster_loops.surface import CombinatorialTriangulation

    square = CombinatorialTriangulation(
        arcs=("1",), boundary=("a", "b", "c", "d"), triangles=(("1", "a", "b"), ("1", "c", "d"))
    )
    arc = TaggedArc((Endpoint("v0", "notched"), Endpoint("v2")), ("1",), first_triangle=0)
    with pytest.raises(SurfaceError):
        loop_graph(square, arc)
