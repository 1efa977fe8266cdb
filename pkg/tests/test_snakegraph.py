"""Snake graphs: shapes, tiles from surfaces, perfect matchings, heights.

Oracles: Fibonacci and d + 1 counts, and brute-force backtracking.
"""
import pytest
from hypothesis import given, settings, strategies as st

from cluster_loops.corpus import generate_cases
from cluster_loops.loopgraph import hooked_path
from cluster_loops.snakegraph import (
    SnakeGraph,
    SnakeGraphError,
    diagonal_orientation,
    height,
    is_perfect_matching,
    matchings_by_backtracking,
    perfect_matchings,
    snake_graph_from_path,
)
from cluster_loops.surface import arc_path

shapes = st.lists(st.sampled_from("RT"), max_size=9).map("".join)


def brute_count(g: SnakeGraph) -> int:
    return len(matchings_by_backtracking(g.vertices, [(e.id, *e.ends) for e in g.edges]))


def fib(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@pytest.mark.parametrize("d", range(1, 11))
def test_row_of_tiles_has_fibonacci_count(d):
    g = SnakeGraph.from_shape("R" * (d - 1))
    assert len(perfect_matchings(g)) == brute_count(g) == fib(d + 2)


@pytest.mark.parametrize("d", range(1, 11))
def test_zigzag_has_linear_count(d):
    g = SnakeGraph.from_shape(("RT" * d)[: d - 1])
    assert len(perfect_matchings(g)) == brute_count(g) == d + 1


@settings(max_examples=80)
@given(shapes)
def test_tile_sweep_agrees_with_backtracking(shape):
    g = SnakeGraph.from_shape(shape)
    ms = perfect_matchings(g)
    assert len(ms) == len(set(ms)) == brute_count(g)
    assert all(is_perfect_matching(g, m) for m in ms)


@settings(max_examples=60)
@given(shapes)
def test_height_is_injective_with_empty_and_full_extremes(shape):
    g = SnakeGraph.from_shape(shape)
    heights = [height(g, m) for m in perfect_matchings(g)]
    assert len(set(heights)) == len(heights)
    assert heights.count(frozenset()) == 1
    assert heights.count(frozenset(range(1, len(g) + 1))) == 1


def test_shape_geometry():
    g = SnakeGraph.from_shape("RT")
    assert [t.origin for t in g.tiles] == [(0, 0), (1, 0), (1, 1)]
    assert [t.rel for t in g.tiles] == [1, -1, 1]
    # consecutive tiles share exactly one edge
    assert g.edge(1, "E") == g.edge(2, "W")
    assert g.edge(2, "N") == g.edge(3, "S")
    assert len(g.vertices) == 2 * len(g) + 2
    assert len(g.edges) == 3 * len(g) + 1
    assert "shape=RT" in repr(g)


def test_diagonal_orientation_covers_every_tile():
    g = SnakeGraph.from_shape("RTR")
    for m in perfect_matchings(g):
        orient = diagonal_orientation(g, m)
        assert set(orient) == {1, 2, 3, 4}


def test_unknown_tile_index_raises():
    g = SnakeGraph.from_shape("R")
    with pytest.raises((SnakeGraphError, IndexError, KeyError)):
        g.tile(7)


def test_fixture_tiles_follow_the_crossings(single_case):
    t, arc = single_case
    g = snake_graph_from_path(t, arc_path(t, arc))
    assert [tile.diagonal for tile in g.tiles] == list(arc.crossings)
    steps, k1, k2, (ls, le) = hooked_path(t, arc)
    hooked = snake_graph_from_path(t, steps)
    assert len(hooked) == ls + len(arc.crossings) + le
    assert [tile.diagonal for tile in hooked.tiles[k1 - 1:k2]] == list(arc.crossings)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_surface_snake_graphs_have_alternating_orientation(seed):
    case = next(generate_cases(1, seed=seed, tags="plain"))
    g = snake_graph_from_path(case.surface, arc_path(case.surface, case.arc))
    rels = [tile.rel for tile in g.tiles]
    assert all(a == -b for a, b in zip(rels, rels[1:]))
    assert len(perfect_matchings(g)) == brute_count(g)
