"""Quivers of loop graphs, order ideals and the lattice of good matchings.

Oracle: brute-force enumeration of down-closed tile sets.
"""
import pytest
from hypothesis import given, settings, strategies as st

from cluster_loops.corpus import generate_cases
from cluster_loops.loopgraph import LoopGraph, loop_graph
from cluster_loops.poset import (
    CyclicQuiverError,
    HasseQuiver,
    NotAnIdealError,
    PosetError,
    check_lattice,
    ideal_covers,
    ideal_from_matching,
    lattice,
    matching_from_ideal,
    order_ideals,
    order_ideals_bruteforce,
    quiver_of_loop,
    quiver_of_snake,
)
from cluster_loops.snakegraph import SnakeGraph, height, perfect_matchings
from cluster_loops.surface import UnsupportedInputError

quivers = st.integers(1, 8).flatmap(
    lambda d: st.sets(
        st.tuples(st.integers(1, d), st.integers(1, d)).filter(lambda p: p[0] > p[1]), max_size=10
    ).map(lambda arrows: HasseQuiver(d, frozenset(arrows)))
)


# --------------------------------------------------------------------------
# quivers

def test_cycle_is_rejected():
    with pytest.raises(CyclicQuiverError):
        HasseQuiver(3, frozenset({(1, 2), (2, 3), (3, 1)}))
    with pytest.raises(PosetError):
        HasseQuiver(2, frozenset({(1, 5)}))


def test_transitive_reduction_drops_shortcuts():
    q = HasseQuiver(3, frozenset({(1, 2), (2, 3), (1, 3)}))
    assert not q.is_hasse()
    r = q.transitive_reduction()
    assert r.arrows == frozenset({(1, 2), (2, 3)})
    assert r.is_hasse()
    # the order, hence the ideals, are unchanged
    assert set(order_ideals(q)) == set(order_ideals(r))


@settings(max_examples=80)
@given(quivers)
def test_ideal_enumeration_matches_bruteforce(q):
    fast = order_ideals(q)
    assert len(fast) == len(set(fast))
    assert set(fast) == set(order_ideals_bruteforce(q))
    assert all(q.is_ideal(i) for i in fast)


@settings(max_examples=40)
@given(quivers)
def test_covers_add_one_element(q):
    for lo, hi in ideal_covers(order_ideals(q)):
        assert lo < hi and len(hi - lo) == 1


@settings(max_examples=60)
@given(st.lists(st.sampled_from("RT"), max_size=8).map("".join))
def test_snake_heights_are_the_ideals(shape):
    """Oracle: brute-force ideals against heights of all perfect matchings."""
    g = SnakeGraph.from_shape(shape)
    q = quiver_of_snake(g)
    heights = {height(g, m) for m in perfect_matchings(g)}
    assert heights == set(order_ideals_bruteforce(q))


def test_abstract_loop_graph_can_have_cyclic_quiver():
    lg = LoopGraph.from_snake(SnakeGraph.from_shape("RTR"), start_k=3)
    with pytest.raises(CyclicQuiverError):
        quiver_of_loop(lg)


# --------------------------------------------------------------------------
# lattices of surface loop graphs

def test_single_fixture_lattice(single_case):
    lg = loop_graph(*single_case)
    rep = check_lattice(lg)
    assert rep.ok, rep
    assert rep.good == rep.ideals == 15
    lat = lattice(lg)
    assert len(lat.sources) == len(lat.sinks) == 1


def test_double_fixture_quiver_keeps_its_shortcut(double_case):
    lg = loop_graph(*double_case)
    q = quiver_of_loop(lg)
    assert not q.is_hasse()
    assert q.transitive_reduction().is_hasse()
    assert check_lattice(lg).ok
    assert len(lattice(lg).matchings) == 12


def test_ideal_matching_round_trip(single_case):
    lg = loop_graph(*single_case)
    for gm in lg.good_matchings:
        ideal = ideal_from_matching(lg, gm)
        assert matching_from_ideal(lg, ideal) == gm
    with pytest.raises(NotAnIdealError):
        # tile 1 sits above tile 2 in this quiver, so {1} alone is not downward closed
        matching_from_ideal(lg, {1})


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(["plain", "single", "double"]))
def test_lattice_checks_on_corpus(seed, tags):
    case = next(generate_cases(1, seed=seed, tags=tags, max_tiles=7))
    try:
        lg = loop_graph(case.surface, case.arc)
    except UnsupportedInputError:
        return
    rep = check_lattice(lg)
    assert rep.ok, (case.note, rep)
