"""DOT text output.

Oracle: trivial, node and edge counts read off the lattice and quiver.
"""
import re

from cluster_loops.dot import lattice_to_dot, loop_to_dot, quiver_to_dot, snake_to_dot
from cluster_loops.loopgraph import loop_graph
from cluster_loops.poset import lattice, quiver_of_loop
from cluster_loops.snakegraph import SnakeGraph, perfect_matchings


def balanced(text: str) -> bool:
    return text.count("{") == text.count("}") and text.rstrip().endswith("}")


def test_snake_dot_highlights_matching():
    g = SnakeGraph.from_shape("RT")
    m = perfect_matchings(g)[0]
    text = snake_to_dot(g, m)
    assert text.startswith('graph "snake" {')
    assert text.count("color=red") == len(m)
    assert text.count("style=dotted") == len(g)
    assert balanced(text)


def test_loop_dot_marks_cut(single_case):
    lg = loop_graph(*single_case)
    text = loop_to_dot(lg, lg.good_matchings[0].edges)
    assert "style=dashed" in text and "color=blue" in text
    assert balanced(text)


def test_lattice_dot_has_one_node_per_matching(double_case):
    lg = loop_graph(*double_case)
    lat = lattice(lg)
    text = lattice_to_dot(lat)
    assert len(re.findall(r"^\s+m\d+ \[label=", text, flags=re.M)) == 12
    assert len(re.findall(r"->", text)) == len(lat.arrows)
    assert 'label="{-}"' in text  # the minimal matching has empty height


def test_quiver_dot_labels(single_case):
    lg = loop_graph(*single_case)
    q = quiver_of_loop(lg)
    text = quiver_to_dot(q, {j: lg.snake.tile(j).diagonal for j in range(1, len(lg) + 1)})
    assert text.count("->") == len(q.arrows)
    assert f'label="1: {lg.snake.tile(1).diagonal}"' in text


def test_quoting():
    g = SnakeGraph.from_shape("", diagonals=['a"b'])
    assert r'label="a\"b"' in snake_to_dot(g)
