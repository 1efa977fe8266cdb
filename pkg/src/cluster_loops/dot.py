"""Graphviz DOT text for snake graphs, loop graphs, quivers and lattices.

Only text is produced; rendering is left to Graphviz.  Snake and loop graph
vertices are pinned at their lattice coordinates (use ``neato -n``).
"""
from __future__ import annotations

from typing import Iterable

from .loopgraph import LoopGraph
from .poset import HasseQuiver, Lattice
from .snakegraph import SnakeGraph, Vertex


def _vid(v: Vertex) -> str:
    return f'"{v[0]},{v[1]}"'


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def snake_to_dot(g: SnakeGraph, matching: Iterable[int] = (), name: str = "snake") -> str:
    """Undirected DOT graph; edges of ``matching`` are drawn bold and red."""
    chosen = set(matching)
    lines = [f"graph {_quote(name)} {{", "  node [shape=point];"]
    for v in g.vertices:
        lines.append(f'  {_vid(v)} [pos="{v[0]},{v[1]}!"];')
    for e in g.edges:
        style = ' color=red penwidth=3' if e.id in chosen else ""
        lines.append(f"  {_vid(e.ends[0])} -- {_vid(e.ends[1])} [label={_quote(e.label)}{style}];")
    for tile in g.tiles:
        lines.append(
            f"  {_vid(tile.nw)} -- {_vid(tile.se)} "
            f"[label={_quote(tile.diagonal)} style=dotted];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def loop_to_dot(lg: LoopGraph, matching: Iterable[int] = (), name: str = "loop") -> str:
    """The underlying snake graph with each cut edge dashed and its partner blue.

    ``matching`` is a set of glued edge ids; it is drawn on the cut edge
    ``c`` when it contains the identified pair.
    """
    chosen = set(matching)
    cut_c = {cut.c for cut in lg.cuts}
    cut_cp = {cut.c_prime for cut in lg.cuts}
    g = lg.snake
    lines = [f"graph {_quote(name)} {{", "  node [shape=point];"]
    for v in g.vertices:
        lines.append(f'  {_vid(v)} [pos="{v[0]},{v[1]}!"];')
    for e in g.edges:
        attrs = [f"label={_quote(e.label)}"]
        if e.id in cut_c:
            attrs.append("style=dashed")
        if e.id in cut_cp:
            attrs.append("color=blue")
        if lg.glued_id(e.id) in chosen and e.id not in cut_cp:
            attrs.append("color=red penwidth=3")
        lines.append(f"  {_vid(e.ends[0])} -- {_vid(e.ends[1])} [{' '.join(attrs)}];")
    for cut in lg.cuts:
        for a, b in ((cut.x, cut.x_prime), (cut.y, cut.y_prime)):
            lines.append(f"  {_vid(a)} -- {_vid(b)} [style=invis constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def quiver_to_dot(q: HasseQuiver, labels: dict[int, str] | None = None, name: str = "quiver") -> str:
    lines = [f"digraph {_quote(name)} {{"]
    for v in q.vertices:
        text = str(v) if labels is None else f"{v}: {labels[v]}"
        lines.append(f"  {v} [label={_quote(text)}];")
    for a, b in sorted(q.arrows):
        lines.append(f"  {a} -> {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_to_dot(lat: Lattice, name: str = "lattice") -> str:
    """One node per good matching, labelled by its height; arrows are positive twists."""
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;"]
    for i, gm in enumerate(lat.matchings):
        h = ",".join(str(j) for j in sorted(gm.height)) or "-"
        lines.append(f"  m{i} [label={_quote('{' + h + '}')}];")
    for a, b, j in sorted(lat.arrows):
        lines.append(f"  m{a} -> m{b} [label={_quote(str(j))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
