"""Snake graphs: tiles glued on top of or to the right of their predecessor.

Tiles live on the integer lattice, tile ``j`` occupying the unit square with
south-west corner ``origin``.  Shared vertices and edges therefore coincide
automatically.  Edges carry a triangulation label; the diagonal of each tile
is the arc that the curve crosses there.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .surface import CombinatorialTriangulation, Slot, Step, SurfaceError

SIDES = ("S", "W", "N", "E")
TOP, RIGHT = "top", "right"

Vertex = tuple[int, int]


class SnakeGraphError(ValueError):
    pass


@dataclass(frozen=True)
class Tile:
    index: int                     # 1-based
    origin: Vertex
    diagonal: str
    sides: tuple[tuple[str, str], ...]   # (side, label) in SIDES order
    rel: int = 1
    non_ordinary: bool = False
    side_slots: tuple[tuple[str, Slot | None], ...] = ()

    def label(self, side: str) -> str:
        return dict(self.sides)[side]

    def slot(self, side: str) -> Slot | None:
        return dict(self.side_slots).get(side)

    # corners
    @property
    def sw(self) -> Vertex:
        return self.origin

    @property
    def se(self) -> Vertex:
        return (self.origin[0] + 1, self.origin[1])

    @property
    def nw(self) -> Vertex:
        return (self.origin[0], self.origin[1] + 1)

    @property
    def ne(self) -> Vertex:
        return (self.origin[0] + 1, self.origin[1] + 1)

    def side_vertices(self, side: str) -> tuple[Vertex, Vertex]:
        return {
            "S": (self.sw, self.se),
            "W": (self.sw, self.nw),
            "N": (self.nw, self.ne),
            "E": (self.se, self.ne),
        }[side]


@dataclass(frozen=True)
class Edge:
    id: int
    label: str
    ends: tuple[Vertex, Vertex]
    sides: tuple[tuple[int, str], ...]   # (tile index, side) pairs using this edge


class SnakeGraph:
    """A snake graph with labelled edges and diagonals.

    Parameters
    ----------
    tiles : sequence of Tile
        Tiles in order, each adjacent (top or right) to the previous one.
    """

    def __init__(self, tiles: Sequence[Tile]):
        if not tiles:
            raise SnakeGraphError("a snake graph needs at least one tile")
        self.tiles: tuple[Tile, ...] = tuple(tiles)
        self._build()

    def _build(self) -> None:
        by_key: dict[frozenset, Edge] = {}
        edge_at: dict[tuple[int, str], int] = {}
        edges: list[Edge] = []
        glue: list[str] = []
        for j, tile in enumerate(self.tiles):
            if j:
                prev = self.tiles[j - 1].origin
                dx, dy = tile.origin[0] - prev[0], tile.origin[1] - prev[1]
                if (dx, dy) == (0, 1):
                    glue.append(TOP)
                elif (dx, dy) == (1, 0):
                    glue.append(RIGHT)
                else:
                    raise SnakeGraphError(f"tile {tile.index} is not glued above or right of its predecessor")
            for side in SIDES:
                ends = tile.side_vertices(side)
                key = frozenset(ends)
                lab = tile.label(side)
                if key in by_key:
                    old = by_key[key]
                    if old.label != lab:
                        raise SnakeGraphError(
                            f"tile {tile.index} side {side} is labelled {lab!r} but the shared edge "
                            f"is labelled {old.label!r}"
                        )
                    new = Edge(old.id, old.label, old.ends, old.sides + ((tile.index, side),))
                    by_key[key] = new
                    edges[old.id] = new
                else:
                    e = Edge(len(edges), lab, ends, ((tile.index, side),))
                    by_key[key] = e
                    edges.append(e)
                edge_at[(tile.index, side)] = by_key[key].id
        self.edges: tuple[Edge, ...] = tuple(edges)
        self._edge_at = edge_at
        self.glue: tuple[str, ...] = tuple(glue)
        verts = sorted({v for e in edges for v in e.ends}, key=lambda p: (p[0] + p[1], p[0]))
        self.vertices: tuple[Vertex, ...] = tuple(verts)

    # access ------------------------------------------------------------
    def __len__(self) -> int:
        return len(self.tiles)

    def tile(self, j: int) -> Tile:
        return self.tiles[j - 1]

    def edge(self, j: int, side: str) -> int:
        """Edge id of side ``side`` of tile ``j`` (1-based)."""
        return self._edge_at[(j, side)]

    def is_boundary(self, edge_id: int) -> bool:
        return len(self.edges[edge_id].sides) == 1

    @cached_property
    def adjacency(self) -> dict[Vertex, tuple[int, ...]]:
        adj: dict[Vertex, list[int]] = {v: [] for v in self.vertices}
        for e in self.edges:
            for v in e.ends:
                adj[v].append(e.id)
        return {v: tuple(es) for v, es in adj.items()}

    def __repr__(self) -> str:
        shape = "".join("T" if g == TOP else "R" for g in self.glue)
        diags = ",".join(t.diagonal for t in self.tiles)
        return f"SnakeGraph(d={len(self)}, shape={shape or '-'}, diagonals=[{diags}])"

    # constructors ------------------------------------------------------
    @classmethod
    def from_shape(cls, shape: str | Sequence[str], diagonals: Sequence[str] | None = None) -> "SnakeGraph":
        """Abstract snake graph from gluing directions (``"R"``/``"T"`` per step).

        Side labels are synthetic and unique except on shared edges.
        """
        shape = [TOP if s in ("T", TOP) else RIGHT for s in shape]
        d = len(shape) + 1
        diagonals = list(diagonals) if diagonals is not None else [str(i) for i in range(1, d + 1)]
        origins = [(0, 0)]
        for g in shape:
            a, b = origins[-1]
            origins.append((a, b + 1) if g == TOP else (a + 1, b))
        names: dict[frozenset, str] = {}
        tiles = []
        for j, o in enumerate(origins):
            stub = Tile(j + 1, o, diagonals[j], tuple((s, "") for s in SIDES))
            sides = []
            for s in SIDES:
                key = frozenset(stub.side_vertices(s))
                names.setdefault(key, f"e{len(names)}")
                sides.append((s, names[key]))
            tiles.append(Tile(j + 1, o, diagonals[j], tuple(sides), rel=1 if j % 2 == 0 else -1))
        return cls(tiles)


def _side_positions(entry_or_exit: int, rel: int, lower: bool) -> dict[str, int]:
    a, b = (entry_or_exit + 1) % 3, (entry_or_exit + 2) % 3
    if rel < 0:
        a, b = b, a
    return {"S": a, "W": b} if lower else {"N": a, "E": b}


def snake_graph_from_path(t: CombinatorialTriangulation, steps: Sequence[Step]) -> SnakeGraph:
    """Snake graph of a curve crossing the triangulation along ``steps``.

    ``steps`` lists the triangles the curve visits with entry and exit slot
    positions (see :func:`cluster_loops.surface.arc_path`).  Tile ``j`` is the
    quadrilateral formed by the triangles either side of the ``j``-th crossing.
    """
    d = len(steps) - 1
    if d < 1:
        raise SnakeGraphError("the curve crosses no arc")
    tiles: list[Tile] = []
    origin = (0, 0)
    for j in range(d):
        lower, upper = steps[j], steps[j + 1]
        rel = 1 if j % 2 == 0 else -1
        pos = {}
        for side, p in _side_positions(lower.exit, rel, True).items():
            pos[side] = Slot(lower.triangle, p)
        for side, p in _side_positions(upper.entry, rel, False).items():
            pos[side] = Slot(upper.triangle, p)
        diag_slot = Slot(lower.triangle, lower.exit)
        diagonal = t.label_at(diag_slot)
        sides = tuple((s, t.label_at(pos[s])) for s in SIDES)
        non_ordinary = lower.triangle == upper.triangle and t.is_self_folded_triangle(lower.triangle)
        tile = Tile(
            index=j + 1, origin=origin, diagonal=diagonal, sides=sides, rel=rel,
            non_ordinary=non_ordinary, side_slots=tuple((s, pos[s]) for s in SIDES),
        )
        tiles.append(tile)
        if j + 1 < d:
            nxt = steps[j + 1]
            shared = ({0, 1, 2} - {nxt.entry, nxt.exit})
            if len(shared) != 1:
                raise SurfaceError(f"curve enters and leaves triangle {nxt.triangle} through one side")
            (o,) = shared
            shared_slot = Slot(nxt.triangle, o)
            next_pos = _side_positions(nxt.exit, -rel, True)
            if pos["N"] == shared_slot:
                if next_pos["S"] != o:
                    raise SnakeGraphError(f"inconsistent gluing after tile {j + 1}")
                origin = (origin[0], origin[1] + 1)
            elif pos["E"] == shared_slot:
                if next_pos["W"] != o:
                    raise SnakeGraphError(f"inconsistent gluing after tile {j + 1}")
                origin = (origin[0] + 1, origin[1])
            else:  # pragma: no cover - guarded by the slot algebra above
                raise SnakeGraphError(f"no shared side between tiles {j + 1} and {j + 2}")
    return SnakeGraph(tiles)


# ----------------------------------------------------------------------
# perfect matchings

Matching = frozenset  # of edge ids


def perfect_matchings(g: SnakeGraph) -> list[Matching]:
    """All perfect matchings, found tile by tile."""
    return list(_tile_sweep(g))


def _tile_sweep(g: SnakeGraph, forced: Iterable[Vertex] = ()) -> Iterator[Matching]:
    last_tile: dict[Vertex, int] = {}
    for tile in g.tiles:
        for v in (tile.sw, tile.se, tile.nw, tile.ne):
            last_tile[v] = tile.index
    new_edges: list[list[int]] = [[] for _ in g.tiles]
    seen: set[int] = set()
    for tile in g.tiles:
        for side in SIDES:
            eid = g.edge(tile.index, side)
            if eid not in seen:
                seen.add(eid)
                new_edges[tile.index - 1].append(eid)
    closing: list[list[Vertex]] = [[] for _ in g.tiles]
    for v, j in last_tile.items():
        closing[j - 1].append(v)

    def rec(j: int, covered: frozenset, chosen: tuple) -> Iterator[Matching]:
        if j == len(g.tiles):
            yield frozenset(chosen)
            return
        cand = new_edges[j]
        for mask in range(1 << len(cand)):
            pick = [cand[i] for i in range(len(cand)) if mask >> i & 1]
            cov = set(covered)
            ok = True
            for eid in pick:
                a, b = g.edges[eid].ends
                if a in cov or b in cov or a == b:
                    ok = False
                    break
                cov.update((a, b))
            if not ok or any(v not in cov for v in closing[j]):
                continue
            yield from rec(j + 1, frozenset(cov), chosen + tuple(pick))

    yield from rec(0, frozenset(), ())


def matchings_by_backtracking(
    vertices: Iterable, edges: Sequence[tuple[int, object, object]]
) -> list[frozenset]:
    """Perfect matchings of a small multigraph: always cover the least uncovered vertex.

    ``edges`` are ``(id, u, v)`` triples.  Loops (``u == v``) are never used.
    """
    verts = sorted(vertices, key=repr)
    inc: dict[object, list[tuple[int, object, object]]] = {v: [] for v in verts}
    for e in edges:
        eid, u, v = e
        if u == v:
            continue
        inc[u].append(e)
        inc[v].append(e)
    out: list[frozenset] = []

    def rec(covered: set, chosen: list):
        free = next((v for v in verts if v not in covered), None)
        if free is None:
            out.append(frozenset(chosen))
            return
        for eid, u, v in inc[free]:
            other = v if u == free else u
            if other in covered:
                continue
            covered.update((free, other))
            chosen.append(eid)
            rec(covered, chosen)
            chosen.pop()
            covered.difference_update((free, other))

    rec(set(), [])
    return out


def is_perfect_matching(g: SnakeGraph, m: Iterable[int]) -> bool:
    cov: list[Vertex] = []
    for eid in m:
        cov.extend(g.edges[eid].ends)
    return len(cov) == len(set(cov)) and set(cov) == set(g.vertices)


# ----------------------------------------------------------------------
# induced orientation and heights

def diagonal_orientation(g: SnakeGraph, m: Iterable[int]) -> dict[int, str]:
    """Orientation (``"down"`` = north-west to south-east) of every diagonal.

    Walk from the south-west corner of the first tile, alternating matched
    edges and diagonals, until the north-east corner of the last tile.
    """
    m = set(m)
    partner: dict[Vertex, Vertex] = {}
    for eid in m:
        a, b = g.edges[eid].ends
        partner[a], partner[b] = b, a
    diag_at: dict[Vertex, int] = {}
    for tile in g.tiles:
        diag_at[tile.nw] = tile.index
        diag_at[tile.se] = tile.index
    out: dict[int, str] = {}
    v = g.tiles[0].sw
    end = g.tiles[-1].ne
    while True:
        if v not in partner:
            raise SnakeGraphError("matching does not cover the walk")
        v = partner[v]
        if v == end:
            break
        j = diag_at.get(v)
        if j is None or j in out:
            raise SnakeGraphError("matching does not induce a diagonal orientation")
        tile = g.tile(j)
        if v == tile.nw:
            out[j] = "down"
            v = tile.se
        else:
            out[j] = "up"
            v = tile.nw
    if len(out) != len(g):
        raise SnakeGraphError("walk missed a diagonal")
    return out


def height(g: SnakeGraph, m: Iterable[int]) -> frozenset[int]:
    """Tiles whose diagonal is positive: oriented down on a tile with ``rel = 1``
    or up on a tile with ``rel = -1``."""
    orient = diagonal_orientation(g, m)
    return frozenset(j for j, o in orient.items() if (o == "down") == (g.tile(j).rel > 0))


def height_key(h: Iterable[int]) -> tuple:
    h = sorted(h)
    return (len(h), tuple(h))
