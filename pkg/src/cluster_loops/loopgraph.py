"""Loop graphs: snake graphs whose end tiles are glued back onto earlier tiles.

A notched end of a tagged arc is replaced by a hook, a small detour once
around the puncture.  The snake graph of the hooked curve is then closed up
by identifying a cut edge of the end tile with the matching boundary edge of
the tile where the plain arc begins (or ends).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from functools import cached_property
from typing import Iterable, Sequence

from .snakegraph import (
    SnakeGraph,
    SnakeGraphError,
    Vertex,
    height,
    height_key,
    matchings_by_backtracking,
    perfect_matchings,
    snake_graph_from_path,
)
from .surface import (
    NOTCHED,
    CombinatorialTriangulation,
    Corner,
    Step,
    SurfaceError,
    TaggedArc,
    UnsupportedInputError,
    arc_path,
    end_corner,
    start_corner,
)

CW, CCW = "cw", "ccw"


class NotGoodMatchingError(ValueError):
    """A perfect matching of the glued graph that fails a cut condition."""

    def __init__(self, cut: "Cut", message: str):
        super().__init__(message)
        self.cut = cut


# ----------------------------------------------------------------------
# hooks

def _rotate(t: CombinatorialTriangulation, corner: Corner, direction: str):
    step = t.rotate_cw(corner) if direction == CW else t.rotate_ccw(corner)
    if step is None:
        raise SurfaceError("hook reached the boundary: the endpoint is not a puncture")
    return step


def hooked_path(
    t: CombinatorialTriangulation,
    arc: TaggedArc,
    directions: tuple[str, str] = (CW, CW),
) -> tuple[list[Step], int, int, tuple[int, int]]:
    """Triangle path of the hooked curve.

    Returns ``(steps, k1, k2, degrees)`` where tiles ``k1..k2`` (1-based) belong
    to the plain arc and ``degrees`` gives the hook lengths at each end
    (0 for a plain end).
    """
    base = arc_path(t, arc)
    d = len(base) - 1
    start_notched, end_notched = arc.notched_ends
    steps = list(base)
    l_start = l_end = 0

    if end_notched:
        v = t.vertex_of(end_corner(steps))
        if not t.is_puncture(v):
            raise SurfaceError("notched end is not at a puncture")
        l_end = len(t.corners_at(v))
        corner = end_corner(steps)
        last = steps.pop()
        cur_tri, cur_entry = last.triangle, last.entry
        for _ in range(l_end):
            slot, corner = _rotate(t, corner, directions[1])
            steps.append(Step(cur_tri, cur_entry, slot.pos))
            other = t.partner(slot)
            cur_tri, cur_entry = other.triangle, other.pos
        steps.append(Step(cur_tri, cur_entry, None))

    if start_notched:
        v = t.vertex_of(start_corner(base))
        if not t.is_puncture(v):
            raise SurfaceError("notched start is not at a puncture")
        l_start = len(t.corners_at(v))
        corner = start_corner(base)
        first = steps[0]
        pre: list[Step] = []
        cur_tri, cur_entry = first.triangle, None
        for _ in range(l_start):
            slot, corner = _rotate(t, corner, directions[0])
            pre.append(Step(cur_tri, cur_entry, slot.pos))
            other = t.partner(slot)
            cur_tri, cur_entry = other.triangle, other.pos
        if cur_tri != first.triangle:  # pragma: no cover - a full turn returns home
            raise SurfaceError("hook did not return to the starting triangle")
        steps = pre + [Step(first.triangle, cur_entry, first.exit)] + steps[1:]

    k1 = l_start + 1
    k2 = l_start + d
    return steps, k1, k2, (l_start, l_end)


# ----------------------------------------------------------------------
# loop graphs

@dataclass(frozen=True)
class Cut:
    end: str            # "start" (loop at the first tile) or "end"
    k: int              # tile carrying c'
    c: int              # edge id of the cut edge on the end tile
    c_prime: int        # edge id identified with it
    x: Vertex
    y: Vertex
    x_prime: Vertex
    y_prime: Vertex


@dataclass(frozen=True)
class GoodMatching:
    edges: frozenset            # glued edge ids
    extension: frozenset        # perfect matching of the underlying snake graph
    cut_types: tuple[str, ...]  # "left" / "right" / "centre" per cut
    height: frozenset


class LoopGraph:
    """A snake graph together with at most one loop at each end."""

    def __init__(
        self,
        snake: SnakeGraph,
        cuts: Sequence[Cut],
        k1: int = 1,
        k2: int | None = None,
        steps: Sequence[Step] | None = None,
    ):
        self.snake = snake
        self.cuts: tuple[Cut, ...] = tuple(cuts)
        self.k1 = k1
        self.k2 = k2 if k2 is not None else len(snake)
        self.steps = tuple(steps) if steps is not None else None
        self._glue()

    # construction ------------------------------------------------------
    @classmethod
    def from_snake(
        cls,
        g: SnakeGraph,
        start_k: int | None = None,
        end_k: int | None = None,
        start_side: str | None = None,
        end_side: str | None = None,
    ) -> "LoopGraph":
        """Close up ``g`` with a loop at the first tile onto ``G_start_k`` and/or
        at the last tile onto ``G_end_k``.

        ``start_side`` picks the cut edge (``"S"`` or ``"W"``) of the first tile;
        by default the side of the first tile that carries the label of
        ``c'`` is used, falling back to ``"S"``.
        """
        cuts = []
        d = len(g)
        if start_k is not None:
            if not 2 <= start_k <= d:
                raise SnakeGraphError("start loop needs 2 <= k <= d")
            cuts.append(cls._make_cut(g, "start", start_k, start_side))
        if end_k is not None:
            if not 1 <= end_k <= d - 1:
                raise SnakeGraphError("end loop needs 1 <= k <= d - 1")
            if start_k is not None and start_k > end_k:
                raise SnakeGraphError("the start loop must land no later than the end loop")
            cuts.append(cls._make_cut(g, "end", end_k, end_side))
        return cls(g, cuts)

    @staticmethod
    def _make_cut(g: SnakeGraph, end: str, k: int, side: str | None) -> Cut:
        if end == "start":
            sides, corner, tile_end = ("S", "W"), "sw", g.tile(1)
        else:
            sides, corner, tile_end = ("N", "E"), "ne", g.tile(len(g))
        tile_k = g.tile(k)
        boundary = [s for s in sides if g.is_boundary(g.edge(k, s))]
        if len(boundary) != 1:
            raise SnakeGraphError(f"tile {k} has no unique boundary {'/'.join(sides)} edge")
        c_prime = g.edge(k, boundary[0])
        if side is None:
            slot = tile_k.slot(boundary[0])
            side = next((s for s in sides if slot is not None and tile_end.slot(s) == slot), None)
            if side is None:
                lab = g.edges[c_prime].label
                side = next((s for s in sides if tile_end.label(s) == lab), sides[0])
        c = g.edge(tile_end.index, side)
        x = getattr(tile_end, corner)
        y_prime = getattr(tile_k, corner)
        y = next(v for v in g.edges[c].ends if v != x)
        x_prime = next(v for v in g.edges[c_prime].ends if v != y_prime)
        return Cut(end, k, c, c_prime, x, y, x_prime, y_prime)

    def _glue(self) -> None:
        parent: dict[Vertex, Vertex] = {v: v for v in self.snake.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for cut in self.cuts:
            for a, b in ((cut.x, cut.x_prime), (cut.y, cut.y_prime)):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        self.rep: dict[Vertex, Vertex] = {v: find(v) for v in self.snake.vertices}
        self.glued_vertices: tuple[Vertex, ...] = tuple(sorted(set(self.rep.values()), key=repr))
        primes = {cut.c_prime: cut.c for cut in self.cuts}
        self._alias = primes
        self.glued_edges: tuple[tuple[int, Vertex, Vertex], ...] = tuple(
            (e.id, self.rep[e.ends[0]], self.rep[e.ends[1]])
            for e in self.snake.edges
            if e.id not in primes
        )

    # accessors -------------------------------------------------------
    def __len__(self) -> int:
        return len(self.snake)

    def glued_id(self, eid: int) -> int:
        return self._alias.get(eid, eid)

    def edge(self, j: int, side: str) -> int:
        """Glued edge id of side ``side`` of tile ``j``."""
        return self.glued_id(self.snake.edge(j, side))

    def label(self, eid: int) -> str:
        return self.snake.edges[eid].label

    def __repr__(self) -> str:
        cuts = ", ".join(f"{c.end}->G{c.k}" for c in self.cuts) or "no loops"
        return f"LoopGraph(d={len(self)}, {cuts})"

    # matchings -------------------------------------------------------
    def is_perfect(self, edges: Iterable[int]) -> bool:
        cov = []
        by_id = {e[0]: e for e in self.glued_edges}
        for eid in edges:
            if eid not in by_id:
                return False
            _, u, v = by_id[eid]
            if u == v:
                return False
            cov += [u, v]
        return len(cov) == len(set(cov)) and set(cov) == set(self.glued_vertices)

    def classify(self, edges: Iterable[int]) -> GoodMatching:
        """Check that a glued perfect matching is good and extend it.

        Raises
        ------
        NotGoodMatchingError
            If some cut is neither a left, right nor centre cut.
        ValueError
            If ``edges`` is not a perfect matching of the glued graph.
        """
        p = frozenset(self.glued_id(e) for e in edges)
        if not self.is_perfect(p):
            raise ValueError("not a perfect matching of the loop graph")
        # Each cut is restored by adding back c' (right or centre cut) or c
        # (left cut).  When two loops land on the same tile, one glued vertex
        # stands for three snake vertices, so the choices are tested jointly.
        options = []
        for cut in self.cuts:
            if cut.c in p:
                options.append((("centre", cut.c_prime),))
            else:
                options.append((("right", cut.c_prime), ("left", cut.c)))
        found = []
        for combo in product(*options):
            ext = frozenset(p | {e for _, e in combo})
            if len(ext) == len(p) + len(combo) and _covers_exactly(self.snake, ext):
                found.append((tuple(t for t, _ in combo), ext))
        if not found:
            bad = self.cuts[0] if len(self.cuts) == 1 else self._failing_cut(p)
            raise NotGoodMatchingError(
                bad, f"cut at the {bad.end} of the loop graph (tile {bad.k}) is not a left, right or centre cut"
            )
        if len(found) > 1:  # pragma: no cover - extensions are unique for surface loop graphs
            raise NotGoodMatchingError(self.cuts[0], "matching extends in more than one way")
        types, ext = found[0]
        return GoodMatching(p, ext, types, height(self.snake, ext))

    def _failing_cut(self, p: frozenset) -> Cut:
        covered: set[Vertex] = set()
        for eid in p:
            covered.update(self.snake.edges[eid].ends)
        for cut in self.cuts:
            if cut.c in p:
                continue
            if not ({cut.x, cut.y} <= covered or {cut.x_prime, cut.y_prime} <= covered):
                return cut
        return self.cuts[-1]

    def is_good(self, edges: Iterable[int]) -> bool:
        try:
            self.classify(edges)
        except (NotGoodMatchingError, ValueError):
            return False
        return True

    @cached_property
    def good_matchings(self) -> tuple[GoodMatching, ...]:
        """Good matchings sorted by height (size, then lexicographic)."""
        out = []
        for m in perfect_matchings(self.snake):
            gm = self._descend(m)
            if gm is not None:
                out.append(gm)
        out.sort(key=lambda g: height_key(g.height))
        return tuple(out)

    def _descend(self, ext: frozenset) -> GoodMatching | None:
        """The good matching whose extension is ``ext``, if any."""
        p = set(ext)
        types = []
        for cut in self.cuts:
            has_c, has_cp = cut.c in ext, cut.c_prime in ext
            if has_c and has_cp:
                types.append("centre")
                p.discard(cut.c_prime)
            elif has_cp:
                types.append("right")
                p.discard(cut.c_prime)
            elif has_c:
                types.append("left")
                p.discard(cut.c)
            else:
                return None
        return GoodMatching(frozenset(p), ext, tuple(types), height(self.snake, ext))

    def good_matchings_bruteforce(self) -> list[GoodMatching]:
        """Independent enumeration: perfect matchings of the glued multigraph,
        filtered by the cut conditions."""
        out = []
        for m in matchings_by_backtracking(self.glued_vertices, self.glued_edges):
            try:
                out.append(self.classify(m))
            except NotGoodMatchingError:
                pass
        out.sort(key=lambda g: height_key(g.height))
        return out

    # twists ------------------------------------------------------------
    def positive_twist(self, gm: GoodMatching, j: int) -> GoodMatching | None:
        """Twist at tile ``j`` if it is available, else ``None``."""
        ns = {self.edge(j, "N"), self.edge(j, "S")}
        we = {self.edge(j, "W"), self.edge(j, "E")}
        src, dst = (ns, we) if j % 2 == 1 else (we, ns)
        if len(src) != 2 or len(dst) != 2 or not src <= gm.edges or dst & gm.edges:
            return None
        cand = (gm.edges - src) | dst
        try:
            return self.classify(cand)
        except (NotGoodMatchingError, ValueError):
            return None


def _covers_exactly(g: SnakeGraph, m: frozenset) -> bool:
    cov = []
    for eid in m:
        cov.extend(g.edges[eid].ends)
    return len(cov) == len(set(cov)) and set(cov) == set(g.vertices)


# ----------------------------------------------------------------------

def check_formula_hypotheses(t: CombinatorialTriangulation, arc: TaggedArc) -> None:
    """Raise :class:`UnsupportedInputError` outside the scope of the loop-graph expansion."""
    steps = arc_path(t, arc)
    if len(steps) == 1:
        raise UnsupportedInputError("the plain arc underlying the tagged arc belongs to the triangulation")
    va, vb = t.vertex_of(start_corner(steps)), t.vertex_of(end_corner(steps))
    for v, ep in ((va, arc.endpoints[0]), (vb, arc.endpoints[1])):
        if ep.tag == NOTCHED and v in t.self_folded_punctures:
            raise UnsupportedInputError(
                f"the arc is notched at {t.vertex_names[v]!r}, which is enclosed by a self-folded triangle; "
                "swap the tags there first"
            )
    if all(arc.notched_ends) and t.is_closed_surface() and len(t.puncture_vertices) == 2:
        raise UnsupportedInputError(
            "doubly notched arcs on a closed surface with exactly two punctures are not covered"
        )


def loop_graph(
    t: CombinatorialTriangulation,
    arc: TaggedArc,
    directions: tuple[str, str] = (CW, CW),
) -> LoopGraph:
    """Loop graph of a tagged arc."""
    check_formula_hypotheses(t, arc)
    steps, k1, k2, (ls, le) = hooked_path(t, arc, directions)
    g = snake_graph_from_path(t, steps)
    closed = LoopGraph.from_snake(g, start_k=k1 if ls else None, end_k=k2 if le else None)
    return LoopGraph(g, closed.cuts, k1, k2, steps)
