"""Symmetric-matching formulas for notched arcs, and their bijections with good
matchings of loop graphs.

A singly notched arc ``gamma`` (notched at the puncture ``p``) has a companion
plain curve ``ell_p``: follow ``gamma`` to ``p``, circle ``p`` once, and come
back along ``gamma``.  Its snake graph has ``2k + l`` tiles, where ``k`` counts
the crossings of ``gamma`` and ``l`` the corners at ``p``.  The first and last
``k`` tiles are two copies ("arms") of the snake graph of ``gamma``.  A perfect
matching is *symmetric* when it agrees on the two arms after deleting the
corner where each arm meets the middle.  Symmetric matchings, with the part on
one arm divided out, give the expansion of the notched arc.

This module recomputes that expansion independently of :mod:`.expansion`,
and builds the explicit restriction maps onto good matchings of the loop graph
so that the correspondence can be checked term by term.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .expansion import expand, x_weight, y_weight
from .laurent import LaurentPolynomial, Monomial
from .loopgraph import CW, GoodMatching, LoopGraph, _rotate, check_formula_hypotheses
from .snakegraph import (
    SIDES,
    SnakeGraph,
    Vertex,
    height,
    is_perfect_matching,
    perfect_matchings,
    snake_graph_from_path,
)
from .surface import (
    NOTCHED,
    CombinatorialTriangulation,
    Endpoint,
    PLAIN,
    Step,
    SurfaceError,
    TaggedArc,
    UnsupportedInputError,
    arc_path,
    end_corner,
    require_valid,
    reverse_arc,
)

log = logging.getLogger(__name__)

Matching = frozenset


class BijectionError(AssertionError):
    """A claimed bijection or monomial identity failed on concrete data."""


# ----------------------------------------------------------------------
# sub-snake graphs and arm isomorphisms

def sub_snake(g: SnakeGraph, lo: int, hi: int) -> tuple[SnakeGraph, dict[int, int]]:
    """Tiles ``lo..hi`` of ``g`` as a snake graph of their own.

    Coordinates are kept, so vertices are shared with ``g``.  Returns the
    graph and a map from edge ids of ``g`` to edge ids of the piece.
    """
    tiles = [replace(g.tile(j), index=j - lo + 1) for j in range(lo, hi + 1)]
    h = SnakeGraph(tiles)
    by_ends = {frozenset(e.ends): e.id for e in h.edges}
    emap = {e.id: by_ends[frozenset(e.ends)] for e in g.edges if frozenset(e.ends) in by_ends}
    return h, emap


# the eight symmetries of the square lattice, as integer matrices
_DIHEDRAL = (
    ((-1, 0), (0, -1)),   # half turn
    ((0, -1), (-1, 0)),   # reflection in the anti-diagonal
    ((1, 0), (0, 1)),
    ((0, 1), (1, 0)),
    ((0, -1), (1, 0)),
    ((0, 1), (-1, 0)),
    ((-1, 0), (0, 1)),
    ((1, 0), (0, -1)),
)


@dataclass(frozen=True)
class ArmIsomorphism:
    """Lattice symmetry carrying tiles ``src`` onto tiles ``dst`` of two snake graphs.

    ``src[i]`` is sent to ``dst[i]``.  Vertices are mapped by
    ``v -> M v + shift`` computed in doubled coordinates.
    """

    src_graph: SnakeGraph
    dst_graph: SnakeGraph
    src: tuple[int, ...]
    dst: tuple[int, ...]
    matrix: tuple[tuple[int, int], tuple[int, int]]
    shift2: tuple[int, int]

    def vertex(self, v: Vertex) -> Vertex:
        (a, b), (c, d) = self.matrix
        x, y = 2 * v[0], 2 * v[1]
        return ((a * x + b * y + self.shift2[0]) // 2, (c * x + d * y + self.shift2[1]) // 2)

    @cached_property
    def edge_map(self) -> dict[int, int]:
        """Edge ids of the source tiles to edge ids of the destination tiles."""
        dst_by_ends = {frozenset(e.ends): e.id for e in self.dst_graph.edges}
        out = {}
        for j in self.src:
            for side in SIDES:
                e = self.src_graph.edges[self.src_graph.edge(j, side)]
                out[e.id] = dst_by_ends[frozenset(self.vertex(v) for v in e.ends)]
        return out

    def image(self, edges: Iterable[int]) -> frozenset[int]:
        return frozenset(self.edge_map[e] for e in edges)


def find_arm_isomorphism(
    ga: SnakeGraph, tiles_a: Sequence[int], gb: SnakeGraph, tiles_b: Sequence[int]
) -> ArmIsomorphism:
    """The label-preserving lattice symmetry sending ``tiles_a[i]`` to ``tiles_b[i]``.

    Side slots of the triangulation break ties, so the map matches the
    geometric identification of the two copies of the arc.

    Raises
    ------
    BijectionError
        If no symmetry preserves all side labels.
    """
    if len(tiles_a) != len(tiles_b) or not tiles_a:
        raise BijectionError("arms of different lengths")
    found = []
    for m in _DIHEDRAL:
        (a, b), (c, d) = m
        ca = _centre2(ga.tile(tiles_a[0]))
        cb = _centre2(gb.tile(tiles_b[0]))
        shift = (cb[0] - (a * ca[0] + b * ca[1]), cb[1] - (c * ca[0] + d * ca[1]))
        iso = ArmIsomorphism(ga, gb, tuple(tiles_a), tuple(tiles_b), m, shift)
        score = _score(iso)
        if score is not None:
            found.append((score, iso))
    if not found:
        raise BijectionError(f"tiles {list(tiles_a)} and {list(tiles_b)} are not isomorphic")
    best = max(s for s, _ in found)
    return next(iso for s, iso in found if s == best)


def _centre2(tile) -> tuple[int, int]:
    return (2 * tile.origin[0] + 1, 2 * tile.origin[1] + 1)


def _score(iso: ArmIsomorphism) -> int | None:
    """Number of sides whose slots agree, or ``None`` if some label disagrees."""
    agree = 0
    for ja, jb in zip(iso.src, iso.dst):
        ta, tb = iso.src_graph.tile(ja), iso.dst_graph.tile(jb)
        ctr = _centre2(ta)
        (a, b), (c, d) = iso.matrix
        img = (a * ctr[0] + b * ctr[1] + iso.shift2[0], c * ctr[0] + d * ctr[1] + iso.shift2[1])
        if img != _centre2(tb) or ta.diagonal != tb.diagonal:
            return None
        b_sides = {frozenset(tb.side_vertices(s)): s for s in SIDES}
        for s in SIDES:
            sb = b_sides[frozenset(iso.vertex(v) for v in ta.side_vertices(s))]
            if ta.label(s) != tb.label(sb):
                return None
            if ta.slot(s) is not None and ta.slot(s) == tb.slot(sb):
                agree += 1
    return agree


# ----------------------------------------------------------------------
# the curve ell_p

def ell_path(t: CombinatorialTriangulation, base: Sequence[Step]) -> tuple[list[Step], int]:
    """Triangle path of ``ell_p`` for a plain arc path ``base`` ending at ``p``.

    Returns the steps and the number ``l`` of corners at ``p``.  The turn
    around ``p`` is clockwise, matching the hooks used by the loop graphs.
    """
    v = t.vertex_of(end_corner(base))
    if not t.is_puncture(v):
        raise SurfaceError("the notched end is not a puncture")
    l = len(t.corners_at(v))
    last = base[-1]
    corner = end_corner(base)
    steps = list(base[:-1])
    cur_tri, cur_entry = last.triangle, last.entry
    for _ in range(l):
        slot, corner = _rotate(t, corner, CW)
        steps.append(Step(cur_tri, cur_entry, slot.pos))
        other = t.partner(slot)
        cur_tri, cur_entry = other.triangle, other.pos
    if cur_tri != last.triangle:  # pragma: no cover - a full turn returns home
        raise SurfaceError("turn around the puncture did not close up")
    steps.append(Step(cur_tri, cur_entry, last.entry))
    for s in reversed(base[:-1]):
        steps.append(Step(s.triangle, s.exit, s.entry))
    return steps, l


@dataclass
class EllGraphDecomposition:
    """Snake graph of ``ell_p`` cut into two arms and the turn around ``p``.

    Attributes
    ----------
    snake : SnakeGraph
        Tiles ``1..2k+l``.
    k, l : int
        Crossings of the plain arc, corners at ``p``.
    arm_iso : ArmIsomorphism
        Tile ``j`` of the first arm to tile ``2k+l+1-j`` of the second.
    head_loop, tail_loop : LoopGraph
        Tiles ``1..k+l`` closed at the end onto tile ``k``, and tiles
        ``k+1..2k+l`` closed at the start onto their tile ``l+1``.  Both are
        loop graphs of the notched arc.
    notched_at_start : bool
        Whether the input arc carried its notch at the start.  The expansion
        code then builds ``tail_loop``; otherwise ``head_loop``.
    """

    t: CombinatorialTriangulation
    arc: TaggedArc
    steps: list[Step]
    snake: SnakeGraph
    k: int
    l: int
    arm_iso: ArmIsomorphism
    head_loop: LoopGraph
    head_map: dict[int, int]
    tail_loop: LoopGraph
    tail_map: dict[int, int]
    notched_at_start: bool

    @property
    def arm1(self) -> range:
        return range(1, self.k + 1)

    @property
    def arm2(self) -> range:
        return range(self.k + self.l + 1, 2 * self.k + self.l + 1)

    @cached_property
    def arm_edges(self) -> tuple[frozenset[int], frozenset[int]]:
        g = self.snake
        return tuple(
            frozenset(g.edge(j, s) for j in arm for s in SIDES) for arm in (self.arm1, self.arm2)
        )

    @cached_property
    def reduced_arm_edges(self) -> tuple[frozenset[int], frozenset[int]]:
        """Arm edges avoiding the corner where each arm meets the turn."""
        g = self.snake
        cut = (g.tile(self.k).ne, g.tile(self.k + self.l + 1).sw)
        return tuple(
            frozenset(e for e in arm if cut[i] not in g.edges[e].ends)
            for i, arm in enumerate(self.arm_edges)
        )

    @cached_property
    def arm_vertices(self) -> tuple[frozenset[Vertex], frozenset[Vertex]]:
        g = self.snake
        return tuple(frozenset(v for e in arm for v in g.edges[e].ends) for arm in self.arm_edges)

    @property
    def target(self) -> LoopGraph:
        """The loop graph that :func:`.expansion.expand` builds for the notched arc."""
        return self.tail_loop if self.notched_at_start else self.head_loop

    @cached_property
    def corner_edges(self) -> tuple[int, int]:
        """The two boundary edges of tile ``k`` at its corner away from tile ``k+1``.

        One of them lies on the north or east side (it is the edge the head
        loop glues onto); the other on the south or west side.  When tile ``k``
        is the first tile both of its south and west sides are boundary; the
        one sharing a vertex with the first edge is taken.
        """
        g = self.snake
        k = self.k
        ne_side = next(s for s in ("N", "E") if g.is_boundary(g.edge(k, s)))
        sw_side = "S" if ne_side == "E" else "W"
        return g.edge(k, ne_side), g.edge(k, sw_side)

    def is_zigzag_at_arm1(self) -> bool:
        k = self.k
        if k == 1:
            return True
        return self.snake.glue[k - 2] != self.snake.glue[k - 1]


def build_ellp(
    t: CombinatorialTriangulation, arc: TaggedArc, at: str | None = None
) -> EllGraphDecomposition:
    """Snake graph of ``ell_p`` for the notched end ``at`` (``"start"``/``"end"``).

    ``at`` may be omitted for a singly notched arc.

    Raises
    ------
    UnsupportedInputError
        If the arc is plain, crosses nothing, or is notched at a puncture
        enclosed by a self-folded triangle.
    """
    check_formula_hypotheses(t, arc)
    notched = arc.notched_ends
    if at is None:
        if sum(notched) != 1:
            raise UnsupportedInputError("give the notched end explicitly for a doubly notched arc")
        at = "start" if notched[0] else "end"
    if at not in ("start", "end"):
        raise ValueError(f"unknown end {at!r}")
    if not notched[0 if at == "start" else 1]:
        raise UnsupportedInputError(f"the arc is not notched at its {at}")
    oriented = reverse_arc(t, arc) if at == "start" else arc
    base = arc_path(t, oriented)
    steps, l = ell_path(t, base)
    g = snake_graph_from_path(t, steps)
    k = len(base) - 1
    arm_iso = find_arm_isomorphism(
        g, list(range(1, k + 1)), g, [2 * k + l + 1 - j for j in range(1, k + 1)]
    )
    if arm_iso.vertex(g.tile(k).ne) != g.tile(k + l + 1).sw:
        raise BijectionError("arm isomorphism does not match the cut corners")
    head, head_map = sub_snake(g, 1, k + l)
    tail, tail_map = sub_snake(g, k + 1, 2 * k + l)
    head_loop = LoopGraph.from_snake(head, end_k=k)
    tail_loop = LoopGraph.from_snake(tail, start_k=l + 1)
    return EllGraphDecomposition(
        t=t, arc=oriented, steps=steps, snake=g, k=k, l=l, arm_iso=arm_iso,
        head_loop=head_loop, head_map=head_map, tail_loop=tail_loop, tail_map=tail_map,
        notched_at_start=(at == "start"),
    )


# ----------------------------------------------------------------------
# symmetric matchings and their monomials

def is_gamma_symmetric(d: EllGraphDecomposition, p: Iterable[int]) -> bool:
    p = frozenset(p)
    h1, h2 = d.reduced_arm_edges
    return d.arm_iso.image(p & h1) == p & h2


def gamma_symmetric_matchings(d: EllGraphDecomposition) -> list[Matching]:
    """Perfect matchings of the ``ell_p`` snake graph that agree on both reduced arms."""
    return [p for p in perfect_matchings(d.snake) if is_gamma_symmetric(d, p)]


def matching_x(t: CombinatorialTriangulation, g: SnakeGraph, m: Iterable[int]) -> Monomial:
    out = Monomial()
    for e in m:
        out = out * x_weight(t, g.edges[e].label)
    return out


def matching_y(t: CombinatorialTriangulation, g: SnakeGraph, m: Iterable[int]) -> Monomial:
    out = Monomial()
    for j in height(g, m):
        out = out * y_weight(t, g.tile(j).diagonal)
    return out


def snake_cross(t: CombinatorialTriangulation, g: SnakeGraph) -> Monomial:
    out = Monomial()
    for tile in g.tiles:
        out = out * x_weight(t, tile.diagonal)
    return out


def perfect_arms(d: EllGraphDecomposition, p: Iterable[int]) -> list[int]:
    """Arms (1 and/or 2) on which ``p`` restricts to a perfect matching."""
    p = frozenset(p)
    out = []
    for i in (0, 1):
        part = p & d.arm_edges[i]
        cov = [v for e in part for v in d.snake.edges[e].ends]
        if len(cov) == len(set(cov)) and set(cov) == d.arm_vertices[i]:
            out.append(i + 1)
    return out


def restriction_monomials(d: EllGraphDecomposition, p: Iterable[int], arm: int) -> tuple[Monomial, Monomial]:
    """``x`` and ``y`` of ``p`` restricted to an arm, as a matching of that arm alone."""
    p = frozenset(p)
    rng = d.arm1 if arm == 1 else d.arm2
    h, emap = sub_snake(d.snake, rng.start, rng.stop - 1)
    part = frozenset(emap[e] for e in p & d.arm_edges[arm - 1])
    return matching_x(d.t, h, part), matching_y(d.t, h, part)


def chosen_arm(d: EllGraphDecomposition, p: Iterable[int]) -> int:
    arms = perfect_arms(d, p)
    if not arms:
        raise BijectionError("neither arm restriction is a perfect matching")
    if len(arms) == 2:
        log.debug("both arm restrictions are perfect; using the first arm")
    return arms[0]


def barred_monomials(d: EllGraphDecomposition, p: Iterable[int]) -> tuple[Monomial, Monomial]:
    """``x(P)`` and ``y(P)`` divided by the monomials of the perfect arm restriction."""
    p = frozenset(p)
    rx, ry = restriction_monomials(d, p, chosen_arm(d, p))
    return matching_x(d.t, d.snake, p) / rx, matching_y(d.t, d.snake, p) / ry


# ----------------------------------------------------------------------
# restriction maps onto good matchings

def _tail_to_head_tile(d: EllGraphDecomposition, j: int) -> int:
    """Tile ``j`` of the tail loop graph as a tile of the head loop graph."""
    full = j + d.k
    if full <= d.k + d.l:
        return full
    return 2 * d.k + d.l + 1 - full


def _head_to_tail_tile(d: EllGraphDecomposition, j: int) -> int:
    if j > d.k:
        return j - d.k
    return (2 * d.k + d.l + 1 - j) - d.k


@dataclass(frozen=True)
class PhiImage:
    matching: Matching           # the symmetric matching
    side: str                    # "head" or "tail": the loop graph it restricts to
    removed: int                 # edge of the ell_p snake graph dropped by the restriction
    good: GoodMatching           # image in the target loop graph


def _restrict_to(d: EllGraphDecomposition, p: Matching, side: str) -> GoodMatching | None:
    lg, emap = (d.head_loop, d.head_map) if side == "head" else (d.tail_loop, d.tail_map)
    part = frozenset(emap[e] for e in p if e in emap)
    if not is_perfect_matching(lg.snake, part):
        return None
    (cut,) = lg.cuts
    if cut.c_prime not in part:
        return None
    edges = frozenset(lg.glued_id(e) for e in part - {cut.c_prime})
    try:
        return lg.classify(edges)
    except ValueError:
        return None


def _transport(d: EllGraphDecomposition, gm: GoodMatching, src: str) -> GoodMatching:
    """Move a good matching between the head and tail loop graphs by matching heights."""
    if (src == "tail") == d.notched_at_start:
        return gm
    if src == "tail":
        h = frozenset(_tail_to_head_tile(d, j) for j in gm.height)
        lg = d.head_loop
    else:
        h = frozenset(_head_to_tail_tile(d, j) for j in gm.height)
        lg = d.tail_loop
    for cand in lg.good_matchings:
        if cand.height == h:
            return cand
    raise BijectionError(f"no good matching with height {sorted(h)}")


def phi_single(d: EllGraphDecomposition) -> list[PhiImage]:
    """Images of all symmetric matchings under the restriction maps.

    A symmetric matching restricts to a perfect matching of the head (tiles
    ``1..k+l``) containing the glued edge of tile ``k``, or to one of the
    tail (tiles ``k+1..2k+l``) containing the glued edge of tile ``k+l+1``.
    Dropping that edge gives a good matching of the corresponding loop
    graph, which is carried to :attr:`EllGraphDecomposition.target` by
    heights.

    Raises
    ------
    BijectionError
        If some symmetric matching restricts to neither side.
    """
    out = []
    for p in gamma_symmetric_matchings(d):
        for side in ("head", "tail"):
            gm = _restrict_to(d, p, side)
            if gm is not None:
                lg = d.head_loop if side == "head" else d.tail_loop
                (cut,) = lg.cuts
                emap = d.head_map if side == "head" else d.tail_map
                removed = next(e for e, v in emap.items() if v == cut.c_prime)
                out.append(PhiImage(p, side, removed, _transport(d, gm, side)))
                break
        else:
            raise BijectionError(f"symmetric matching {sorted(p)} restricts to no loop graph")
    return out


@dataclass(frozen=True)
class BijectionReport:
    symmetric: int
    good: int
    classes: dict
    injective: bool
    surjective: bool
    mismatches: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.symmetric == self.good and self.injective and self.surjective and not self.mismatches


def _good_monomials(t, lg: LoopGraph, gm: GoodMatching) -> tuple[Monomial, Monomial]:
    xm = Monomial()
    for e in gm.edges:
        xm = xm * x_weight(t, lg.label(e))
    ym = Monomial()
    for j in gm.height:
        ym = ym * y_weight(t, lg.snake.tile(j).diagonal)
    return xm, ym


def check_phi_single(d: EllGraphDecomposition) -> BijectionReport:
    """Verify that :func:`phi_single` is a bijection preserving barred monomials."""
    images = phi_single(d)
    lg = d.target
    goods = lg.good_matchings
    hit = [im.good.edges for im in images]
    mism = []
    classes: dict[str, int] = {}
    for im in images:
        cls = im.side + ":" + ",".join(im.good.cut_types)
        classes[cls] = classes.get(cls, 0) + 1
        xb, yb = barred_monomials(d, im.matching)
        xg, yg = _good_monomials(d.t, lg, im.good)
        if (xb, yb) != (xg, yg):
            mism.append(f"{sorted(im.matching)}: barred ({xb}, {yb}) but image ({xg}, {yg})")
    return BijectionReport(
        symmetric=len(images), good=len(goods), classes=classes,
        injective=len(set(hit)) == len(hit),
        surjective=set(hit) == {g.edges for g in goods},
        mismatches=tuple(mism),
    )


def msw_expand_single(t: CombinatorialTriangulation, arc: TaggedArc) -> LaurentPolynomial:
    """Expansion of a singly notched arc as a sum over symmetric matchings.

    Equals ``cross(arc) / cross(ell_p)`` times the sum of ``x̄ ȳ``.
    """
    require_valid(t)
    if sum(arc.notched_ends) != 1:
        raise UnsupportedInputError("the symmetric-matching formula needs exactly one notched end")
    d = build_ellp(t, arc)
    total: dict[Monomial, int] = {}
    for p in gamma_symmetric_matchings(d):
        xb, yb = barred_monomials(d, p)
        total[xb * yb] = total.get(xb * yb, 0) + 1
    arm, _ = sub_snake(d.snake, 1, d.k)
    factor = snake_cross(t, arm) / snake_cross(t, d.snake)
    return LaurentPolynomial(total) * LaurentPolynomial.from_monomial(factor)


# ----------------------------------------------------------------------
# doubly notched arcs

@dataclass(frozen=True)
class CompatiblePair:
    at_start: Matching     # symmetric matching of the curve for the start puncture
    at_end: Matching       # symmetric matching of the curve for the end puncture
    arms: tuple[int, int]  # arms whose restrictions are perfect and agree


def _arm_isos(ds: EllGraphDecomposition, de: EllGraphDecomposition) -> dict:
    """Isomorphisms from each arm of ``ds`` to each arm of ``de``.

    ``ds`` runs along the arc backwards and ``de`` forwards, so the first arm
    of one is the reverse of the first arm of the other.
    """
    k = ds.k
    out = {}
    for i, j in product((1, 2), (1, 2)):
        a = list(ds.arm1 if i == 1 else ds.arm2)
        b = list(de.arm1 if j == 1 else de.arm2)
        if i == j:
            b = b[::-1]
        out[(i, j)] = find_arm_isomorphism(ds.snake, a, de.snake, b)
    if len(a) != k:  # pragma: no cover - arms share the arc
        raise BijectionError("arm lengths differ")
    return out


def compatible_pairs(ds: EllGraphDecomposition, de: EllGraphDecomposition) -> list[CompatiblePair]:
    """Pairs of symmetric matchings whose perfect arm restrictions agree."""
    isos = _arm_isos(ds, de)
    sym_s = [(p, perfect_arms(ds, p)) for p in gamma_symmetric_matchings(ds)]
    sym_e = [(q, perfect_arms(de, q)) for q in gamma_symmetric_matchings(de)]
    out = []
    for p, arms_p in sym_s:
        for q, arms_q in sym_e:
            for i, j in product(arms_p, arms_q):
                iso = isos[(i, j)]
                if iso.image(p & ds.arm_edges[i - 1]) == q & de.arm_edges[j - 1]:
                    out.append(CompatiblePair(p, q, (i, j)))
                    break
    return out


def double_barred_monomials(
    ds: EllGraphDecomposition, de: EllGraphDecomposition, pair: CompatiblePair
) -> tuple[Monomial, Monomial]:
    """``x(P)x(Q)/x(R)^3`` and the same for ``y``, with ``R`` the shared arm restriction."""
    rx, ry = restriction_monomials(ds, pair.at_start, pair.arms[0])
    xm = matching_x(ds.t, ds.snake, pair.at_start) * matching_x(de.t, de.snake, pair.at_end)
    ym = matching_y(ds.t, ds.snake, pair.at_start) * matching_y(de.t, de.snake, pair.at_end)
    return xm / rx ** 3, ym / ry ** 3


@dataclass(frozen=True)
class DoubleDecomposition:
    start: EllGraphDecomposition    # curve around the start puncture
    end: EllGraphDecomposition      # curve around the end puncture
    target: LoopGraph               # loop graph of the doubly notched arc


def build_double(t: CombinatorialTriangulation, arc: TaggedArc) -> DoubleDecomposition:
    if not all(arc.notched_ends):
        raise UnsupportedInputError("the arc is not notched at both ends")
    ds = build_ellp(t, arc, "start")
    de = build_ellp(t, arc, "end")
    return DoubleDecomposition(ds, de, expand(t, arc, normalize=False).loop_graph)


def _single_image(d: EllGraphDecomposition, p: Matching) -> GoodMatching:
    for side in ("head", "tail"):
        gm = _restrict_to(d, p, side)
        if gm is not None:
            return _transport(d, gm, side)
    raise BijectionError(f"symmetric matching {sorted(p)} restricts to no loop graph")


def phi_double(dd: DoubleDecomposition) -> list[tuple[CompatiblePair, GoodMatching]]:
    """Glue the single-notch images of a compatible pair into one good matching.

    The start curve's image fixes the height on the start hook and the plain
    arc; the end curve's image fixes it on the plain arc and the end hook.
    The two must agree on the plain arc.
    """
    ds, de = dd.start, dd.end
    lg = dd.target
    k, ls, le = ds.k, ds.l, de.l
    by_height = {gm.height: gm for gm in lg.good_matchings}
    out = []
    for pair in compatible_pairs(ds, de):
        hs = _single_image(ds, pair.at_start).height   # tiles 1..ls+k of the target
        he = _single_image(de, pair.at_end).height     # tiles 1..k+le, shift by ls
        he = frozenset(j + ls for j in he)
        mid = set(range(ls + 1, ls + k + 1))
        if hs & mid != he & mid:
            raise BijectionError(f"pair {pair} disagrees on the plain arc")
        h = frozenset(hs | he)
        if h not in by_height:
            raise BijectionError(f"no good matching with height {sorted(h)}")
        out.append((pair, by_height[h]))
    if len(lg) != ls + k + le:  # pragma: no cover - the three pieces tile the loop graph
        raise BijectionError("loop graph size does not match its pieces")
    return out


def check_phi_double(dd: DoubleDecomposition) -> BijectionReport:
    images = phi_double(dd)
    lg = dd.target
    goods = lg.good_matchings
    hit = [gm.edges for _, gm in images]
    mism = []
    classes: dict[str, int] = {}
    for pair, gm in images:
        cls = f"arms{pair.arms}:" + ",".join(gm.cut_types)
        classes[cls] = classes.get(cls, 0) + 1
        xb, yb = double_barred_monomials(dd.start, dd.end, pair)
        xg, yg = _good_monomials(dd.start.t, lg, gm)
        if (xb, yb) != (xg, yg):
            mism.append(f"pair {pair.arms}: barred ({xb}, {yb}) but image ({xg}, {yg})")
    return BijectionReport(
        symmetric=len(images), good=len(goods), classes=classes,
        injective=len(set(hit)) == len(hit),
        surjective=set(hit) == {g.edges for g in goods},
        mismatches=tuple(mism),
    )


def msw_expand_double(t: CombinatorialTriangulation, arc: TaggedArc) -> LaurentPolynomial:
    """Expansion of a doubly notched arc as a sum over compatible pairs."""
    require_valid(t)
    dd = build_double(t, arc)
    ds, de = dd.start, dd.end
    total: dict[Monomial, int] = {}
    for pair in compatible_pairs(ds, de):
        xb, yb = double_barred_monomials(ds, de, pair)
        total[xb * yb] = total.get(xb * yb, 0) + 1
    arm, _ = sub_snake(ds.snake, 1, ds.k)
    factor = snake_cross(t, arm) ** 3 / (snake_cross(t, ds.snake) * snake_cross(t, de.snake))
    return LaurentPolynomial(total) * LaurentPolynomial.from_monomial(factor)


def msw_expand(t: CombinatorialTriangulation, arc: TaggedArc) -> LaurentPolynomial:
    """Dispatch on the number of notched ends."""
    n = sum(arc.notched_ends)
    if n == 1:
        return msw_expand_single(t, arc)
    if n == 2:
        return msw_expand_double(t, arc)
    raise UnsupportedInputError("the symmetric-matching formulas apply only to notched arcs")


def verify(t: CombinatorialTriangulation, arc: TaggedArc) -> tuple[BijectionReport, bool]:
    """Bijection report plus whether the symmetric-matching formula equals :func:`expand`."""
    n = sum(arc.notched_ends)
    if n == 1:
        rep = check_phi_single(build_ellp(t, arc))
    elif n == 2:
        rep = check_phi_double(build_double(t, arc))
    else:
        raise UnsupportedInputError("the arc has no notched end")
    same = msw_expand(t, arc) == expand(t, arc, normalize=False).polynomial
    return rep, same
