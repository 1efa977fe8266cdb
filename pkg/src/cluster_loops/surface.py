"""Combinatorial triangulated surfaces, tagged arcs and the adjacency matrix.

A triangulation is a list of triangles, each a clockwise triple of side labels.
Every interior arc label fills exactly two *slots* (triangle, position) and
every boundary label fills one.  Corner ``i`` of a triangle sits between slot
``i`` and slot ``i + 1``; marked points are recovered by walking corners
around each vertex, so they never need to be supplied.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import NamedTuple

import numpy as np

log = logging.getLogger(__name__)

PLAIN = "plain"
NOTCHED = "notched"


class SurfaceError(ValueError):
    """Invalid triangulation or arc data."""


class UnknownLabelError(SurfaceError, KeyError):
    pass


class UnsupportedInputError(SurfaceError):
    """The input lies outside the hypotheses of the expansion formula."""


class Slot(NamedTuple):
    triangle: int
    pos: int


class Corner(NamedTuple):
    triangle: int
    pos: int


@dataclass(frozen=True)
class SelfFolded:
    radius: str
    loop: str
    puncture: str = ""


@dataclass(frozen=True)
class CombinatorialTriangulation:
    arcs: tuple[str, ...]
    boundary: tuple[str, ...]
    triangles: tuple[tuple[str, str, str], ...]
    self_folded: tuple[SelfFolded, ...] = ()
    punctures: tuple[str, ...] = ()
    marked_points: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(str(a) for a in self.arcs))
        object.__setattr__(self, "boundary", tuple(str(b) for b in self.boundary))
        object.__setattr__(
            self, "triangles", tuple(tuple(str(s) for s in tri) for tri in self.triangles)
        )
        object.__setattr__(self, "self_folded", tuple(self.self_folded))
        object.__setattr__(self, "punctures", tuple(self.punctures))
        object.__setattr__(self, "marked_points", tuple(self.marked_points))

    # labels ----------------------------------------------------------
    @cached_property
    def index(self) -> dict[str, int]:
        """Dense indices: arcs ``1..n`` then boundary segments ``n+1..m``."""
        labels = self.arcs + self.boundary
        return {lab: i + 1 for i, lab in enumerate(labels)}

    @property
    def n(self) -> int:
        return len(self.arcs)

    def is_arc(self, label: str) -> bool:
        return label in self._arc_set

    @cached_property
    def _arc_set(self) -> frozenset[str]:
        return frozenset(self.arcs)

    def check_label(self, label: str) -> str:
        label = str(label)
        if label not in self.index:
            raise UnknownLabelError(f"unknown label {label!r}")
        return label

    def label_at(self, slot: Slot) -> str:
        return self.triangles[slot.triangle][slot.pos]

    @cached_property
    def slots(self) -> dict[str, tuple[Slot, ...]]:
        out: dict[str, list[Slot]] = {}
        for t, tri in enumerate(self.triangles):
            for i, lab in enumerate(tri):
                out.setdefault(lab, []).append(Slot(t, i))
        return {k: tuple(v) for k, v in out.items()}

    def partner(self, slot: Slot) -> Slot | None:
        """The other side of the arc at ``slot``; ``None`` for boundary segments."""
        occ = self.slots[self.label_at(slot)]
        if len(occ) != 2:
            return None
        return occ[1] if occ[0] == slot else occ[0]

    # self-folded triangles -------------------------------------------
    @cached_property
    def radius_to_loop(self) -> dict[str, str]:
        return {sf.radius: sf.loop for sf in self.self_folded}

    @cached_property
    def loop_to_radius(self) -> dict[str, str]:
        return {sf.loop: sf.radius for sf in self.self_folded}

    def is_self_folded_triangle(self, t: int) -> bool:
        return len(set(self.triangles[t])) < 3

    # vertices ---------------------------------------------------------
    def rotate_cw(self, corner: Corner) -> tuple[Slot, Corner] | None:
        """Rotate clockwise about the corner's vertex: cross slot ``pos``."""
        slot = Slot(corner.triangle, corner.pos)
        other = self.partner(slot)
        if other is None:
            return None
        return slot, Corner(other.triangle, (other.pos - 1) % 3)

    def rotate_ccw(self, corner: Corner) -> tuple[Slot, Corner] | None:
        slot = Slot(corner.triangle, (corner.pos + 1) % 3)
        other = self.partner(slot)
        if other is None:
            return None
        return slot, Corner(other.triangle, other.pos)

    @cached_property
    def _vertex_data(self):
        corner_vertex: dict[Corner, int] = {}
        stars: list[tuple[Corner, ...]] = []
        closed: list[bool] = []
        for t in range(len(self.triangles)):
            for i in range(3):
                start = Corner(t, i)
                if start in corner_vertex:
                    continue
                # walk anticlockwise to the beginning of an open chain (if any)
                c = start
                is_closed = True
                while True:
                    step = self.rotate_ccw(c)
                    if step is None:
                        is_closed = False
                        break
                    c = step[1]
                    if c == start:
                        break
                first = c if not is_closed else start
                chain = [first]
                c = first
                while True:
                    step = self.rotate_cw(c)
                    if step is None:
                        break
                    c = step[1]
                    if c == first:
                        break
                    chain.append(c)
                vid = len(stars)
                for cc in chain:
                    corner_vertex[cc] = vid
                stars.append(tuple(chain))
                closed.append(is_closed)
        return corner_vertex, stars, closed

    def vertex_of(self, corner: Corner) -> int:
        return self._vertex_data[0][Corner(*corner)]

    def is_puncture(self, vertex: int) -> bool:
        return self._vertex_data[2][vertex]

    @property
    def vertex_count(self) -> int:
        return len(self._vertex_data[1])

    def corners_at(self, vertex: int) -> tuple[Corner, ...]:
        """Corners at a vertex in clockwise order (open chains start at the boundary)."""
        return self._vertex_data[1][vertex]

    @cached_property
    def puncture_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.vertex_count) if self.is_puncture(v))

    @cached_property
    def vertex_names(self) -> dict[int, str]:
        names: dict[int, str] = {}
        for sf in self.self_folded:
            v = self.self_folded_puncture_vertex(sf.radius)
            if v is not None and sf.puncture:
                names[v] = sf.puncture
        free = [p for p in self.punctures if p not in names.values()]
        for v in self.puncture_vertices:
            if v not in names:
                names[v] = free.pop(0) if free else f"p{v}"
        for v in range(self.vertex_count):
            names.setdefault(v, f"v{v}")
        return names

    def vertex_by_name(self, name: str) -> int | None:
        for v, n in self.vertex_names.items():
            if n == name:
                return v
        return None

    def self_folded_puncture_vertex(self, radius: str) -> int | None:
        for t, tri in enumerate(self.triangles):
            if tri.count(radius) == 2:
                i = next(i for i in range(3) if tri[i] == radius and tri[(i + 1) % 3] == radius)
                return self._vertex_data[0][Corner(t, i)]
        return None

    @cached_property
    def self_folded_punctures(self) -> frozenset[int]:
        out = set()
        for sf in self.self_folded:
            v = self.self_folded_puncture_vertex(sf.radius)
            if v is not None:
                out.add(v)
        return frozenset(out)

    def is_closed_surface(self) -> bool:
        return not self.boundary

    # convenience -------------------------------------------------------
    def with_labels(self, mapping: dict[str, str]) -> "CombinatorialTriangulation":
        """Rename labels (arcs, boundary, triangle sides and self-folded records)."""
        f = lambda s: mapping.get(s, s)  # noqa: E731
        return CombinatorialTriangulation(
            arcs=tuple(map(f, self.arcs)),
            boundary=tuple(map(f, self.boundary)),
            triangles=tuple(tuple(map(f, tri)) for tri in self.triangles),
            self_folded=tuple(SelfFolded(f(s.radius), f(s.loop), s.puncture) for s in self.self_folded),
            punctures=self.punctures,
            marked_points=self.marked_points,
        )


def validate_triangulation(t: CombinatorialTriangulation) -> list[str]:
    """Return one diagnostic per violated invariant (empty list when valid)."""
    diags: list[str] = []
    labels = t.arcs + t.boundary
    seen = set()
    for lab in labels:
        if lab in seen:
            diags.append(f"label {lab!r} declared twice")
        seen.add(lab)
    counts: dict[str, int] = {}
    for tri in t.triangles:
        if len(tri) != 3:
            diags.append(f"triangle {tri!r} does not have three sides")
        for s in tri:
            counts[s] = counts.get(s, 0) + 1
    for s in counts:
        if s not in seen:
            diags.append(f"label {s!r} used in a triangle but not declared")
    for a in t.arcs:
        if counts.get(a, 0) != 2:
            diags.append(f"arc {a!r} occupies {counts.get(a, 0)} triangle sides, expected 2")
    for b in t.boundary:
        if counts.get(b, 0) != 1:
            diags.append(f"boundary segment {b!r} occupies {counts.get(b, 0)} triangle sides, expected 1")
    if diags:
        return diags

    recorded = {sf.radius for sf in t.self_folded}
    for tri in t.triangles:
        rep = [s for s in set(tri) if tri.count(s) > 1]
        for s in rep:
            if tri.count(s) == 3:
                diags.append(f"label {s!r} fills all sides of one triangle")
            elif s not in recorded:
                diags.append(f"arc {s!r} is a folded side but has no self_folded record")
    for sf in t.self_folded:
        if sf.radius not in t._arc_set or sf.loop not in t._arc_set:
            diags.append(f"self_folded record {sf.radius!r}/{sf.loop!r} names an unknown arc")
            continue
        hits = [tri for tri in t.triangles if tri.count(sf.radius) == 2]
        if len(hits) != 1 or sf.loop not in hits[0]:
            diags.append(f"radius {sf.radius!r} is not folded inside a triangle closed by loop {sf.loop!r}")
        if sf.puncture and t.punctures and sf.puncture not in t.punctures:
            diags.append(f"self_folded puncture {sf.puncture!r} is not a declared puncture")
    if diags:
        return diags

    # every corner belongs to exactly one vertex and each vertex star revisits
    # a given corner once
    cv, stars, closed = t._vertex_data
    for vid, star in enumerate(stars):
        if len(set(star)) != len(star):
            diags.append(f"corner walk around vertex {vid} revisits a corner")
    if len(cv) != 3 * len(t.triangles):
        diags.append("corner walk does not cover every triangle corner")
    n_punct = sum(closed)
    if t.punctures and len(t.punctures) != n_punct:
        diags.append(f"{len(t.punctures)} punctures declared but the triangles have {n_punct}")
    if t.marked_points:
        n_bdry = len(closed) - n_punct
        if len(t.marked_points) != n_bdry + n_punct and len(t.marked_points) != n_bdry:
            diags.append(
                f"{len(t.marked_points)} marked points declared but the triangles have "
                f"{n_bdry} boundary points and {n_punct} punctures"
            )
    for sf in t.self_folded:
        v = t.self_folded_puncture_vertex(sf.radius)
        if v is None or not closed[v] or len(stars[v]) != 1:
            diags.append(f"self-folded triangle with radius {sf.radius!r} does not enclose a degree-1 puncture")
    return diags


def require_valid(t: CombinatorialTriangulation) -> None:
    diags = validate_triangulation(t)
    if diags:
        raise SurfaceError("invalid triangulation: " + "; ".join(diags))


def pi_T(t: CombinatorialTriangulation, i: str) -> str:
    """Send the radius of a self-folded triangle to its loop; fix everything else."""
    i = str(i)
    if i not in t._arc_set:
        raise UnknownLabelError(f"{i!r} is not an interior arc")
    return t.radius_to_loop.get(i, i)


def adjacency_matrix(t: CombinatorialTriangulation) -> np.ndarray:
    """Signed adjacency matrix, rows and columns in the order of ``t.arcs``."""
    require_valid(t)
    n = t.n
    idx = {a: k for k, a in enumerate(t.arcs)}
    pre: dict[str, list[int]] = {}
    for a in t.arcs:
        pre.setdefault(pi_T(t, a), []).append(idx[a])
    B = np.zeros((n, n), dtype=np.int64)
    for tri_i, tri in enumerate(t.triangles):
        if t.is_self_folded_triangle(tri_i):
            continue
        for s in range(3):
            u, v = tri[s], tri[(s + 1) % 3]
            for j in pre.get(u, ()):
                for k in pre.get(v, ()):
                    B[j, k] += 1
                    B[k, j] -= 1
    return B


def puncture_star(t: CombinatorialTriangulation, p: int | str) -> tuple[str, ...]:
    """Clockwise sequence of arc ends at a puncture (loops contribute twice)."""
    v = t.vertex_by_name(p) if isinstance(p, str) else p
    if v is None or not (0 <= v < t.vertex_count) or not t.is_puncture(v):
        raise SurfaceError(f"{p!r} is not a puncture")
    out = []
    for c in t.corners_at(v):
        out.append(t.label_at(Slot(c.triangle, c.pos)))
    return tuple(out)


# ----------------------------------------------------------------------
# flips (used by the test corpus and the CLI oracle helpers)

def flip(t: CombinatorialTriangulation, label: str) -> CombinatorialTriangulation:
    """Ideal flip of an arc that is neither a radius nor a loop of a self-folded triangle.

    The new diagonal keeps the old label.  A flip inside a once-punctured digon
    produces a self-folded triangle, recorded with the radius it encloses.
    """
    label = t.check_label(label)
    if label not in t._arc_set:
        raise SurfaceError(f"cannot flip boundary segment {label!r}")
    if label in t.radius_to_loop or label in t.loop_to_radius:
        raise SurfaceError(f"arc {label!r} lies in a self-folded triangle")
    s1, s2 = t.slots[label]
    if s1.triangle == s2.triangle:
        raise SurfaceError(f"arc {label!r} is folded")
    A, B = t.triangles[s1.triangle], t.triangles[s2.triangle]
    a1, a2 = A[(s1.pos + 1) % 3], A[(s1.pos + 2) % 3]
    b1, b2 = B[(s2.pos + 1) % 3], B[(s2.pos + 2) % 3]
    new_a = (label, a2, b1)
    new_b = (label, b2, a1)
    tris = list(t.triangles)
    tris[s1.triangle] = new_a
    tris[s2.triangle] = new_b
    self_folded = list(t.self_folded)
    for tri in (new_a, new_b):
        if len(set(tri)) < 3:
            rad = next(s for s in tri if tri.count(s) == 2)
            loop = next(s for s in tri if tri.count(s) == 1)
            self_folded.append(SelfFolded(rad, loop, ""))
    out = CombinatorialTriangulation(
        arcs=t.arcs, boundary=t.boundary, triangles=tuple(tris),
        self_folded=tuple(self_folded), punctures=t.punctures, marked_points=t.marked_points,
    )
    # name the new self-folded puncture after the old vertex name when possible
    fixed = []
    for sf in out.self_folded:
        if not sf.puncture:
            v = out.self_folded_puncture_vertex(sf.radius)
            name = _match_vertex_name(t, out, v, {label})
            sf = SelfFolded(sf.radius, sf.loop, name)
        fixed.append(sf)
    return CombinatorialTriangulation(
        arcs=out.arcs, boundary=out.boundary, triangles=out.triangles,
        self_folded=tuple(fixed), punctures=out.punctures, marked_points=out.marked_points,
    )


def _match_vertex_name(
    old: CombinatorialTriangulation, new: CombinatorialTriangulation, v: int, flipped: set
) -> str:
    # the puncture keeps its name: match stars once the flipped arc is ignored
    want = Counter(s for s in puncture_star(new, v) if s not in flipped)
    for w in old.puncture_vertices:
        if Counter(s for s in puncture_star(old, w) if s not in flipped) == want:
            return old.vertex_names[w]
    return f"p{v}"


class ArcBecameEdgeError(SurfaceError):
    """The transported curve is isotopic to the new diagonal of the flip."""


def transport_path(t: CombinatorialTriangulation, label: str, steps: list[Step]) -> list[Step]:
    """Re-express a curve's triangle path after flipping ``label`` with :func:`flip`.

    Each passage of the curve through the flipped quadrilateral is replaced by
    the unique minimal passage between the same two sides (or corners).
    """
    s1, s2 = t.slots[label]
    A, B = s1.triangle, s2.triangle
    p1, q1 = s1.pos, s2.pos
    # quadrilateral sides and corners, named as in flip()
    side_of = {
        (A, (p1 + 1) % 3): "a1", (A, (p1 + 2) % 3): "a2",
        (B, (q1 + 1) % 3): "b1", (B, (q1 + 2) % 3): "b2",
    }
    corner_of = {
        (A, p1): "Y", (A, (p1 + 1) % 3): "Z", (A, (p1 + 2) % 3): "X",
        (B, q1): "X", (B, (q1 + 1) % 3): "W", (B, (q1 + 2) % 3): "Y",
    }
    # new triangles: A -> (label, a2, b1), B -> (label, b2, a1)
    new_side = {"a2": (A, 1), "b1": (A, 2), "b2": (B, 1), "a1": (B, 2)}
    homes = {
        "a2": {A}, "b1": {A}, "b2": {B}, "a1": {B},
        "X": {A}, "Y": {B}, "Z": {A, B}, "W": {A, B},
    }

    out: list[Step] = []
    i = 0
    n = len(steps)
    while i < n:
        st = steps[i]
        if st.triangle not in (A, B):
            out.append(st)
            i += 1
            continue
        j = i
        while steps[j].exit is not None and (steps[j].triangle, steps[j].exit) in ((A, p1), (B, q1)):
            j += 1
        first, last = steps[i], steps[j]
        if first.entry is None:
            e = corner_of[(first.triangle, (first.exit + 1) % 3)] if first.exit is not None else None
        else:
            e = side_of[(first.triangle, first.entry)]
        if last.exit is None:
            f = corner_of[(last.triangle, (last.entry + 1) % 3)] if last.entry is not None else None
        else:
            f = side_of[(last.triangle, last.exit)]
        if e is None or f is None:
            raise SurfaceError("curve without crossings cannot be transported")
        common = homes[e] & homes[f]
        if len(common) == 2:
            raise ArcBecameEdgeError(f"the curve becomes the new arc {label!r}")

        def pos(elem, tri):
            return new_side[elem][1] if elem in new_side else None

        if common:
            (tri,) = common
            out.append(Step(tri, pos(e, tri), pos(f, tri)))
        else:
            (te,) = homes[e] if len(homes[e]) == 1 else homes[e] - homes[f]
            (tf,) = homes[f] if len(homes[f]) == 1 else homes[f] - homes[e]
            out.append(Step(te, pos(e, te), 0))
            out.append(Step(tf, 0, pos(f, tf)))
        i = j + 1
    return out


# ----------------------------------------------------------------------
# tagged arcs and tagged triangulations

@dataclass(frozen=True)
class Endpoint:
    point: str
    tag: str = PLAIN


@dataclass(frozen=True)
class TaggedArc:
    """A tagged arc given by the arcs its plain version crosses, in order.

    ``exits`` optionally lists, for each crossing, the slot position (0-2) the
    curve leaves its current triangle by.  It is only needed when a crossing
    label is the folded side of a self-folded triangle, where the label alone
    does not say which way the curve passes the enclosed puncture.
    """

    endpoints: tuple[Endpoint, Endpoint]
    crossings: tuple[str, ...]
    first_triangle: int
    last_triangle: int | None = None
    name: str = "gamma"
    exits: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(str(c) for c in self.crossings))
        object.__setattr__(
            self, "endpoints",
            tuple(e if isinstance(e, Endpoint) else Endpoint(*e) for e in self.endpoints),
        )
        if self.exits is not None:
            object.__setattr__(self, "exits", tuple(int(x) for x in self.exits))
            if len(self.exits) != len(self.crossings):
                raise SurfaceError("exits must give one slot per crossing")

    @property
    def notched_ends(self) -> tuple[bool, bool]:
        return tuple(e.tag == NOTCHED for e in self.endpoints)

    def with_tags(self, start: str, end: str) -> "TaggedArc":
        return replace(
            self,
            endpoints=(Endpoint(self.endpoints[0].point, start), Endpoint(self.endpoints[1].point, end)),
        )


class Step(NamedTuple):
    """One triangle visited by a curve: entered through ``entry``, left through ``exit``."""

    triangle: int
    entry: int | None
    exit: int | None


def arc_path(t: CombinatorialTriangulation, arc: TaggedArc) -> list[Step]:
    """Resolve the crossing sequence of ``arc`` into triangle slots."""
    d = len(arc.crossings)
    if not (0 <= arc.first_triangle < len(t.triangles)):
        raise SurfaceError(f"first_triangle {arc.first_triangle} out of range")
    for c in arc.crossings:
        if c not in t._arc_set:
            raise SurfaceError(f"crossing label {c!r} is not an interior arc")
    steps: list[Step] = []
    tri = arc.first_triangle
    entry: int | None = None
    for j in range(d):
        lab = arc.crossings[j]
        cands = [i for i in range(3) if t.triangles[tri][i] == lab and i != entry]
        if arc.exits is not None:
            if arc.exits[j] not in cands:
                raise SurfaceError(
                    f"step {j + 1}: slot {arc.exits[j]} of triangle {tri} {t.triangles[tri]} "
                    f"is not a crossable side labelled {lab!r}"
                )
            x = arc.exits[j]
        elif len(cands) == 1:
            x = cands[0]
        elif not cands:
            raise SurfaceError(
                f"step {j + 1}: triangle {tri} {t.triangles[tri]} has no side {lab!r} to cross"
            )
        else:
            raise SurfaceError(
                f"step {j + 1}: crossing the folded side {lab!r} is ambiguous; give exit slots"
            )
        steps.append(Step(tri, entry, x))
        nxt = t.partner(Slot(tri, x))
        tri, entry = nxt.triangle, nxt.pos
    steps.append(Step(tri, entry, None))
    if arc.last_triangle is not None and tri != arc.last_triangle:
        raise SurfaceError(
            f"crossing sequence ends in triangle {tri}, but last_triangle is {arc.last_triangle}"
        )
    return steps


def arc_from_path(
    t: CombinatorialTriangulation, steps: list[Step], endpoints, name: str = "gamma"
) -> TaggedArc:
    """Inverse of :func:`arc_path`; records exit slots only where they are needed."""
    crossings = tuple(t.label_at(Slot(s.triangle, s.exit)) for s in steps[:-1])
    exits = tuple(s.exit for s in steps[:-1])
    ambiguous = any(t.triangles[s.triangle].count(t.label_at(Slot(s.triangle, s.exit))) > 1 for s in steps[:-1])
    return TaggedArc(
        endpoints=tuple(endpoints), crossings=crossings, first_triangle=steps[0].triangle,
        last_triangle=steps[-1].triangle, name=name, exits=exits if ambiguous else None,
    )


def reverse_arc(t: CombinatorialTriangulation, arc: TaggedArc) -> TaggedArc:
    steps = arc_path(t, arc)
    rev = [Step(s.triangle, s.exit, s.entry) for s in reversed(steps)]
    return arc_from_path(t, rev, (arc.endpoints[1], arc.endpoints[0]), arc.name)


def flip_with_arc(
    t: CombinatorialTriangulation, label: str, arc: TaggedArc
) -> tuple[CombinatorialTriangulation, TaggedArc]:
    """Flip ``label`` and carry ``arc`` along to the new triangulation."""
    steps = transport_path(t, label, arc_path(t, arc))
    t2 = flip(t, label)
    return t2, arc_from_path(t2, steps, arc.endpoints, arc.name)


def start_corner(steps: list[Step]) -> Corner:
    s = steps[0]
    return Corner(s.triangle, (s.exit + 1) % 3)


def end_corner(steps: list[Step]) -> Corner:
    s = steps[-1]
    return Corner(s.triangle, (s.entry + 1) % 3)


def arc_endpoints(t: CombinatorialTriangulation, arc: TaggedArc) -> tuple[int, int]:
    steps = arc_path(t, arc)
    return t.vertex_of(start_corner(steps)), t.vertex_of(end_corner(steps))


def validate_arc(t: CombinatorialTriangulation, arc: TaggedArc) -> list[str]:
    diags = []
    try:
        steps = arc_path(t, arc)
    except SurfaceError as exc:
        return [str(exc)]
    if not arc.crossings:
        diags.append("the plain arc crosses no arc of the triangulation (it lies in T)")
        return diags
    for j in range(1, len(steps) - 1):
        if steps[j].entry == steps[j].exit:
            diags.append(f"crossing {j} immediately recrosses {arc.crossings[j - 1]!r}")
    va, vb = t.vertex_of(start_corner(steps)), t.vertex_of(end_corner(steps))
    for v, ep in ((va, arc.endpoints[0]), (vb, arc.endpoints[1])):
        if ep.tag not in (PLAIN, NOTCHED):
            diags.append(f"unknown tag {ep.tag!r}")
        if ep.tag == NOTCHED and not t.is_puncture(v):
            diags.append(f"endpoint {ep.point!r} lies on the boundary but is notched")
        # only self-folded punctures carry names that the data pins down
        pinned = {sf.puncture: t.self_folded_puncture_vertex(sf.radius) for sf in t.self_folded if sf.puncture}
        if ep.point in pinned and pinned[ep.point] != v:
            diags.append(f"endpoint {ep.point!r} does not match the vertex reached by the crossings")
    if va == vb and arc.endpoints[0].tag != arc.endpoints[1].tag:
        diags.append("both ends lie at one marked point but carry different tags")
    return diags


@dataclass(frozen=True)
class TaggedArcEntry:
    label: str
    underlying: str
    notched_at: frozenset = field(default_factory=frozenset)


@dataclass(frozen=True)
class TaggedTriangulation:
    """A tagged triangulation stored over its ideal skeleton ``base``."""

    base: CombinatorialTriangulation
    arcs: tuple[TaggedArcEntry, ...]

    def entry(self, label: str) -> TaggedArcEntry:
        for e in self.arcs:
            if e.label == label:
                return e
        raise UnknownLabelError(label)

    def notch_count(self, vertex: int) -> int:
        return sum(1 for e in self.arcs if vertex in e.notched_at)


def ideal_to_tagged(t: CombinatorialTriangulation) -> TaggedTriangulation:
    require_valid(t)
    entries = []
    for a in t.arcs:
        if a in t.loop_to_radius:
            r = t.loop_to_radius[a]
            entries.append(TaggedArcEntry(a, r, frozenset({t.self_folded_puncture_vertex(r)})))
        else:
            entries.append(TaggedArcEntry(a, a, frozenset()))
    return TaggedTriangulation(t, tuple(entries))


def tagged_to_ideal(tt: TaggedTriangulation) -> CombinatorialTriangulation:
    base = tt.base
    counts: dict[int, int] = {}
    for e in tt.arcs:
        for v in e.notched_at:
            counts[v] = counts.get(v, 0) + 1
    rename: dict[str, str] = {}
    for e in tt.arcs:
        single = [v for v in e.notched_at if counts[v] == 1]
        if not single:
            continue
        (v,) = single
        loop = base.radius_to_loop.get(e.underlying)
        if loop is None or base.self_folded_puncture_vertex(e.underlying) != v:
            raise SurfaceError(
                f"arc {e.label!r} is notched alone at a puncture without an enclosing self-folded triangle"
            )
        if loop != e.label:
            rename[loop] = e.label
    return base.with_labels(rename) if rename else base
