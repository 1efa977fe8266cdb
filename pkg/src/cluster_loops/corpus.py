"""Generated triangulated surfaces and tagged arcs for property checks.

Surfaces are punctured disks: a convex polygon with random interior points,
triangulated by Delaunay.  Arcs are straight segments between marked points,
so their crossing sequences are minimal by construction.  Random ideal flips
(which may create self-folded triangles) then move both the triangulation and
the arcs away from the geometric picture.

The default seed can be overridden with the ``CLUSTER_LOOPS_SEED`` environment
variable.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass
from typing import Iterator

import numpy as np
from scipy.spatial import Delaunay

from .surface import (
    NOTCHED,
    UnsupportedInputError,
    PLAIN,
    ArcBecameEdgeError,
    CombinatorialTriangulation,
    Endpoint,
    Step,
    SurfaceError,
    TaggedArc,
    arc_from_path,
    arc_path,
    end_corner,
    flip,
    start_corner,
    transport_path,
)

DEFAULT_SEED = 20240611


def corpus_seed(default: int = DEFAULT_SEED) -> int:
    """Seed from ``CLUSTER_LOOPS_SEED`` if set, else ``default``."""
    raw = os.environ.get("CLUSTER_LOOPS_SEED")
    return int(raw) if raw not in (None, "") else default


@dataclass(frozen=True)
class Case:
    """A triangulation together with one tagged arc on it."""

    surface: CombinatorialTriangulation
    arc: TaggedArc
    note: str = ""


def _cross(u, v) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


def _orient(p, a, b, c) -> float:
    return _cross(p[b] - p[a], p[c] - p[a])


def punctured_polygon(
    rng: random.Random, n_boundary: int, n_punctures: int
) -> tuple[CombinatorialTriangulation, np.ndarray, dict[tuple[int, int], str]]:
    """Delaunay triangulation of a convex polygon with interior punctures.

    Returns the triangulation, the point coordinates, and the map from a sorted
    vertex pair to its edge label.  Boundary points come first, named ``m0..``;
    punctures are named ``p0..``.
    """
    if n_boundary < 1 or n_boundary + n_punctures < 3:
        raise ValueError("need at least three points and one boundary point")
    if n_boundary < 3:
        raise ValueError("straight-line model needs at least three boundary points")
    while True:
        ang = sorted(rng.uniform(0, 2 * np.pi) for _ in range(n_boundary))
        pts = [(np.cos(a), np.sin(a)) for a in ang]
        for _ in range(n_punctures):
            r = 0.8 * np.sqrt(rng.random())
            a = rng.uniform(0, 2 * np.pi)
            pts.append((r * np.cos(a), r * np.sin(a)))
        P = np.array(pts)
        tri = Delaunay(P)
        hull = {tuple(sorted(e)) for e in tri.convex_hull}
        # every boundary point must lie on the hull and every puncture strictly inside
        ring = {tuple(sorted((i, (i + 1) % n_boundary))) for i in range(n_boundary)}
        if hull == ring and len(tri.simplices) == n_boundary + 2 * n_punctures - 2:
            break
    labels: dict[tuple[int, int], str] = {}
    arcs, boundary = [], []
    edges = set()
    for s in tri.simplices:
        for i in range(3):
            edges.add(tuple(sorted((int(s[i]), int(s[(i + 1) % 3])))))
    for e in sorted(edges - ring):
        labels[e] = str(len(arcs) + 1)
        arcs.append(labels[e])
    for e in sorted(ring):
        labels[e] = f"b{len(boundary) + 1}"
        boundary.append(labels[e])
    triangles = []
    for s in tri.simplices:
        a, b, c = (int(v) for v in s)
        if _orient(P, a, b, c) > 0:  # counter-clockwise; reverse for clockwise
            a, b, c = a, c, b
        triangles.append(
            (labels[tuple(sorted((a, b)))], labels[tuple(sorted((b, c)))], labels[tuple(sorted((c, a)))])
        )
    names = [f"m{i}" for i in range(n_boundary)] + [f"p{i}" for i in range(n_punctures)]
    t = CombinatorialTriangulation(
        arcs=tuple(arcs), boundary=tuple(boundary), triangles=tuple(triangles),
        punctures=tuple(names[n_boundary:]), marked_points=tuple(names),
    )
    return t, P, labels


def _segment_steps(t, P, labels, simplices_cw, a: int, b: int) -> list[Step] | None:
    """Triangle path of the straight segment from point ``a`` to point ``b``."""
    pa, pb = P[a], P[b]
    hits = []
    for (u, v), lab in labels.items():
        if lab not in t._arc_set or a in (u, v) or b in (u, v):
            continue
        d1 = _cross(pb - pa, P[u] - pa)
        d2 = _cross(pb - pa, P[v] - pa)
        d3 = _cross(P[v] - P[u], pa - P[u])
        d4 = _cross(P[v] - P[u], pb - P[u])
        if abs(d1) < 1e-9 or abs(d2) < 1e-9:
            return None  # passes through a marked point
        if d1 * d2 < 0 and d3 * d4 < 0:
            s = d3 / (d3 - d4)
            hits.append((s, lab, (u, v)))
    if not hits:
        return None
    hits.sort()
    params = [0.0] + [h[0] for h in hits] + [1.0]
    steps = []
    for j in range(len(params) - 1):
        mid = pa + (params[j] + params[j + 1]) / 2 * (pb - pa)
        tri = next(i for i, s in enumerate(simplices_cw) if _inside(P, s, mid))
        entry = None if j == 0 else t.triangles[tri].index(hits[j - 1][1])
        exit_ = None if j == len(hits) else t.triangles[tri].index(hits[j][1])
        steps.append(Step(tri, entry, exit_))
    return steps


def _inside(P, s, q) -> bool:
    a, b, c = (P[i] for i in s)
    d = [_cross(b - a, q - a), _cross(c - b, q - b), _cross(a - c, q - c)]
    return all(x <= 1e-12 for x in d) or all(x >= -1e-12 for x in d)


def straight_arcs(
    t: CombinatorialTriangulation,
    P: np.ndarray,
    labels: dict[tuple[int, int], str],
    min_punctures: int = 0,
    n_boundary: int | None = None,
) -> list[tuple[int, int, list[Step]]]:
    """All straight segments between marked points that cross at least one arc.

    With ``n_boundary`` given, only segments with at least ``min_punctures``
    puncture endpoints (indices ``>= n_boundary``) are traced.
    """
    inv = {v: k for k, v in labels.items()}
    simplices = []
    for tri in t.triangles:
        pts = []
        for lab in tri:
            for v in inv[lab]:
                if v not in pts:
                    pts.append(v)
        simplices.append(tuple(pts))
    out = []
    for a in range(len(P)):
        for b in range(a + 1, len(P)):
            if (a, b) in labels:
                continue
            if n_boundary is not None and (a >= n_boundary) + (b >= n_boundary) < min_punctures:
                continue
            steps = _segment_steps(t, P, labels, simplices, a, b)
            if steps:
                out.append((a, b, steps))
    return out


def flipped_edges(
    t: CombinatorialTriangulation,
    labels: dict[tuple[int, int], str],
    min_punctures: int,
    n_boundary: int,
) -> list[tuple[CombinatorialTriangulation, list[Step]]]:
    """Interior edges between marked points, each flipped away.

    The old edge then crosses its replacement once.  This supplies arcs
    between punctures that Delaunay joins directly.
    """
    out = []
    for (a, b), lab in sorted(labels.items()):
        if lab not in t._arc_set or (a >= n_boundary) + (b >= n_boundary) < min_punctures:
            continue
        if len({s.triangle for s in t.slots[lab]}) != 2:
            continue
        t2 = flip(t, lab)
        (s1, s2) = t2.slots[lab]
        out.append((t2, [Step(s1.triangle, None, s1.pos), Step(s2.triangle, s2.pos, None)]))
    return out


def _tagged(t, steps, rng: random.Random, names, tags=None) -> TaggedArc:
    va, vb = t.vertex_of(start_corner(steps)), t.vertex_of(end_corner(steps))
    eps = []
    for i, v in enumerate((va, vb)):
        tag = PLAIN
        if t.is_puncture(v):
            tag = tags[i] if tags else rng.choice((PLAIN, NOTCHED))
        eps.append(Endpoint(names.get(v, f"v{v}"), tag))
    if va == vb and eps[0].tag != eps[1].tag:
        eps[1] = Endpoint(eps[1].point, eps[0].tag)
    return arc_from_path(t, steps, eps)


def random_flips(
    rng: random.Random, t: CombinatorialTriangulation, steps: list[Step], count: int
) -> tuple[CombinatorialTriangulation, list[Step], list[str]]:
    """Apply up to ``count`` random ideal flips, transporting the curve each time."""
    done = []
    for _ in range(count):
        options = [
            a for a in t.arcs
            if a not in t.radius_to_loop and a not in t.loop_to_radius
            and len({s.triangle for s in t.slots[a]}) == 2
        ]
        rng.shuffle(options)
        for lab in options:
            try:
                new_steps = transport_path(t, lab, steps)
            except ArcBecameEdgeError:
                continue
            t = flip(t, lab)
            steps = new_steps
            done.append(lab)
            break
    return t, steps, done


def generate_cases(
    count: int,
    seed: int | None = None,
    max_boundary: int = 5,
    max_punctures: int = 2,
    max_flips: int = 4,
    max_tiles: int | None = None,
    tags: str = "random",
) -> Iterator[Case]:
    """Yield ``count`` random cases.

    Parameters
    ----------
    count : int
        Number of cases.
    seed : int, optional
        Defaults to :func:`corpus_seed`.
    max_boundary, max_punctures : int
        Size of the punctured polygons drawn.
    max_flips : int
        Upper bound on random flips applied after the geometric construction.
    max_tiles : int, optional
        Reject arcs whose plain crossing count exceeds this.
    tags : {"random", "plain", "single", "double"}
        Tagging policy at puncture endpoints.
    """
    rng = random.Random(corpus_seed() if seed is None else seed)
    made = 0
    while made < count:
        nb = rng.randint(3, max(3, max_boundary))
        need = {"single": 1, "double": 2}.get(tags, 0)
        np_ = rng.randint(max(need, 0 if tags == "plain" else 1), max(need, max_punctures))
        t, P, labels = punctured_polygon(rng, nb, np_)
        arcs = [(t, steps) for _, _, steps in straight_arcs(t, P, labels, need, nb)]
        if not arcs or (need == 2 and rng.random() < 0.5):
            arcs += flipped_edges(t, labels, need, nb)
        if not arcs:
            continue
        t, steps = rng.choice(arcs)
        t2, steps2, flips = random_flips(rng, t, steps, rng.randint(0, max_flips))
        if max_tiles is not None and len(steps2) - 1 > max_tiles:
            continue
        names = t2.vertex_names
        forced = None
        if tags == "plain":
            forced = (PLAIN, PLAIN)
        elif tags == "single":
            forced = (NOTCHED, PLAIN) if rng.random() < 0.5 else (PLAIN, NOTCHED)
        elif tags == "double":
            forced = (NOTCHED, NOTCHED)
        arc = _tagged(t2, steps2, rng, names, forced)
        if tags == "single" and sum(arc.notched_ends) != 1:
            continue
        if tags == "double" and sum(arc.notched_ends) != 2:
            continue
        made += 1
        yield Case(t2, arc, f"disk b={nb} p={np_} flips={','.join(flips) or '-'}")


def flip_sequence_case(
    t: CombinatorialTriangulation, flips: list[str]
) -> tuple[CombinatorialTriangulation, TaggedArc]:
    """The arc produced by the last of ``flips``, written as a curve on ``t``.

    Walks the flips backwards, transporting the new arc through each one.
    The returned triangulation equals ``t`` up to rotating triangles, and it
    is the one the arc's triangle indices refer to; use it for the oracle.

    Raises
    ------
    UnsupportedInputError
        If the final arc is a loop of a self-folded triangle, if some flip
        cannot be undone by an ideal flip, or if the arc already lies in ``t``.
    """
    if not flips:
        raise ValueError("need at least one flip")
    chain = [t]
    for f in flips:
        chain.append(flip(chain[-1], f))
    last = flips[-1]
    if last in chain[-1].loop_to_radius:
        raise UnsupportedInputError(f"arc {last!r} ends up as the loop of a self-folded triangle")
    try:
        cur = flip(chain[-1], last)
        s1, s2 = cur.slots[last]
        steps = [Step(s1.triangle, None, s1.pos), Step(s2.triangle, s2.pos, None)]
        for f in reversed(flips[:-1]):
            steps = transport_path(cur, f, steps)
            cur = flip(cur, f)
    except ArcBecameEdgeError as exc:
        raise UnsupportedInputError("the arc is an arc of the initial triangulation") from exc
    except SurfaceError as exc:
        raise UnsupportedInputError(f"cannot undo the flips: {exc}") from exc
    names = cur.vertex_names
    return cur, _tagged(cur, steps, random.Random(0), names, (PLAIN, PLAIN))
