"""Laurent expansions of cluster variables of tagged arcs via loop graphs.

Variables are named ``x<label>`` and ``y<label>``.  A loop that encloses a
self-folded triangle stands for the product of its two tagged arcs, so its
``x`` weight is ``x<loop> * x<radius>``.  A radius on a positive diagonal
contributes ``y<radius> / y<loop>``: the loop label doubles as the label of
the radius notched at the enclosed puncture.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Iterable

from .laurent import LaurentPolynomial, Monomial, exact_divide
from .loopgraph import CW, GoodMatching, LoopGraph, loop_graph
from .surface import (
    NOTCHED,
    PLAIN,
    CombinatorialTriangulation,
    Corner,
    Endpoint,
    Step,
    SurfaceError,
    TaggedArc,
    UnsupportedInputError,
    arc_from_path,
    arc_path,
    end_corner,
    require_valid,
    start_corner,
)

log = logging.getLogger(__name__)


def xvar(label: str) -> str:
    return f"x{label}"


def yvar(label: str) -> str:
    return f"y{label}"


def x_weight(t: CombinatorialTriangulation, label: str) -> Monomial:
    if label in t.loop_to_radius:
        return Monomial.var(xvar(label)) * Monomial.var(xvar(t.loop_to_radius[label]))
    return Monomial.var(xvar(label))


def y_weight(t: CombinatorialTriangulation, label: str) -> Monomial:
    m = Monomial.var(yvar(label))
    if label in t.radius_to_loop:
        m = m / Monomial.var(yvar(t.radius_to_loop[label]))
    return m


def crossing_monomial(t: CombinatorialTriangulation, lg: LoopGraph) -> Monomial:
    out = Monomial()
    for tile in lg.snake.tiles:
        out = out * x_weight(t, tile.diagonal)
    return out


def matching_x(t: CombinatorialTriangulation, lg: LoopGraph, gm: GoodMatching) -> Monomial:
    out = Monomial()
    for eid in gm.edges:
        out = out * x_weight(t, lg.label(eid))
    return out


def matching_y(t: CombinatorialTriangulation, lg: LoopGraph, gm: GoodMatching) -> Monomial:
    out = Monomial()
    for j in gm.height:
        out = out * y_weight(t, lg.snake.tile(j).diagonal)
    return out


@dataclass(frozen=True)
class ExpansionTerm:
    matching: GoodMatching
    x: Monomial
    y: Monomial


@dataclass(frozen=True)
class Expansion:
    """Everything computed for one tagged arc."""

    loop_graph: LoopGraph
    terms: tuple[ExpansionTerm, ...]
    cross: Monomial
    polynomial: LaurentPolynomial
    relabel: dict

    @property
    def numerator(self) -> LaurentPolynomial:
        return self.polynomial * LaurentPolynomial.from_monomial(self.cross)

    def __len__(self) -> int:
        return len(self.terms)


def normalize_tags(
    t: CombinatorialTriangulation, arc: TaggedArc
) -> tuple[CombinatorialTriangulation, TaggedArc, dict[str, str]]:
    """Swap tags so that the arc is never notched inside a self-folded triangle.

    At such a puncture ``p`` the seed position of the loop holds the radius
    notched at ``p``.  Reversing every tag at ``p`` maps the tagged
    triangulation to itself with the radius and loop positions exchanged, and
    maps the arc to one that is plain at ``p``.  The returned triangulation
    carries the exchanged labels, so an expansion computed on it is already
    written in the original seed's variables.  The label map is returned for
    reporting only.
    """
    steps = arc_path(t, arc)
    ends = (t.vertex_of(start_corner(steps)), t.vertex_of(end_corner(steps)))
    swap: dict[str, str] = {}
    eps = list(arc.endpoints)
    for i, v in enumerate(ends):
        if eps[i].tag != NOTCHED or v not in t.self_folded_punctures:
            continue
        for sf in t.self_folded:
            if t.self_folded_puncture_vertex(sf.radius) == v:
                swap[sf.radius], swap[sf.loop] = sf.loop, sf.radius
        eps[i] = Endpoint(eps[i].point, PLAIN)
    if not swap:
        return t, arc, {}
    # the radius and the loop swap names; triangles keep their geometry
    t2 = t.with_labels(swap)
    t2 = CombinatorialTriangulation(
        arcs=t.arcs, boundary=t.boundary, triangles=t2.triangles,
        self_folded=t2.self_folded, punctures=t.punctures, marked_points=t.marked_points,
    )
    arc2 = replace(arc, endpoints=tuple(eps), crossings=tuple(swap.get(c, c) for c in arc.crossings))
    return t2, arc2, swap


def expand(
    t: CombinatorialTriangulation,
    arc: TaggedArc,
    directions: tuple[str, str] = (CW, CW),
    normalize: bool = True,
) -> Expansion:
    """Laurent expansion of the cluster variable of ``arc`` in the seed of ``t``.

    Parameters
    ----------
    t : CombinatorialTriangulation
        Ideal triangulation; its tagged version gives the initial seed.
    arc : TaggedArc
        Tagged arc whose plain version is not an arc of ``t``.
    directions : pair of {"cw", "ccw"}
        Hook directions at the start and end.
    normalize : bool
        Apply the tag symmetry when ``arc`` is notched at a puncture inside a
        self-folded triangle.

    Returns
    -------
    Expansion
    """
    require_valid(t)
    relabel: dict[str, str] = {}
    if normalize:
        t, arc, relabel = normalize_tags(t, arc)
    lg = loop_graph(t, arc, directions)
    terms = []
    poly_terms: dict[Monomial, int] = {}
    for gm in lg.good_matchings:
        xm, ym = matching_x(t, lg, gm), matching_y(t, lg, gm)
        terms.append(ExpansionTerm(gm, xm, ym))
        key = xm * ym
        poly_terms[key] = poly_terms.get(key, 0) + 1
    cross = crossing_monomial(t, lg)
    num = LaurentPolynomial(poly_terms)
    poly = num / LaurentPolynomial.from_monomial(cross)
    # after a swap the labels of ``t`` already name seed positions: position
    # ``radius`` now holds the notched radius, so no renaming back is needed
    return Expansion(lg, tuple(terms), cross, poly, relabel)


normalize_by_tag_symmetry = normalize_tags


def enclosing_loop(t: CombinatorialTriangulation, label: str, puncture: str) -> TaggedArc:
    """Plain loop that cuts off a monogon containing the arc ``label`` and ``puncture``.

    ``label`` must be an arc of ``t`` with one end at the puncture.  The loop
    starts and ends at the other end of ``label`` and crosses every other
    arc at the puncture once.

    Raises
    ------
    UnsupportedInputError
        If ``label`` is part of a self-folded triangle, is a loop at the
        puncture, or does not end at the puncture.
    """
    if label not in t.arcs:
        raise SurfaceError(f"{label!r} is not an arc of the triangulation")
    if label in t.radius_to_loop or label in t.loop_to_radius:
        raise UnsupportedInputError(f"arc {label!r} belongs to a self-folded triangle")
    names = t.vertex_names
    (a, i), (b, j) = t.slots[label]
    ends = {t.vertex_of(Corner(a, i)), t.vertex_of(Corner(a, (i - 1) % 3))}
    p = next((v for v in ends if names.get(v) == puncture), None)
    if p is None:
        raise SurfaceError(f"arc {label!r} does not end at {puncture!r}")
    if len(ends) == 1:
        raise UnsupportedInputError(f"arc {label!r} is a loop at {puncture!r}")
    corner = Corner(a, i) if t.vertex_of(Corner(a, i)) == p else Corner(a, (i - 1) % 3)
    home = {(a, i), (b, j)}
    for turn in (t.rotate_cw, t.rotate_ccw):
        first = turn(corner)
        if first is not None and tuple(first[0]) not in home:
            break
    steps: list[Step] = []
    tri, entry = a, None
    while True:
        slot, corner = turn(corner)
        if tuple(slot) in home:
            break
        steps.append(Step(tri, entry, slot.pos))
        other = t.partner(slot)
        tri, entry = other.triangle, other.pos
    steps.append(Step(tri, entry, None))
    v = t.vertex_of(start_corner(steps))
    end = Endpoint(names.get(v, f"v{v}"), PLAIN)
    return arc_from_path(t, steps, (end, end), f"loop around {label}")


def expand_when_plain_in_T(t: CombinatorialTriangulation, label: str, puncture: str) -> LaurentPolynomial:
    """Expansion of the arc ``label`` notched at ``puncture``.

    The plain version lies in the triangulation, so the loop graph formula
    does not apply directly.  Instead the enclosing loop is expanded and
    divided by the variable of ``label``; the two are related by
    ``x(loop) = x(notched arc) * x(label)``.
    """
    require_valid(t)
    loop = enclosing_loop(t, label, puncture)
    whole = expand(t, loop).polynomial
    return exact_divide(whole, LaurentPolynomial.var(xvar(label)))


def _variable_map(mapping: dict[str, str]) -> dict[str, str]:
    names = {}
    for a, b in mapping.items():
        names[xvar(a)] = xvar(b)
        names[yvar(a)] = yvar(b)
    return names


def rename_monomial(m: Monomial, mapping: dict[str, str]) -> Monomial:
    names = _variable_map(mapping)
    return Monomial({names.get(v, v): e for v, e in m.items})


def rename_variables(p: LaurentPolynomial, mapping: dict[str, str]) -> LaurentPolynomial:
    """Rename ``x``/``y`` variables after a label swap."""
    out: dict[Monomial, int] = {}
    for m, c in p.terms.items():
        new = rename_monomial(m, mapping)
        out[new] = out.get(new, 0) + c
    return LaurentPolynomial(out)


def format_expansion(exp: Expansion) -> str:
    """Numerator terms in sorted order over the crossing monomial."""
    return f"({exp.numerator}) / ({exp.cross})"


def numerator_terms(exp: Expansion) -> list[tuple[Monomial, Monomial]]:
    return [(term.x, term.y) for term in exp.terms]


def specialize_boundary(p: LaurentPolynomial, t: CombinatorialTriangulation) -> LaurentPolynomial:
    from .laurent import specialize

    return specialize(p, {xvar(b): 1 for b in t.boundary})


def arc_variables(t: CombinatorialTriangulation, labels: Iterable[str]) -> list[str]:
    return [xvar(lab) for lab in labels]
