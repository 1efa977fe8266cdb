"""Quivers of snake and loop graphs, their order ideals, and the lattice of
good matchings.

An arrow ``a -> b`` means ``a <= b``.  Order ideals are downward closed, and
the height of a good matching (its set of positive tiles) is an order ideal of
the loop quiver.  Positive twists then realise exactly the covering relations
of the ideal lattice.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable

from .loopgraph import GoodMatching, LoopGraph
from .snakegraph import RIGHT, TOP, SnakeGraph


class PosetError(ValueError):
    pass


class CyclicQuiverError(PosetError):
    """The quiver has an oriented cycle, so it defines no partial order."""


class NotAnIdealError(PosetError):
    pass


@dataclass(frozen=True)
class HasseQuiver:
    """Vertices ``1..d`` with arrows read as ``a <= b``."""

    d: int
    arrows: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "arrows", frozenset(self.arrows))
        for a, b in self.arrows:
            if not (1 <= a <= self.d and 1 <= b <= self.d) or a == b:
                raise PosetError(f"bad arrow {a}->{b}")
        self.topological_order  # raises on cycles

    @property
    def vertices(self) -> range:
        return range(1, self.d + 1)

    @cached_property
    def successors(self) -> dict[int, frozenset[int]]:
        out: dict[int, set[int]] = {v: set() for v in self.vertices}
        for a, b in self.arrows:
            out[a].add(b)
        return {v: frozenset(s) for v, s in out.items()}

    @cached_property
    def predecessors(self) -> dict[int, frozenset[int]]:
        out: dict[int, set[int]] = {v: set() for v in self.vertices}
        for a, b in self.arrows:
            out[b].add(a)
        return {v: frozenset(s) for v, s in out.items()}

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        indeg = {v: len(self.predecessors[v]) for v in self.vertices}
        ready = sorted(v for v, k in indeg.items() if k == 0)
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for w in sorted(self.successors[v]):
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
            ready.sort()
        if len(order) != self.d:
            raise CyclicQuiverError("quiver contains an oriented cycle")
        return tuple(order)

    @cached_property
    def below(self) -> dict[int, frozenset[int]]:
        """``below[v]`` is the set of ``u`` with ``u < v``."""
        out: dict[int, frozenset[int]] = {}
        for v in self.topological_order:
            acc: set[int] = set()
            for u in self.predecessors[v]:
                acc |= {u} | out[u]
            out[v] = frozenset(acc)
        return out

    def leq(self, a: int, b: int) -> bool:
        return a == b or a in self.below[b]

    def transitive_reduction(self) -> "HasseQuiver":
        keep = set()
        for a, b in self.arrows:
            if not any(a in self.below[c] or a == c for c in self.predecessors[b] if c != a):
                keep.add((a, b))
        return HasseQuiver(self.d, frozenset(keep))

    def is_hasse(self) -> bool:
        return self.transitive_reduction().arrows == self.arrows

    def is_ideal(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        if not s <= set(self.vertices):
            return False
        return all(self.below[v] <= s for v in s)


# ----------------------------------------------------------------------
# quivers

def _pair_arrow(i: int, glue: str) -> tuple[int, int]:
    """Arrow between tiles ``i`` and ``i+1`` given how ``i+1`` is attached."""
    if (i % 2 == 1 and glue == RIGHT) or (i % 2 == 0 and glue == TOP):
        return (i, i + 1)
    return (i + 1, i)


def quiver_of_snake(g: SnakeGraph) -> HasseQuiver:
    """One arrow per consecutive pair of tiles, oriented by parity and direction."""
    arrows = {_pair_arrow(i, g.glue[i - 1]) for i in range(1, len(g))}
    return HasseQuiver(len(g), frozenset(arrows))


def quiver_of_loop(lg: LoopGraph) -> HasseQuiver:
    """The snake quiver plus one arrow for each loop.

    A loop at the first tile glued to tile ``k`` contributes ``1 -> k`` when
    the cut is the south edge of an odd ``k`` or the west edge of an even
    ``k``, and ``k -> 1`` otherwise.  A loop at the last tile ``d`` contributes
    ``d -> k`` for the north edge of an odd ``k`` or the east edge of an even
    ``k``, and ``k -> d`` otherwise.

    Raises
    ------
    CyclicQuiverError
        If the arrows contain an oriented cycle (not a surface loop graph).
    """
    g = lg.snake
    d = len(g)
    arrows = {_pair_arrow(i, g.glue[i - 1]) for i in range(1, d)}
    for cut in lg.cuts:
        k = cut.k
        if cut.end == "start":
            side = "S" if k % 2 == 1 else "W"
            arrows.add((1, k) if g.edge(k, side) == cut.c_prime else (k, 1))
        else:
            side = "N" if k % 2 == 1 else "E"
            arrows.add((d, k) if g.edge(k, side) == cut.c_prime else (k, d))
    return HasseQuiver(d, frozenset(arrows))


# ----------------------------------------------------------------------
# order ideals

def order_ideals(q: HasseQuiver) -> list[frozenset[int]]:
    """All order ideals, sorted by size then lexicographically.

    Walks a linear extension and decides membership element by element; an
    element may join only when everything below it already has.
    """
    order = q.topological_order
    out: list[frozenset[int]] = []

    def rec(i: int, chosen: frozenset[int]) -> None:
        if i == len(order):
            out.append(chosen)
            return
        v = order[i]
        rec(i + 1, chosen)
        if q.predecessors[v] <= chosen:
            rec(i + 1, chosen | {v})

    rec(0, frozenset())
    out.sort(key=lambda s: (len(s), tuple(sorted(s))))
    return out


def order_ideals_bruteforce(q: HasseQuiver) -> list[frozenset[int]]:
    """Filter all ``2^d`` subsets; an independent check for small ``d``."""
    if q.d > 20:
        raise PosetError("brute force is limited to d <= 20")
    out = []
    verts = list(q.vertices)
    for r in range(q.d + 1):
        for combo in combinations(verts, r):
            s = frozenset(combo)
            if all((a in s) or (b not in s) for a, b in q.arrows):
                out.append(s)
    out.sort(key=lambda s: (len(s), tuple(sorted(s))))
    return out


def ideal_covers(ideals: Iterable[frozenset[int]]) -> set[tuple[frozenset[int], frozenset[int]]]:
    """Covering pairs ``(I, J)`` of the inclusion order: ``J = I + one element``."""
    pool = set(ideals)
    out = set()
    for i in pool:
        for j in pool:
            if len(j) == len(i) + 1 and i < j:
                out.add((i, j))
    return out


# ----------------------------------------------------------------------
# heights and matchings

def _by_height(lg: LoopGraph) -> dict[frozenset[int], GoodMatching]:
    table: dict[frozenset[int], GoodMatching] = {}
    for gm in lg.good_matchings:
        if gm.height in table:
            raise PosetError(f"two good matchings share the height {sorted(gm.height)}")
        table[gm.height] = gm
    return table


def ideal_from_matching(lg: LoopGraph, gm: GoodMatching) -> frozenset[int]:
    """The height of ``gm``, checked to be an order ideal of the loop quiver."""
    q = quiver_of_loop(lg)
    if not q.is_ideal(gm.height):
        raise NotAnIdealError(f"height {sorted(gm.height)} is not an order ideal")
    return gm.height


def matching_from_ideal(lg: LoopGraph, ideal: Iterable[int]) -> GoodMatching:
    """The unique good matching whose height is ``ideal``."""
    ideal = frozenset(ideal)
    q = quiver_of_loop(lg)
    if not q.is_ideal(ideal):
        raise NotAnIdealError(f"{sorted(ideal)} is not an order ideal")
    table = _by_height(lg)
    if ideal not in table:
        raise PosetError(f"no good matching has height {sorted(ideal)}")
    return table[ideal]


@dataclass(frozen=True)
class Lattice:
    """Good matchings with an arrow for each positive twist."""

    matchings: tuple[GoodMatching, ...]
    arrows: frozenset[tuple[int, int, int]]   # (source index, target index, tile)

    @property
    def sources(self) -> list[int]:
        has_in = {b for _, b, _ in self.arrows}
        return [i for i in range(len(self.matchings)) if i not in has_in]

    @property
    def sinks(self) -> list[int]:
        has_out = {a for a, _, _ in self.arrows}
        return [i for i in range(len(self.matchings)) if i not in has_out]


def lattice(lg: LoopGraph) -> Lattice:
    """Lattice of good matchings under positive twists."""
    ms = lg.good_matchings
    index = {gm.edges: i for i, gm in enumerate(ms)}
    arrows = set()
    for i, gm in enumerate(ms):
        for j in range(1, len(lg) + 1):
            tw = lg.positive_twist(gm, j)
            if tw is not None:
                arrows.add((i, index[tw.edges], j))
    return Lattice(ms, frozenset(arrows))


@dataclass(frozen=True)
class LatticeReport:
    good: int
    ideals: int
    heights_are_ideals: bool
    bijective: bool
    twist_mismatches: tuple[str, ...]
    unique_source: bool
    unique_sink: bool

    @property
    def ok(self) -> bool:
        return (
            self.good == self.ideals and self.heights_are_ideals and self.bijective
            and not self.twist_mismatches and self.unique_source and self.unique_sink
        )


def check_lattice(lg: LoopGraph, bruteforce: bool = True) -> LatticeReport:
    """Compare good matchings with order ideals and twists with covers."""
    q = quiver_of_loop(lg)
    ideals = order_ideals_bruteforce(q) if bruteforce and q.d <= 16 else order_ideals(q)
    goods = lg.good_matchings_bruteforce() if bruteforce else list(lg.good_matchings)
    heights = [gm.height for gm in goods]
    heights_ok = all(q.is_ideal(h) for h in heights)
    bij = len(set(heights)) == len(heights) and set(heights) == set(ideals)

    lat = lattice(lg)
    mismatches = []
    twist_pairs = set()
    for a, b, j in lat.arrows:
        ha, hb = lat.matchings[a].height, lat.matchings[b].height
        if hb != ha | {j} or j in ha:
            mismatches.append(f"twist at tile {j} changes height {sorted(ha)} to {sorted(hb)}")
        twist_pairs.add((ha, hb))
    for pair, n in _twist_multiplicity(lat).items():
        if n != 1:
            mismatches.append(f"{n} twists between heights {sorted(pair[0])} and {sorted(pair[1])}")
    covers = ideal_covers(ideals)
    for i, j in sorted(covers - twist_pairs, key=lambda p: (len(p[0]), sorted(p[0]), sorted(p[1]))):
        mismatches.append(f"cover {sorted(i)} < {sorted(j)} has no twist")
    src = [lat.matchings[i].height for i in lat.sources]
    snk = [lat.matchings[i].height for i in lat.sinks]
    full = frozenset(range(1, len(lg) + 1))
    return LatticeReport(
        good=len(goods), ideals=len(ideals), heights_are_ideals=heights_ok, bijective=bij,
        twist_mismatches=tuple(mismatches),
        unique_source=src == [frozenset()], unique_sink=snk == [full],
    )


def _twist_multiplicity(lat: Lattice) -> dict:
    out: dict = {}
    for a, b, _ in lat.arrows:
        key = (lat.matchings[a].height, lat.matchings[b].height)
        out[key] = out.get(key, 0) + 1
    return out
