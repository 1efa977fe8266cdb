"""Expansion formulae for cluster variables of tagged arcs via loop graphs."""
from .expansion import Expansion, expand
from .laurent import LaurentPolynomial, Monomial, exact_divide, parse
from .loopgraph import GoodMatching, LoopGraph, NotGoodMatchingError, loop_graph
from .mswcheck import msw_expand, verify
from .mutation import seed_from_triangulation, variable_by_flips
from .poset import check_lattice, lattice
from .snakegraph import SnakeGraph, perfect_matchings
from .surface import (
    NOTCHED,
    PLAIN,
    CombinatorialTriangulation,
    Endpoint,
    SelfFolded,
    SurfaceError,
    TaggedArc,
    UnsupportedInputError,
    adjacency_matrix,
    validate_triangulation,
)

__version__ = "0.1.0"
