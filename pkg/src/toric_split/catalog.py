"""Small named inputs used by the demos and tests."""

from .graphs import SimpleGraph
from .lambdamap import LambdaMap
from .simplicial import SimplicialComplex


def triangle_boundary() -> SimplicialComplex:
    return SimplicialComplex.from_facets(3, [[1, 2], [2, 3], [1, 3]])


def two_points() -> SimplicialComplex:
    return SimplicialComplex.from_facets(2, [[1], [2]])


def rp2_lambda() -> LambdaMap:
    """Over the triangle boundary this lambda gives the real projective plane."""
    return LambdaMap.from_matrix([[1, 0, 1], [0, 1, 1]])


def path4() -> SimpleGraph:
    return SimpleGraph.path(4)


def claw() -> SimpleGraph:
    return SimpleGraph.star(3)
