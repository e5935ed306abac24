"""Betti-number checks for real moment-angle complexes, their small-cover
quotients and graph associahedra, in exact arithmetic."""

from .cubical import GCWComplex, QuotientComplex, build_quotient, build_rzk, quotient_betti, rzk_betti
from .decomposition import EXPECTED_FAIL, FAIL, PASS, bbcg_check, rhs_betti, subcomplex_sum, verify_main
from .dga import CaiAlgebra, DgaElement, Monomial, dga_betti, invariant_betti, phi, reynolds
from .errors import (
    CapacityError,
    CoefficientError,
    ComplexIntegrityError,
    DomainError,
    InputError,
    ToricSplitError,
)
from .graphs import SimpleGraph, a_numbers, build_tubing_complex, compare_graphs, lambda_g, tubes, verify_graph_corollary
from .lambdamap import LambdaMap, kernel_elements, row_space
from .linalg import QQ, Field, GradedChainComplex, SparseMatrix, betti_numbers, nullspace, rank
from .simplicial import SimplicialComplex, enumerate_complexes, random_complex

__version__ = "0.1.0"
