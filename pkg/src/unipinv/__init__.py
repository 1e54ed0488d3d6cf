"""Exact invariant rings of the unipotent shifts x -> J x - e1 and x -> J x."""
from ._backend import BACKEND
from .automorphism import (UnipotentAffineMap, apply, compose, delta, identity_map, inverse,
                           is_invariant, make_affine_jordan, make_graded_jordan, power, shift_map)
from .errors import DomainError, PolynomialSyntaxError
from .invariants import (CoefficientTable, GeneratorSet, RecurrenceSpec, affine_generators,
                         coeff_table, graded_generator, mu_count, multsum, recurrence_check,
                         special_generators, u_generator, v_generator, w_generator, y_generator)
from .poly import NEG_INF, LaurentPolynomial, Polynomial, jacobian_independent, parse
from .rewrite import (GradedBasisDescriptor, RewriteResult, check_localization, check_u_in_y,
                      dehomogenize, graded_basis, rehomogenize, rewrite_affine, rewrite_graded,
                      verify_relation)
from .sigma_exp import (NilpotentSeries, check_vanishing_sums, eta_vector, exp_series, lambda_inverse,
                        lambda_matrix, phi)
from .solver import InvariantBasis, LinearSystem, dimension_table, solve_filtered, solve_graded
from .verify import verify_all

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "NEG_INF", "CoefficientTable", "DomainError", "GeneratorSet", "GradedBasisDescriptor",
    "InvariantBasis", "LaurentPolynomial", "LinearSystem", "NilpotentSeries", "Polynomial",
    "PolynomialSyntaxError", "RecurrenceSpec", "RewriteResult", "UnipotentAffineMap",
    "affine_generators", "apply", "check_localization", "check_u_in_y", "check_vanishing_sums",
    "coeff_table", "compose", "dehomogenize", "delta", "dimension_table", "eta_vector", "exp_series",
    "graded_basis", "graded_generator", "identity_map", "inverse", "is_invariant",
    "jacobian_independent", "lambda_inverse", "lambda_matrix", "make_affine_jordan",
    "make_graded_jordan", "mu_count", "multsum", "parse", "phi", "power", "recurrence_check",
    "rehomogenize", "rewrite_affine", "rewrite_graded", "shift_map", "solve_filtered",
    "solve_graded", "special_generators", "u_generator", "v_generator", "verify_all",
    "verify_relation", "w_generator", "y_generator",
]
