from .bivariate import BivariatePoly, bivariate_y_roots, bivariate_y_roots_exhaustive
from .field import GF, Field, FieldElement, FieldMismatchError, field_arith, is_prime
from .linalg import nullspace, rref, solve, solve_linear_system
from .multivariate import MultiPoly, monomials
from .poly import UniPoly, poly_eval, poly_interpolate

__all__ = [
    "GF",
    "BivariatePoly",
    "Field",
    "FieldElement",
    "FieldMismatchError",
    "MultiPoly",
    "UniPoly",
    "bivariate_y_roots",
    "bivariate_y_roots_exhaustive",
    "field_arith",
    "is_prime",
    "monomials",
    "nullspace",
    "poly_eval",
    "poly_interpolate",
    "rref",
    "solve",
    "solve_linear_system",
]
