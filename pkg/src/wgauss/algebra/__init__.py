"""Exact field, polynomial, power-series, and linear-algebra kernel."""

from .fields import (
    QQ,
    ExtElement,
    ExtField,
    FieldError,
    FpElement,
    PrimeField,
    Rationals,
    coerce,
    common_field,
    field_from_json,
)
from .linalg import MatrixExact, plucker, rank_kernel_rref
from .poly import (
    ExtensionCapError,
    Poly,
    discriminant,
    factor_finite,
    is_irreducible,
    poly_gcd,
    poly_xgcd,
    powmod,
    resultant,
    roots_in_field,
    roots_in_splitting_extension,
)
from .series import (
    SingularSeedError,
    TruncatedSeries,
    series_solve,
    series_solve_system2,
)

__all__ = [
    "QQ", "ExtElement", "ExtField", "FieldError", "FpElement", "PrimeField",
    "Rationals", "coerce", "common_field", "field_from_json",
    "MatrixExact", "plucker", "rank_kernel_rref",
    "ExtensionCapError", "Poly", "discriminant", "factor_finite",
    "is_irreducible", "poly_gcd", "poly_xgcd", "powmod", "resultant",
    "roots_in_field", "roots_in_splitting_extension",
    "SingularSeedError", "TruncatedSeries", "series_solve",
    "series_solve_system2",
]
