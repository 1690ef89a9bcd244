"""Exact Gaussian-rational algebra and extended-precision numerics."""

from .numeric import DEFAULT_PRECISION, bigcomplex, context, default_precision, precision_of, to_context
from .polynomial import (
    NEG_INF,
    Polynomial,
    Z,
    poly_derivative,
    poly_gcd,
    poly_lcm,
    square_free_decomposition,
    vanishing_order,
)
from .rational import RationalFunction
from .residues import PoleOrderError, laurent_head, pole_order, residue, residue_at_infinity
from .roots import RootFindingError, poly_roots
from .scalars import I, ExactComplex, as_exact
from .linalg import exact_rank

__all__ = [
    "DEFAULT_PRECISION",
    "ExactComplex",
    "I",
    "NEG_INF",
    "PoleOrderError",
    "Polynomial",
    "RationalFunction",
    "RootFindingError",
    "Z",
    "as_exact",
    "bigcomplex",
    "context",
    "default_precision",
    "exact_rank",
    "laurent_head",
    "poly_derivative",
    "poly_gcd",
    "poly_lcm",
    "poly_roots",
    "pole_order",
    "precision_of",
    "residue",
    "residue_at_infinity",
    "square_free_decomposition",
    "to_context",
    "vanishing_order",
]
