"""Exact computation of wall exponents for rank-2 cluster scattering diagrams."""

from .errors import CSDError
from .lattice import LatticeVector, Matrix2, compare, normalization_factor, p_star, similarity, skew_form
from .ordering import ExponentTable, Factor, advance_degree, compute_table, order_product_mod, seed_table
from .pbc import PBC, basis, binom_of, substitute

__version__ = "0.1.0"

__all__ = [
    "CSDError",
    "ExponentTable",
    "Factor",
    "LatticeVector",
    "Matrix2",
    "PBC",
    "advance_degree",
    "basis",
    "binom_of",
    "compare",
    "compute_table",
    "normalization_factor",
    "order_product_mod",
    "p_star",
    "seed_table",
    "similarity",
    "skew_form",
    "substitute",
]
