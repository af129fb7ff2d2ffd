"""Exact GF(3) polynomial algebra and optimality checks for ternary cyclic codes."""

__version__ = "0.1.0"

from .poly import (
    FactorMultiset,
    ModGF3,
    PolyF3,
    binomial_power,
    count_roots_in_extension,
    factor,
    frobenius_power,
    gcd,
    is_irreducible,
    parse_poly,
    pow_mod,
    squarefree_decompose,
)

__all__ = [
    "__version__",
    "PolyF3",
    "FactorMultiset",
    "ModGF3",
    "gcd",
    "binomial_power",
    "pow_mod",
    "frobenius_power",
    "is_irreducible",
    "count_roots_in_extension",
    "squarefree_decompose",
    "factor",
    "parse_poly",
]
