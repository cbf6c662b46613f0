"""Symmetry-adapted spectra of non-Hermitian Hamiltonians H0 + i*g*H'."""

__version__ = "0.1.0"

from .poly import PolynomialOperator, parse_polynomial
from .groups import (
    SymmetryOp,
    CharacterTable,
    BranchingMap,
    builtin_table,
    builtin_names,
    transform_polynomial,
    classify_polynomial,
    decompose_product,
    first_order_selection_rule,
    branch,
    format_character_table,
)

__all__ = [
    "PolynomialOperator",
    "parse_polynomial",
    "SymmetryOp",
    "CharacterTable",
    "BranchingMap",
    "builtin_table",
    "builtin_names",
    "transform_polynomial",
    "classify_polynomial",
    "decompose_product",
    "first_order_selection_rule",
    "branch",
    "format_character_table",
]
