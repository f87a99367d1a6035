"""Banded Toeplitz matrices through skew Schur polynomials.

Minors, determinants, adjugate and inverse entries, and eigenvectors of
``T_n(a)`` evaluated in closed form, over exact rationals or overflow-safe
complex floats.
"""

from .errors import InputError, MathError, SchurToeplitzError
from .partitions import IndexSet, Partition, SkewPartition, flip, minor_shapes, skew_pieri
from .scalars import XFloat, format_scalar, parse_scalar
from .schur import schur, schur_bialternant, skew_schur, skew_schur_dual
from .symcore import ElemSeq, HomSeq, RootList
from .toeplitz import (
    EigenRequest,
    LaurentSpec,
    MinorRequest,
    adj_first_column,
    adjugate_entry,
    determinant,
    eigenvector,
    find_roots,
    geometric_form,
    inverse_entry,
    minor,
    skew_schur_as_minor,
    toeplitz_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "SchurToeplitzError",
    "InputError",
    "MathError",
    "Partition",
    "SkewPartition",
    "IndexSet",
    "flip",
    "minor_shapes",
    "skew_pieri",
    "XFloat",
    "parse_scalar",
    "format_scalar",
    "ElemSeq",
    "HomSeq",
    "RootList",
    "schur",
    "skew_schur",
    "skew_schur_dual",
    "schur_bialternant",
    "LaurentSpec",
    "MinorRequest",
    "EigenRequest",
    "toeplitz_matrix",
    "minor",
    "determinant",
    "adjugate_entry",
    "inverse_entry",
    "adj_first_column",
    "eigenvector",
    "geometric_form",
    "skew_schur_as_minor",
    "find_roots",
]
