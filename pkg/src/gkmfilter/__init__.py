"""Generalized gapped k-mer filter over heterogeneous alphabets."""

from .filter import estimate_counts, h_entry, h_matrix, w_entry, w_matrix
from .incidence import build_A, build_A_upto
from .spectral import build_spectral_system, reduced_svd, spectral_pinv
from .words import GAP, AlphabetSpec

__version__ = "0.1.0"

__all__ = [
    "GAP",
    "AlphabetSpec",
    "build_A",
    "build_A_upto",
    "build_spectral_system",
    "estimate_counts",
    "h_entry",
    "h_matrix",
    "reduced_svd",
    "spectral_pinv",
    "w_entry",
    "w_matrix",
]
