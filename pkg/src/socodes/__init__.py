"""Exact counts of binary self-orthogonal codes up to coordinate permutation."""

from .census import CensusResult, phi, psi, psi_le, psi_table
from .glclasses import enumerate_classes
from .oracle import psi_le_bruteforce, psi_le_columns

__all__ = [
    "CensusResult",
    "enumerate_classes",
    "phi",
    "psi",
    "psi_le",
    "psi_le_bruteforce",
    "psi_le_columns",
    "psi_table",
]
__version__ = "0.1.0"
