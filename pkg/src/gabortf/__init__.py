"""Discrete Gabor analysis and synthesis on finite circular lattices."""
from .core import (
    Lattice,
    analysis_matrix_rank,
    dgt,
    gabor_atom,
    idgt,
    make_lattice,
    uncertainty_product,
    wexler_raz_residual,
)
from .kernels import BACKEND

__version__ = "0.1.0"
