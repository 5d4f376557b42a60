"""Solvable planar dynamical systems via polynomial zero dynamics."""

from .config import DEFAULT_CONFIG, ToleranceConfig
from .polynomials import (
    CoefficientSet,
    MultiRootPolynomial,
    SelectedPair,
    coeffs_from_zeros,
    quartic_pair_coeffs,
    track_roots,
    zeros_from_coeffs,
)

__all__ = [
    "DEFAULT_CONFIG",
    "ToleranceConfig",
    "CoefficientSet",
    "MultiRootPolynomial",
    "SelectedPair",
    "coeffs_from_zeros",
    "quartic_pair_coeffs",
    "track_roots",
    "zeros_from_coeffs",
]

__version__ = "0.1.0"
