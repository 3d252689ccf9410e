"""Semicircle-law experiments for symmetric matrices with stationary diagonals."""

from ergodic_wigner.diag_process import (
    DiagonalPath,
    ProcessSpec,
    empirical_covariance,
    sample_diagonal,
    theoretical_covariance,
)
from ergodic_wigner.ensemble import EnsembleConfig, Matrix, build_matrix, entry_seed
from ergodic_wigner.spectra import (
    ESD,
    eigenvalues,
    esd_moment,
    ks_distance,
    moment_distance,
    semicircle_cdf,
    semicircle_density,
    semicircle_moment,
)

__all__ = [
    "DiagonalPath",
    "ESD",
    "EnsembleConfig",
    "Matrix",
    "ProcessSpec",
    "build_matrix",
    "eigenvalues",
    "empirical_covariance",
    "entry_seed",
    "esd_moment",
    "ks_distance",
    "moment_distance",
    "sample_diagonal",
    "semicircle_cdf",
    "semicircle_density",
    "semicircle_moment",
    "theoretical_covariance",
]
