"""Eigenmodes of circular membranes with smooth, possibly eccentric, central loading."""

from .density import LoadingParams, assemble_mass, density_at
from .eigensolver import (
    Mode,
    SpectrumReport,
    build_operators,
    detect_degenerate_pairs,
    normalize_spectrum,
    solve_eigenvalues,
    solve_modes,
    solve_spectrum,
)
from .errors import InvalidParameterError, SolverError
from .harmonicity import (
    QualityMap,
    cents_deviation,
    optimize_xi,
    quality,
    scan_eccentricity,
    scan_sigma,
    scan_sigma_k,
)
from .modes import classify_mode, export_mode_grid, label_by_continuation, label_modes
from .oracle import bessel_j, bessel_zero, uniform_reference
from .spectral_disk import (
    DiscreteOperators,
    DiskGrid,
    assemble_laplacian,
    build_grid,
    chebyshev_diff_matrix,
    fourier_diff2_matrix,
)

__version__ = "0.1.0"
