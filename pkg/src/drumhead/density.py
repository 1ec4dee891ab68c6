"""Smooth loading profile of the drum head and the diagonal mass matrix."""

from dataclasses import dataclass, asdict

import numpy as np

from .errors import InvalidParameterError
from .spectral_disk import DiskGrid


@dataclass(frozen=True)
class LoadingParams:
    """Model parameters of the loaded membrane.

    sigma   : density contrast; the patch centre tends to sigma**2 times the rim density
    k       : radius of the loaded patch
    xi      : width of the density transition
    epsilon : offset of the patch centre along theta = 0
    """

    sigma: float
    k: float
    xi: float
    epsilon: float = 0.0

    def __post_init__(self):
        if not np.isfinite([self.sigma, self.k, self.xi, self.epsilon]).all():
            raise InvalidParameterError("loading parameters must be finite")
        if self.sigma < 1:
            raise InvalidParameterError(f"sigma must be >= 1, got {self.sigma}")
        if not 0 < self.k < 1:
            raise InvalidParameterError(f"k must lie in (0, 1), got {self.k}")
        if self.xi <= 0:
            raise InvalidParameterError(f"xi must be > 0, got {self.xi}")
        if self.epsilon < 0:
            raise InvalidParameterError(f"epsilon must be >= 0, got {self.epsilon}")
        if self.epsilon + self.k >= 1:
            raise InvalidParameterError(
                f"patch leaves the membrane: epsilon + k = {self.epsilon + self.k} >= 1"
            )

    def as_dict(self) -> dict:
        return {key: float(v) for key, v in asdict(self).items()}


def patch_distance(params: LoadingParams, r, theta):
    """Distance from (r, theta) to the centre of the loaded patch."""
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if params.epsilon == 0:
        # exact axisymmetry; hypot(r cos, r sin) differs from r in the last bit
        return np.abs(r) + np.zeros_like(theta)
    return np.hypot(r * np.cos(theta) - params.epsilon, r * np.sin(theta))


def density_at(params: LoadingParams, r, theta):
    """Areal density in units of the rim density. Broadcasts over arrays."""
    dist = patch_distance(params, r, theta)
    contrast = (params.sigma**2 - 1.0) / 2.0
    return 1.0 + contrast * (1.0 - np.tanh((dist - params.k) / params.xi))


def assemble_mass(params: LoadingParams, grid: DiskGrid) -> np.ndarray:
    """Diagonal of B, one entry per unknown in grid order."""
    r, t = grid.mesh()
    return density_at(params, r, t).ravel()
