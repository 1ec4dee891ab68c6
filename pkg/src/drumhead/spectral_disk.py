"""
Fourier-Chebyshev collocation on the unit disk.

The radial coordinate is discretised on Chebyshev points over [-1, 1] and the
negative half is folded onto the positive half through the identification
(-r, theta) == (r, theta + pi). With an odd radial degree no node sits at the
origin, and with an even number of angles the rotation by pi is a permutation
of the angular grid. The Dirichlet condition at r = 1 is imposed by dropping
the boundary node.

Unknowns are ordered radial-outer / angular-inner:
    index = j * n_theta + i,  j = 0..M-1 (radius r_{j+1}),  i = 0..n_theta-1
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError


@dataclass(frozen=True)
class DiskGrid:
    n_r: int
    n_theta: int
    radii: np.ndarray
    angles: np.ndarray

    @property
    def n_radii(self) -> int:
        return len(self.radii)

    @property
    def size(self) -> int:
        return self.n_radii * self.n_theta

    def mesh(self):
        """Return (r, theta) arrays of shape (M, n_theta) in unknown order."""
        return np.meshgrid(self.radii, self.angles, indexing="ij")


@dataclass(frozen=True)
class DiscreteOperators:
    """Discrete Laplacian and the diagonal of the density (mass) matrix.

    ``mass`` holds only the diagonal entries B_jj; the full matrix is
    ``np.diag(mass)``.
    """

    grid: DiskGrid
    laplacian: np.ndarray
    mass: np.ndarray


def build_grid(n_r: int, n_theta: int) -> DiskGrid:
    if int(n_r) != n_r or n_r < 3 or n_r % 2 != 1:
        raise InvalidParameterError(f"n_r must be an odd integer >= 3, got {n_r}")
    if int(n_theta) != n_theta or n_theta < 4 or n_theta % 2 != 0:
        raise InvalidParameterError(
            f"n_theta must be an even integer >= 4, got {n_theta}"
        )
    n_r, n_theta = int(n_r), int(n_theta)
    m = (n_r - 1) // 2
    radii = np.cos(np.pi * np.arange(1, m + 1) / n_r)
    angles = 2 * np.pi * np.arange(n_theta) / n_theta
    return DiskGrid(n_r, n_theta, radii, angles)


def chebyshev_diff_matrix(n: int) -> np.ndarray:
    """First-derivative collocation matrix on x_j = cos(j*pi/n), j = 0..n.

    Off-diagonal entries follow the closed form; the diagonal is set so that
    every row sums to zero, which is more accurate in floating point than
    the analytic diagonal.
    """
    if int(n) != n or n < 1:
        raise InvalidParameterError(f"n must be an integer >= 1, got {n}")
    n = int(n)
    j = np.arange(n + 1)
    x = np.cos(np.pi * j / n)
    c = np.ones(n + 1)
    c[0] = c[-1] = 2.0
    c *= (-1.0) ** j
    dx = x[:, None] - x[None, :]
    d = np.outer(c, 1.0 / c) / (dx + np.eye(n + 1))
    np.fill_diagonal(d, 0.0)
    np.fill_diagonal(d, -d.sum(axis=1))
    return d


def chebyshev_nodes(n: int) -> np.ndarray:
    return np.cos(np.pi * np.arange(n + 1) / n)


def fourier_diff2_matrix(n: int) -> np.ndarray:
    """Periodic second-derivative matrix on n equispaced points of [0, 2*pi)."""
    if int(n) != n or n < 4 or n % 2 != 0:
        raise InvalidParameterError(f"n must be an even integer >= 4, got {n}")
    n = int(n)
    h = 2 * np.pi / n
    k = np.arange(1, n)
    col = np.empty(n)
    col[0] = -np.pi**2 / (3 * h**2) - 1.0 / 6.0
    # sin(k h/2) == sin((n-k) h/2); folding k keeps the matrix exactly symmetric
    col[1:] = -0.5 * (-1.0) ** k / np.sin(np.minimum(k, n - k) * h / 2) ** 2
    offsets = np.subtract.outer(np.arange(n), np.arange(n)) % n
    return col[offsets]


def assemble_laplacian(grid: DiskGrid) -> np.ndarray:
    n_r, n_theta, m = grid.n_r, grid.n_theta, grid.n_radii
    d = chebyshev_diff_matrix(n_r)
    dd = d @ d

    rows = np.arange(1, m + 1)
    # columns of the reflected nodes x_{n_r - j} = -r_j, in the order j = 1..M
    mirrored = n_r - rows
    d1 = dd[np.ix_(rows, rows)]
    d2 = dd[np.ix_(rows, mirrored)]
    e1 = d[np.ix_(rows, rows)]
    e2 = d[np.ix_(rows, mirrored)]

    inv_r = np.diag(1.0 / grid.radii)
    half = n_theta // 2
    eye, zero = np.eye(half), np.zeros((half, half))
    ident_same = np.block([[eye, zero], [zero, eye]])
    ident_shift = np.block([[zero, eye], [eye, zero]])

    return (
        np.kron(d1 + inv_r @ e1, ident_same)
        + np.kron(d2 + inv_r @ e2, ident_shift)
        + np.kron(inv_r @ inv_r, fourier_diff2_matrix(n_theta))
    )


def sample(grid: DiskGrid, func) -> np.ndarray:
    """Evaluate ``func(r, theta)`` on the grid, flattened in unknown order."""
    r, t = grid.mesh()
    return np.asarray(func(r, t), dtype=float).ravel()
