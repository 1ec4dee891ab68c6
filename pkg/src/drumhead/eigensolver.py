"""
Generalised eigenproblem L psi = -lambda^2 B psi for the loaded membrane.

B is diagonal, so the pencil is reduced to the standard nonsymmetric problem
(B^-1 L) psi = -lambda^2 psi and handed to a dense LAPACK solver.
"""

from dataclasses import dataclass, field

import numpy as np

from .density import LoadingParams, assemble_mass
from .errors import InvalidParameterError, SolverError
from .spectral_disk import DiscreteOperators, DiskGrid, assemble_laplacian, build_grid

IMAG_TOL = 1e-8
DEGENERACY_TOL = 1e-6
DEFAULT_N_MODES = 25
CONVENTIONS = ("overtone2", "overtone1", "fundamental", "none")


@dataclass
class Mode:
    lam: float
    values: np.ndarray
    rank: int = 0
    label_m: int | None = None
    label_n: int | None = None
    # rank (1-based) of the degenerate partner, if any
    degeneracy_partner: int | None = None
    label_uncertain: bool = False

    @property
    def label(self):
        return (self.label_m, self.label_n)


@dataclass
class SpectrumReport:
    params: LoadingParams
    n_r: int
    n_theta: int
    raw_lambdas: list
    normalized: list
    convention: str
    reference_lambda: float
    labels: list
    partners: list
    cents_deviation: list
    labeling: str = "nodal"
    modes: list = field(default_factory=list, repr=False)


def build_operators(params: LoadingParams, grid: DiskGrid) -> DiscreteOperators:
    return DiscreteOperators(grid, assemble_laplacian(grid), assemble_mass(params, grid))


def _check_request(ops, n_modes):
    size = ops.laplacian.shape[0]
    if int(n_modes) != n_modes or not 1 <= n_modes <= size:
        raise InvalidParameterError(f"n_modes must be in [1, {size}], got {n_modes}")
    if not np.all(ops.mass > 0):
        raise InvalidParameterError("mass matrix must be positive")
    return int(n_modes)


def _retained(mu, n_modes):
    """Pick the n_modes smallest eigenvalues of -B^-1 L and check they are real."""
    if not np.all(np.isfinite(mu)):
        raise SolverError("eigensolver returned non-finite eigenvalues")
    order = np.argsort(mu.real, kind="stable")[:n_modes]
    kept = mu[order]
    residue = np.abs(kept.imag) / np.abs(kept.real)
    worst = int(np.argmax(residue))
    if residue[worst] >= IMAG_TOL:
        raise SolverError(
            f"eigenvalue {worst + 1} is not real: lambda^2 = {kept[worst]!r}, "
            f"relative imaginary residue {residue[worst]:.3e}"
        )
    if np.any(kept.real <= 0):
        raise SolverError(f"non-positive lambda^2 among retained modes: {kept.real.min()!r}")
    return order, np.sqrt(kept.real)


def solve_eigenvalues(ops: DiscreteOperators, n_modes: int = DEFAULT_N_MODES) -> np.ndarray:
    """Ascending lambdas only; cheaper than solve_modes for parameter scans."""
    n_modes = _check_request(ops, n_modes)
    a = -ops.laplacian / ops.mass[:, None]
    try:
        mu = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"dense eigensolver failed: {exc}") from exc
    return _retained(mu, n_modes)[1]


def _clusters(lams, rel_tol):
    groups = [[0]]
    for i in range(1, len(lams)):
        if abs(lams[i] - lams[i - 1]) < rel_tol * abs(lams[i - 1]):
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _real_basis(vectors, dim):
    """Orthonormal real basis of the span of (possibly complex) eigenvectors."""
    stacked = np.hstack([vectors.real, vectors.imag])
    u, s, _ = np.linalg.svd(stacked, full_matrices=False)
    return u[:, :dim]


def mirror_permutation(grid: DiskGrid) -> np.ndarray:
    """Index map of the reflection theta -> -theta on the unknown vector."""
    j = np.arange(grid.n_radii)[:, None]
    i = (-np.arange(grid.n_theta)) % grid.n_theta
    return (j * grid.n_theta + i[None, :]).ravel()


def _orient_cluster(basis, grid):
    # Within a degenerate cluster, diagonalise the reflection theta -> -theta so
    # each vector is symmetric or antisymmetric; symmetric (peak on theta = 0)
    # vectors come first.
    if basis.shape[1] == 1:
        return basis
    mirrored = basis[mirror_permutation(grid), :]
    _, c = np.linalg.eigh(0.5 * (basis.T @ mirrored + mirrored.T @ basis))
    return basis @ c[:, ::-1]


def normalize_vector(v: np.ndarray) -> np.ndarray:
    """Scale to unit max-abs, positive at the first node attaining the max."""
    v = np.asarray(v, dtype=float)
    peak = np.max(np.abs(v))
    if peak == 0:
        return v
    first = int(np.flatnonzero(np.abs(v) >= peak * (1 - 1e-6))[0])
    return v / (peak * np.sign(v[first]))


def solve_modes(ops: DiscreteOperators, n_modes: int = DEFAULT_N_MODES) -> list:
    """The n_modes lowest eigenpairs, ascending in lambda.

    Degenerate clusters (relative gap below DEGENERACY_TOL) get a real,
    deterministic basis and are marked as partners when they come in pairs.
    Labels are left empty; see ``drumhead.modes.label_modes``.
    """
    n_modes = _check_request(ops, n_modes)
    a = -ops.laplacian / ops.mass[:, None]
    try:
        mu, vecs = np.linalg.eig(a)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"dense eigensolver failed: {exc}") from exc
    # one extra eigenvalue so a degenerate pair at the cut-off is oriented whole
    extra = min(n_modes + 1, len(mu))
    order, lams = _retained(mu, extra)
    vecs = vecs[:, order]

    modes = []
    for group in _clusters(lams, DEGENERACY_TOL):
        if group[0] >= n_modes:
            break
        basis = _orient_cluster(_real_basis(vecs[:, group], len(group)), ops.grid)
        for col, idx in enumerate(group):
            modes.append(Mode(lam=float(lams[idx]), values=normalize_vector(basis[:, col])))
    modes = modes[:n_modes]
    for rank, mode in enumerate(modes, start=1):
        mode.rank = rank
    for i, j in detect_degenerate_pairs(modes, DEGENERACY_TOL):
        modes[i].degeneracy_partner = modes[j].rank
        modes[j].degeneracy_partner = modes[i].rank
    return modes


def detect_degenerate_pairs(modes, rel_tol: float = DEGENERACY_TOL) -> list:
    """Pair adjacent modes whose eigenvalues agree to ``rel_tol``.

    Accepts Mode objects or plain eigenvalues. Returns index pairs (i, i+1);
    each mode belongs to at most one pair.
    """
    lams = [m.lam if isinstance(m, Mode) else float(m) for m in modes]
    pairs = []
    i = 0
    while i < len(lams) - 1:
        if abs(lams[i + 1] - lams[i]) < rel_tol * abs(lams[i]):
            pairs.append((i, i + 1))
            i += 2
        else:
            i += 1
    return pairs


def normalize_spectrum(lambdas, convention: str = "overtone2"):
    """Scale an ascending spectrum by one of the tabulation conventions.

    overtone2   : second distinct eigenvalue (first overtone) -> 2
    overtone1   : third eigenvalue, the upper member of the first-overtone pair -> 1
    fundamental : lowest eigenvalue -> 1
    none        : unchanged

    Returns (normalized array, reference lambda that maps to the target value).
    """
    lams = np.asarray(lambdas, dtype=float)
    if convention not in CONVENTIONS:
        raise InvalidParameterError(f"unknown normalization {convention!r}")
    if convention == "none":
        return lams.copy(), 1.0
    if len(lams) == 0:
        raise InvalidParameterError("empty spectrum")
    if convention == "fundamental":
        ref, target = lams[0], 1.0
    elif convention == "overtone1":
        if len(lams) < 3:
            raise InvalidParameterError("overtone1 needs at least 3 eigenvalues")
        ref, target = lams[2], 1.0
    else:
        groups = _clusters(lams, DEGENERACY_TOL)
        if len(groups) < 2:
            raise InvalidParameterError("overtone2 needs at least 2 distinct eigenvalues")
        ref, target = lams[groups[1][0]], 2.0
    # divide first so the reference maps exactly onto the target
    return lams / ref * target, float(ref)


def solve_spectrum(
    params: LoadingParams,
    n_r: int,
    n_theta: int,
    n_modes: int = DEFAULT_N_MODES,
    convention: str = "overtone2",
    labeling: str = "auto",
) -> SpectrumReport:
    """Solve, label and normalise in one call.

    labeling: "nodal" counts sign changes on the computed eigenfunctions,
    "continuation" tracks each mode back to the concentric membrane, and
    "auto" uses nodal counts for epsilon == 0 and continuation otherwise.
    """
    from .harmonicity import cents_deviation
    from .modes import label_by_continuation, label_modes

    if labeling not in ("auto", "nodal", "continuation"):
        raise InvalidParameterError(f"unknown labeling {labeling!r}")
    if labeling == "auto":
        labeling = "nodal" if params.epsilon == 0 else "continuation"
    grid = build_grid(n_r, n_theta)
    modes = solve_modes(build_operators(params, grid), n_modes)
    if labeling == "nodal":
        label_modes(modes, grid)
    else:
        label_by_continuation(params, grid, modes)
    lams = [m.lam for m in modes]
    normalized, ref = normalize_spectrum(lams, convention)
    cents = []
    for w in normalized:
        nearest = max(np.floor(w + 0.5), 1.0)
        cents.append(cents_deviation(w, nearest))
    return SpectrumReport(
        params=params,
        n_r=grid.n_r,
        n_theta=grid.n_theta,
        raw_lambdas=lams,
        normalized=[float(w) for w in normalized],
        convention=convention,
        reference_lambda=ref,
        labels=[m.label for m in modes],
        partners=[m.degeneracy_partner for m in modes],
        cents_deviation=cents,
        labeling=labeling,
        modes=modes,
    )
