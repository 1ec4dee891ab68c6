"""
Harmonicity measures and parameter sweeps.

Q sums the squared distance of each normalised frequency to its nearest
integer, over the lowest ``n_max`` modes counted with multiplicity, on the
scale where the first overtone sits at 2.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .density import LoadingParams, assemble_mass
from .eigensolver import normalize_spectrum, solve_eigenvalues
from .errors import InvalidParameterError, SolverError
from .spectral_disk import DiscreteOperators, assemble_laplacian, build_grid

DEFAULT_N_MAX = 15


def nearest_integer(x):
    """Round half up, elementwise."""
    return np.floor(np.asarray(x, dtype=float) + 0.5)


def quality(spectrum, n_max: int = DEFAULT_N_MAX) -> float:
    w = np.asarray(spectrum, dtype=float)
    if int(n_max) != n_max or n_max < 1:
        raise InvalidParameterError(f"n_max must be a positive integer, got {n_max}")
    if len(w) < n_max:
        raise InvalidParameterError(f"need {n_max} frequencies, got {len(w)}")
    w = w[: int(n_max)]
    return float(np.sum((w - nearest_integer(w)) ** 2))


def cents_deviation(value: float, reference: float) -> float:
    if not (value > 0 and reference > 0):
        raise InvalidParameterError("cents need two positive frequency ratios")
    return 1200.0 * math.log2(value / reference)


@lru_cache(maxsize=8)
def _laplacian(n_r, n_theta):
    lap = assemble_laplacian(build_grid(n_r, n_theta))
    lap.flags.writeable = False
    return lap


def spectrum_lambdas(params: LoadingParams, n_r: int, n_theta: int, n_modes: int) -> np.ndarray:
    grid = build_grid(n_r, n_theta)
    ops = DiscreteOperators(grid, _laplacian(grid.n_r, grid.n_theta), assemble_mass(params, grid))
    try:
        return solve_eigenvalues(ops, n_modes)
    except SolverError as exc:
        raise SolverError(f"at {params}: {exc}") from exc


def quality_at(params: LoadingParams, n_max: int, n_r: int, n_theta: int) -> float:
    lams = spectrum_lambdas(params, n_r, n_theta, n_max + 1)
    normalized, _ = normalize_spectrum(lams, "overtone2")
    return quality(normalized, n_max)


def _quality_task(task):
    sigma, k, xi, epsilon, n_max, n_r, n_theta = task
    return quality_at(LoadingParams(sigma, k, xi, epsilon), n_max, n_r, n_theta)


def _run(func, tasks, workers):
    # results come back in task order whatever the worker count
    if workers is None or workers <= 1 or len(tasks) <= 1:
        return [func(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


@dataclass
class QualityMap:
    sigma_axis: np.ndarray
    k_axis: np.ndarray
    q_values: np.ndarray  # shape (len(sigma_axis), len(k_axis))
    n_max: int
    xi: float
    epsilon: float
    minimizer: tuple  # (sigma, k, q)
    refinement: "QualityMap | None" = None

    @staticmethod
    def argmin(sigma_axis, k_axis, q_values):
        i, j = np.unravel_index(int(np.argmin(q_values)), q_values.shape)
        return float(sigma_axis[i]), float(k_axis[j]), float(q_values[i, j])


def _axis(values, name):
    arr = np.asarray(values, dtype=float).ravel()
    if arr.size < 1:
        raise InvalidParameterError(f"{name} axis is empty")
    if arr.size > 1 and np.any(np.diff(arr) <= 0):
        raise InvalidParameterError(f"{name} axis must be strictly ascending")
    return arr


def _quality_grid(sigmas, ks, xi, epsilon, n_max, n_r, n_theta, workers):
    for s in sigmas:
        for k in ks:
            LoadingParams(s, k, xi, epsilon)  # fail fast on invalid points
    tasks = [(float(s), float(k), xi, epsilon, n_max, n_r, n_theta) for s in sigmas for k in ks]
    q = np.array(_run(_quality_task, tasks, workers)).reshape(len(sigmas), len(ks))
    return q


def scan_sigma_k(
    sigma_axis,
    k_axis,
    xi: float = 0.091,
    epsilon: float = 0.0,
    n_max: int = DEFAULT_N_MAX,
    n_r: int = 49,
    n_theta: int = 24,
    workers: int = 1,
    refine: bool = True,
    refine_points: int = 5,
    refine_factor: int = 10,
) -> QualityMap:
    """Q over a rectangular (sigma, k) grid, with an optional local refinement.

    The refinement evaluates a ``refine_points`` x ``refine_points`` patch
    centred on the coarse minimiser with spacing coarse_step / refine_factor,
    clipped to the scan ranges. The reported minimiser is the best point of
    both passes.
    """
    sigmas = _axis(sigma_axis, "sigma")
    ks = _axis(k_axis, "k")
    q = _quality_grid(sigmas, ks, xi, epsilon, n_max, n_r, n_theta, workers)
    best = QualityMap.argmin(sigmas, ks, q)
    result = QualityMap(sigmas, ks, q, n_max, xi, epsilon, best)

    if refine and sigmas.size > 1 and ks.size > 1:
        half = (refine_points - 1) / 2
        offsets = np.arange(refine_points) - half
        fine_s = best[0] + offsets * (sigmas[1] - sigmas[0]) / refine_factor
        fine_k = best[1] + offsets * (ks[1] - ks[0]) / refine_factor
        fine_s = np.unique(np.round(np.clip(fine_s, sigmas[0], sigmas[-1]), 12))
        fine_k = np.unique(np.round(np.clip(fine_k, ks[0], ks[-1]), 12))
        fq = _quality_grid(fine_s, fine_k, xi, epsilon, n_max, n_r, n_theta, workers)
        fine_best = QualityMap.argmin(fine_s, fine_k, fq)
        result.refinement = QualityMap(fine_s, fine_k, fq, n_max, xi, epsilon, fine_best)
        if fine_best[2] < best[2]:
            result.minimizer = fine_best
    return result


def scan_xi(sigma, k, epsilon, xi_axis, n_max=DEFAULT_N_MAX, n_r=49, n_theta=24, workers=1):
    xis = _axis(xi_axis, "xi")
    for xi in xis:
        LoadingParams(sigma, k, xi, epsilon)
    tasks = [(sigma, k, float(xi), epsilon, n_max, n_r, n_theta) for xi in xis]
    return xis, np.array(_run(_quality_task, tasks, workers))


def optimize_xi(sigma, k, epsilon, xi_axis, n_max=DEFAULT_N_MAX, n_r=49, n_theta=24, workers=1):
    """Grid search over the smoothness width; returns (xi*, Q(xi*))."""
    xis, q = scan_xi(sigma, k, epsilon, xi_axis, n_max, n_r, n_theta, workers)
    i = int(np.argmin(q))
    return float(xis[i]), float(q[i])


def _spectrum_task(task):
    sigma, k, xi, epsilon, n_modes, n_r, n_theta = task
    return spectrum_lambdas(LoadingParams(sigma, k, xi, epsilon), n_r, n_theta, n_modes)


def scan_sigma(
    sigma_axis, k=0.4, xi=0.091, epsilon=0.0, n_modes=9, n_max=DEFAULT_N_MAX,
    n_r=49, n_theta=24, workers=1,
):
    """Overtone-normalised frequencies and Q along sigma at fixed k.

    Returns (sigmas, freqs of shape (len, n_modes), q).
    """
    sigmas = _axis(sigma_axis, "sigma")
    count = max(n_modes, n_max + 1)
    tasks = [(float(s), k, xi, epsilon, count, n_r, n_theta) for s in sigmas]
    for s in sigmas:
        LoadingParams(s, k, xi, epsilon)
    freqs, qs = [], []
    for lams in _run(_spectrum_task, tasks, workers):
        w, _ = normalize_spectrum(lams, "overtone2")
        freqs.append(w[:n_modes])
        qs.append(quality(w, n_max))
    return sigmas, np.array(freqs), np.array(qs)


def scan_eccentricity(
    sigma, k, xi, epsilon_axis, n_modes=10, n_r=65, n_theta=56, workers=1,
):
    """Ascending raw eigenvalues at each eccentricity, aligned by rank.

    Returns (epsilons, lambdas of shape (len, n_modes)).
    """
    eps = _axis(epsilon_axis, "epsilon")
    for e in eps:
        LoadingParams(sigma, k, xi, e)
    tasks = [(sigma, k, xi, float(e), n_modes, n_r, n_theta) for e in eps]
    return eps, np.array(_run(_spectrum_task, tasks, workers))
