import numpy as np
import pytest
from scipy import ndimage

from drumhead import LoadingParams, normalize_spectrum, quality, solve_spectrum
from drumhead.errors import InvalidParameterError
from drumhead.harmonicity import (
    QualityMap,
    cents_deviation,
    nearest_integer,
    optimize_xi,
    quality_at,
    scan_eccentricity,
    scan_sigma,
    scan_sigma_k,
    scan_xi,
    spectrum_lambdas,
)


def test_quality_perfect():
    assert quality([1, 2, 2, 3, 3], 5) == 0.0


def test_quality_sums_squares():
    assert quality([1.1, 2.0, 1.8], 3) == pytest.approx(0.01 + 0.04)


def test_quality_truncates():
    assert quality([1, 2, 2, 3.4, 7.7], 3) == quality([1, 2, 2], 3) == 0.0


def test_quality_needs_enough_modes():
    with pytest.raises(InvalidParameterError):
        quality([1, 2], 3)
    with pytest.raises(InvalidParameterError):
        quality([1, 2], 0)


def test_half_rounds_up():
    np.testing.assert_array_equal(nearest_integer([0.5, 1.5, 2.4999, -0.5]), [1, 2, 2, 0])


@pytest.mark.parametrize("a,b,expected", [(3.0393, 3.0, 22.53), (2, 1, 1200.0), (1.7, 1.7, 0.0), (1, 2, -1200.0)])
def test_cents(a, b, expected):
    assert cents_deviation(a, b) == pytest.approx(expected, abs=0.01)


@pytest.mark.parametrize("a,b", [(0, 1), (1, -2)])
def test_cents_rejects(a, b):
    with pytest.raises(InvalidParameterError):
        cents_deviation(a, b)


def test_uniform_quality_independent_of_k():
    qs = [quality_at(LoadingParams(1.0, k, 0.091), 15, 31, 20) for k in (0.2, 0.5, 0.8)]
    assert max(qs) - min(qs) < 1e-10


def test_one_point_scan_equals_uniform_quality():
    qmap = scan_sigma_k([1.0], [0.4], n_r=31, n_theta=20)
    lams = solve_spectrum(LoadingParams(1.0, 0.4, 0.091), 31, 20, 16, "none").raw_lambdas
    w, _ = normalize_spectrum(lams, "overtone2")
    assert qmap.q_values.shape == (1, 1)
    assert qmap.q_values[0, 0] == pytest.approx(quality(w, 15), abs=1e-10)
    assert qmap.minimizer == (1.0, 0.4, qmap.q_values[0, 0])


def test_argmin():
    q = np.array([[3.0, 2.0], [0.5, 4.0]])
    assert QualityMap.argmin(np.array([1.0, 2.0]), np.array([0.3, 0.4]), q) == (2.0, 0.3, 0.5)


def test_scan_axis_validation():
    with pytest.raises(InvalidParameterError):
        scan_sigma_k([2.0, 1.5], [0.4])
    with pytest.raises(InvalidParameterError):
        scan_sigma_k([], [0.4])
    with pytest.raises(InvalidParameterError):
        scan_sigma_k([0.5, 2.0], [0.4])


def test_scan_refinement_patch():
    qmap = scan_sigma_k(np.linspace(2, 3, 3), np.linspace(0.4, 0.5, 3), n_r=21, n_theta=12)
    fine = qmap.refinement
    assert fine is not None and fine.q_values.shape[0] <= 5 and fine.q_values.shape[1] <= 5
    assert np.all(np.diff(fine.sigma_axis) == pytest.approx(0.05))
    assert qmap.minimizer[2] == min(qmap.q_values.min(), fine.q_values.min())
    assert np.all(qmap.q_values >= 0)


@pytest.mark.criterion(8)
def test_scan_independent_of_worker_count():
    axes = (np.linspace(1.5, 3.5, 4), np.linspace(0.3, 0.6, 3))
    serial = scan_sigma_k(*axes, n_r=21, n_theta=12, workers=1)
    pooled = scan_sigma_k(*axes, n_r=21, n_theta=12, workers=3)
    np.testing.assert_array_equal(serial.q_values, pooled.q_values)
    np.testing.assert_array_equal(serial.refinement.q_values, pooled.refinement.q_values)
    assert serial.minimizer == pooled.minimizer


def test_optimize_xi_single_point():
    xi, q = optimize_xi(2.57, 0.492, 0.0, [0.07], n_r=31, n_theta=20)
    assert xi == 0.07
    assert q == pytest.approx(quality_at(LoadingParams(2.57, 0.492, 0.07), 15, 31, 20))


def test_optimize_xi_is_argmin():
    axis = np.linspace(0.02, 0.2, 7)
    xis, qs = scan_xi(2.57, 0.492, 0.0, axis, n_r=31, n_theta=20)
    xi, q = optimize_xi(2.57, 0.492, 0.0, axis, n_r=31, n_theta=20)
    assert q <= qs[0] and q <= qs[-1] and q == qs.min()
    assert xi == xis[np.argmin(qs)]


def test_scan_sigma_table():
    sig, freqs, q = scan_sigma(np.linspace(1, 5, 9), k=0.4, n_modes=9, n_r=31, n_theta=20)
    assert freqs.shape == (9, 9)
    np.testing.assert_array_equal(freqs[:, 1], 2.0)
    np.testing.assert_allclose(freqs[0, :3], [2 * 2.404825558 / 3.831705970, 2, 2], rtol=1e-8)


def test_fig5_minimum_near_three():
    sig, _, q = scan_sigma(np.linspace(1, 5, 41), k=0.4, n_modes=9)
    assert 2.4 <= sig[np.argmin(q)] <= 3.6


def test_eccentricity_zero_column_is_concentric():
    eps, lams = scan_eccentricity(3.125, 0.29, 0.091, [0.0, 0.05], n_modes=6, n_r=31, n_theta=20)
    direct = spectrum_lambdas(LoadingParams(3.125, 0.29, 0.091, 0.0), 31, 20, 6)
    np.testing.assert_array_equal(lams[0], direct)
    assert lams.shape == (2, 6)


def test_eccentricity_containment():
    with pytest.raises(InvalidParameterError):
        scan_eccentricity(3.125, 0.29, 0.091, [0.0, 0.8], n_modes=6, n_r=21, n_theta=12)


def test_eccentric_split_exceeds_tolerance():
    _, lams = scan_eccentricity(3.125, 0.29, 0.091, [0.18], n_modes=3, n_r=41, n_theta=40)
    assert (lams[0, 2] - lams[0, 1]) / lams[0, 1] > 1e-6


def test_low_q_valley():
    qmap = scan_sigma_k(np.linspace(2.2, 3.4, 7), np.linspace(0.44, 0.54, 6), refine=False)
    low = qmap.q_values <= 2 * qmap.q_values.min()
    regions, _ = ndimage.label(low)
    home = regions[np.unravel_index(np.argmin(qmap.q_values), low.shape)]
    # the cells near the minimum form one connected valley, not an isolated pit
    assert np.count_nonzero(regions == home) > 1
    assert np.count_nonzero(low.any(axis=1)) > 1
