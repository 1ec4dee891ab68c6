"""Nodal labelling of eigenfunctions and export of mode fields for plotting."""

import logging
from collections import Counter

import numpy as np
from scipy.optimize import linear_sum_assignment

from .spectral_disk import DiskGrid

log = logging.getLogger(__name__)

# samples below this fraction of the peak amplitude are treated as zero
ZERO_FRACTION = 1e-9


def _sign_changes(values, threshold, cyclic):
    signs = np.sign(values[np.abs(values) > threshold])
    if len(signs) < 2:
        return 0
    changes = int(np.count_nonzero(signs[1:] != signs[:-1]))
    if cyclic and signs[0] != signs[-1]:
        changes += 1
    return changes


def classify_mode(mode, grid: DiskGrid):
    """Return (m, n, uncertain) for an eigenfunction sampled on ``grid``.

    m is half the number of sign changes around a circle. The circle at the
    radius nearest 0.75 gives the primary count; the three outermost circles
    vote and their majority decides. n is one plus the number of sign changes
    along the ray through the peak amplitude, walking from the centre out;
    the clamped rim is counted as a contour.
    """
    values = np.asarray(getattr(mode, "values", mode), dtype=float)
    field = values.reshape(grid.n_radii, grid.n_theta)
    threshold = ZERO_FRACTION * np.max(np.abs(field))

    circle_counts = lambda j: _sign_changes(field[j], threshold, cyclic=True) // 2
    primary = circle_counts(int(np.argmin(np.abs(grid.radii - 0.75))))
    votes = [circle_counts(j) for j in range(min(3, grid.n_radii))]
    top, hits = Counter(votes).most_common(1)[0]
    m = top if hits * 2 > len(votes) else primary
    uncertain = hits != len(votes) or top != primary

    peak = int(np.argmax(np.abs(field)))
    ray = field[::-1, peak % grid.n_theta]
    n = 1 + _sign_changes(ray, threshold, cyclic=False)
    return m, n, uncertain


def label_modes(modes, grid: DiskGrid):
    """Fill label_m / label_n in place; degenerate partners share one label."""
    for mode in modes:
        m, n, uncertain = classify_mode(mode, grid)
        mode.label_m, mode.label_n, mode.label_uncertain = m, n, uncertain
        if uncertain:
            log.warning("mode %d: nodal-line votes disagree, labelled (%d, %d)", mode.rank, m, n)
    by_rank = {mode.rank: mode for mode in modes}
    for mode in modes:
        partner = by_rank.get(mode.degeneracy_partner)
        if partner is not None and partner.rank > mode.rank and partner.label != mode.label:
            # a degenerate pair is one mode family; trust the member with the clearer vote
            src, dst = (partner, mode) if mode.label_uncertain else (mode, partner)
            dst.label_m, dst.label_n = src.label_m, src.label_n
    return modes


def _unit_rows(modes):
    v = np.array([m.values for m in modes])
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def label_by_continuation(params, grid: DiskGrid, modes, max_step: float = 0.06, margin: int = 6):
    """Label eccentric modes by the concentric family they descend from.

    Starting from the concentric membrane (labelled by nodal counts), the
    eccentricity is raised to ``params.epsilon`` in steps of at most
    ``max_step``; at each step modes are matched to their predecessors by a
    maximum-overlap assignment of the eigenvectors. ``modes`` must come from
    ``grid`` at ``params``; their labels are overwritten in place.
    """
    from dataclasses import replace

    from .eigensolver import build_operators, solve_modes

    count = len(modes) + margin
    steps = max(1, int(np.ceil(params.epsilon / max_step)))
    path = np.linspace(0.0, params.epsilon, steps + 1)

    prev = solve_modes(build_operators(replace(params, epsilon=0.0), grid), count)
    label_modes(prev, grid)
    labels = [m.label for m in prev]
    for eps in path[1:]:
        if eps == path[-1]:
            cur = modes
        else:
            cur = solve_modes(build_operators(replace(params, epsilon=float(eps)), grid), count)
        overlap = np.abs(_unit_rows(prev) @ _unit_rows(cur).T)
        rows, cols = linear_sum_assignment(-overlap)
        carried = [None] * len(cur)
        for i, j in zip(rows, cols):
            carried[j] = labels[i]
        labels, prev = carried, cur

    for mode, (m, n) in zip(modes, labels):
        mode.label_m, mode.label_n = m, n
        mode.label_uncertain = False
    return modes


def export_mode_grid(mode, grid: DiskGrid) -> np.ndarray:
    """Rows (r, theta, psi) closing the disk for contour plotting.

    Each interior ring gets a duplicated theta = 2*pi sample, and a ring of
    zeros at r = 1 is appended. Row order is radial-outer, angular-inner.
    """
    values = np.asarray(getattr(mode, "values", mode), dtype=float)
    field = values.reshape(grid.n_radii, grid.n_theta)
    field = np.hstack([field, field[:, :1]])
    field = np.vstack([field, np.zeros((1, grid.n_theta + 1))])
    radii = np.append(grid.radii, 1.0)
    angles = np.append(grid.angles, 2 * np.pi)
    r, t = np.meshgrid(radii, angles, indexing="ij")
    return np.column_stack([r.ravel(), t.ravel(), field.ravel()])
