"""Ridge-parameter selection by generalized cross-validation.

For each predictor kernel matrix K_r, with L_r = (1, K_r)^T and
L_Y = (1, K_Y)^T both (n+1) x n, the criterion is

    GCV(eps) = sum_r  ||L_Y - L_Y L_r^T (L_r L_r^T + eps I_{n+1})^{-1} L_r||_F^2
               / {1 - tr(L_r^T (L_r L_r^T + eps I_{n+1})^{-1} L_r) / n}^2,

minimized over a grid of eps values.  Internally the (n+1)-sized inverse
is reduced with the push-through identity to the spectrum of
A_r = L_r^T L_r, so all grid points share one eigendecomposition per
predictor:

    num(eps) = sum_i (eps / (a_i + eps))^2 * q_i,
    den(eps) = (1 - sum_i a_i / (a_i + eps) / n)^2,

with q_i = v_i^T (L_Y^T L_Y) v_i over the eigenpairs (a_i, v_i) of A_r.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, NumericGuardWarning, TuningError
from .kernels import symmetric_eigh

# The prescribed 9-point search grid 1e-5 ... 1e3.
GCV_GRID = tuple(10.0 ** k for k in range(-5, 4))

_DENOM_GUARD = 1e-12


@dataclass(frozen=True)
class RidgeSelection:
    """Outcome of a GCV grid search.

    epsilon is the selected grid point; gcv_values and skipped_counts are
    aligned with the (ascending) grid.
    """

    epsilon: float
    grid: tuple
    gcv_values: tuple
    skipped_counts: tuple

    def __post_init__(self):
        if self.epsilon not in self.grid:
            raise ArgumentError("selected epsilon must be a member of the grid")


def _check_kernel_args(epsilon, ky, kxs):
    if not np.isfinite(epsilon) or epsilon <= 0.0:
        raise ArgumentError(f"epsilon must be positive and finite, got {epsilon!r}")
    ky = np.asarray(ky, dtype=float)
    if ky.ndim != 2 or ky.shape[0] != ky.shape[1]:
        raise ArgumentError(f"response kernel matrix must be square, got {ky.shape}")
    n = ky.shape[0]
    mats = []
    for i, k in enumerate(kxs):
        k = np.asarray(k, dtype=float)
        if k.shape != (n, n):
            raise ArgumentError(f"kernel matrix {i} has shape {k.shape}, expected {(n, n)}")
        mats.append(k)
    if not mats:
        raise ArgumentError("at least one predictor kernel matrix is required")
    return ky, mats


def _gcv_components(ky: np.ndarray, kxs: list) -> tuple:
    """Per-predictor spectra (a_i, q_i), shared by every grid point."""
    n = ky.shape[0]
    ones = np.ones((n, n))
    s = ones + ky @ ky
    comps = []
    for k in kxs:
        a_mat = ones + k @ k
        a, v = symmetric_eigh(a_mat)
        a = np.clip(a, 0.0, None)
        q = np.einsum("ij,ij->j", v, s @ v)
        comps.append((a, q))
    return n, comps


def _gcv_from_components(epsilon: float, n: int, comps) -> tuple:
    total = 0.0
    skipped = 0
    for a, q in comps:
        shrink = a / (a + epsilon)
        den = 1.0 - float(shrink.sum()) / n
        if den <= _DENOM_GUARD:
            skipped += 1
            continue
        resid = epsilon / (a + epsilon)
        total += float(np.sum(resid * resid * q)) / (den * den)
    return total, skipped


def gcv_value(epsilon: float, ky, kxs) -> float:
    """Evaluate the GCV criterion at one ridge value.

    Summands whose denominator falls at or below 1e-12 are skipped with a
    NumericGuardWarning; well-conditioned inputs skip nothing.
    """
    ky, mats = _check_kernel_args(epsilon, ky, kxs)
    n, comps = _gcv_components(ky, mats)
    value, skipped = _gcv_from_components(float(epsilon), n, comps)
    if skipped:
        warnings.warn(
            f"GCV at epsilon={epsilon:g}: skipped {skipped} of {len(mats)} "
            "summands with near-zero denominator",
            NumericGuardWarning,
        )
    return value


def select_epsilon(ky, kxs, grid=GCV_GRID) -> RidgeSelection:
    """Grid-search the ridge parameter minimizing the GCV criterion.

    The grid is sorted ascending internally; ties break toward the larger
    epsilon.  Grid points where every summand was skipped are unusable; if
    all grid points are unusable a TuningError is raised.
    """
    pts = sorted(float(e) for e in grid)
    if not pts:
        raise ArgumentError("epsilon grid must be nonempty")
    if pts[0] <= 0.0 or not np.isfinite(pts[-1]):
        raise ArgumentError("epsilon grid entries must be positive and finite")
    ky, mats = _check_kernel_args(pts[0], ky, kxs)
    n, comps = _gcv_components(ky, mats)

    values = []
    skips = []
    for eps in pts:
        value, skipped = _gcv_from_components(eps, n, comps)
        values.append(value)
        skips.append(skipped)
    usable = [i for i in range(len(pts)) if skips[i] < len(mats)]
    if not usable:
        raise TuningError("every grid point lost all GCV summands to the denominator guard")
    best_value = min(values[i] for i in usable)
    best = max(i for i in usable if values[i] == best_value)
    total_skipped = sum(skips)
    if total_skipped:
        warnings.warn(
            f"GCV grid search skipped {total_skipped} summands across the grid",
            NumericGuardWarning,
        )
    return RidgeSelection(
        epsilon=pts[best],
        grid=tuple(pts),
        gcv_values=tuple(values),
        skipped_counts=tuple(skips),
    )
