"""Marginal dependence statistics: the regularized kernel-CCA score, HSIC,
distance correlation, and absolute Pearson correlation.

The KCCA score of a predictor against the response is the largest singular
value of the whitened cross-Gram coordinate matrix

    M = (D_Y + eps I)^{-1/2} D_Y^{1/2} U_Y^T U_X D_X^{1/2} (D_X + eps I)^{-1/2},

where (U, D) are the spectral decompositions of the double-centered Gram
matrices.  For any eps > 0 the score lies in [0, 1) and is 0 iff the
centered operators are orthogonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ArgumentError, NumericError, UnsupportedMethodError
from .kernels import CenteredGram, _as_samples


class Method(str, Enum):
    """Screening method tags."""

    KCCA = "kcca"
    HSIC = "hsic"
    DC = "dc"
    SIS = "sis"


@dataclass(frozen=True)
class DependenceScore:
    """A nonnegative marginal dependence value with its method tag.

    epsilon is present iff method is KCCA.  KCCA, DC, and SIS values lie in
    [0, 1]; HSIC values are only required to be nonnegative.
    """

    value: float
    method: Method
    epsilon: float | None = None

    def __post_init__(self):
        if not np.isfinite(self.value) or self.value < 0.0:
            raise ArgumentError(f"dependence score must be finite and >= 0, got {self.value!r}")
        if self.method is not Method.HSIC and self.value > 1.0:
            raise ArgumentError(f"{self.method.value} score must lie in [0, 1], got {self.value!r}")
        has_eps = self.epsilon is not None
        if has_eps != (self.method is Method.KCCA):
            raise ArgumentError("epsilon is present iff the method is kcca")
        if has_eps and (not np.isfinite(self.epsilon) or self.epsilon <= 0.0):
            raise ArgumentError(f"epsilon must be positive and finite, got {self.epsilon!r}")


def _check_pair(gx: CenteredGram, gy: CenteredGram):
    if gx.n != gy.n:
        raise ArgumentError(f"Gram matrices built from different sample counts: {gx.n} vs {gy.n}")


def kcca_singular_value(gx: CenteredGram, gy: CenteredGram, epsilon: float) -> float:
    """Largest singular value of the whitened cross-Gram matrix M.

    Truncated eigenpairs contribute exactly-zero rows/columns of M and are
    dropped before the SVD; a rank-0 side yields 0.
    """
    _check_pair(gx, gy)
    if not np.isfinite(epsilon) or epsilon <= 0.0:
        raise ArgumentError(f"epsilon must be positive and finite, got {epsilon!r}")
    rx, ry = gx.rank, gy.rank
    if rx == 0 or ry == 0:
        return 0.0
    dx = gx.d[:rx]
    dy = gy.d[:ry]
    wx = np.sqrt(dx / (dx + epsilon))
    wy = np.sqrt(dy / (dy + epsilon))
    cross = gy.u[:, :ry].T @ gx.u[:, :rx]
    m = (wy[:, None] * cross) * wx[None, :]
    try:
        sv = float(np.linalg.svd(m, compute_uv=False)[0])
    except np.linalg.LinAlgError as e:
        raise NumericError(f"singular value computation failed: {e}") from None
    return min(sv, 1.0)


def kcca_score(gx: CenteredGram, gy: CenteredGram, epsilon: float) -> DependenceScore:
    """Regularized kernel canonical correlation between two centered Grams."""
    value = kcca_singular_value(gx, gy, epsilon)
    return DependenceScore(value=value, method=Method.KCCA, epsilon=float(epsilon))


def hsic_score(gx: CenteredGram, gy: CenteredGram) -> DependenceScore:
    """Biased V-statistic HSIC: trace(G_X G_Y) / n^2, clamped at 0."""
    _check_pair(gx, gy)
    n = gx.n
    value = float(np.vdot(gx.g, gy.g)) / (n * n)
    return DependenceScore(value=max(value, 0.0), method=Method.HSIC)


def _distance_matrix(pts: np.ndarray) -> np.ndarray:
    diff = pts[:, None, :] - pts[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def _double_center(a: np.ndarray) -> np.ndarray:
    return a - a.mean(axis=1, keepdims=True) - a.mean(axis=0, keepdims=True) + a.mean()


def dcor_score(x_samples, y_samples) -> DependenceScore:
    """Sample distance correlation from doubly-centered distance matrices.

    Returns 0 when either variable is constant.  Accepts scalar or vector
    samples on both sides.
    """
    xs = _as_samples(x_samples)
    ys = _as_samples(y_samples)
    n = xs.shape[0]
    if ys.shape[0] != n:
        raise ArgumentError(f"sample counts differ: {n} vs {ys.shape[0]}")
    if n < 2:
        raise ArgumentError(f"distance correlation needs n >= 2, got {n}")
    a = _double_center(_distance_matrix(xs))
    b = _double_center(_distance_matrix(ys))
    n2 = n * n
    dcov2 = float(np.vdot(a, b)) / n2
    dvar_x = float(np.vdot(a, a)) / n2
    dvar_y = float(np.vdot(b, b)) / n2
    if dvar_x <= 0.0 or dvar_y <= 0.0:
        return DependenceScore(value=0.0, method=Method.DC)
    r2 = dcov2 / np.sqrt(dvar_x * dvar_y)
    value = float(np.sqrt(max(r2, 0.0)))
    return DependenceScore(value=min(value, 1.0), method=Method.DC)


def pearson_score(x_samples, y_samples) -> DependenceScore:
    """Absolute sample Pearson correlation between two scalar variables.

    Returns 0 when either variable is constant.  A multivariate response is
    rejected: Pearson ranking has no single-number extension to vector
    responses.
    """
    xs = _as_samples(x_samples)
    ys = _as_samples(y_samples)
    if xs.shape[1] != 1 or ys.shape[1] != 1:
        raise UnsupportedMethodError(
            "pearson correlation requires univariate samples on both sides"
        )
    x = xs[:, 0]
    y = ys[:, 0]
    n = x.shape[0]
    if y.shape[0] != n:
        raise ArgumentError(f"sample counts differ: {n} vs {y.shape[0]}")
    if n < 2:
        raise ArgumentError(f"pearson correlation needs n >= 2, got {n}")
    cx = x - x.mean()
    cy = y - y.mean()
    denom = np.sqrt(np.dot(cx, cx) * np.dot(cy, cy))
    if denom == 0.0:
        return DependenceScore(value=0.0, method=Method.SIS)
    value = abs(float(np.dot(cx, cy) / denom))
    return DependenceScore(value=min(value, 1.0), method=Method.SIS)
