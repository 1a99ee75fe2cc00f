"""Full feature-screening pipeline: per-feature bandwidths, optional ridge
tuning, shared response decomposition, per-predictor scores, and top-m
selection.

Pipeline for the kernel methods, given data X (n x p) and response Y (n x d):

  (a) bandwidths gamma_1..gamma_p and gamma_Y from the mean pairwise
      distance rule (a constant feature falls back to gamma = 1 with a
      warning);
  (b) ridge epsilon from the GCV grid search (KCCA only, when auto);
  (c) centered Gram matrices and their decompositions, the response one
      computed once and shared across all predictors;
  (d) one dependence score per predictor;
  (e) descending rank with ties broken by ascending feature index, and
      selection of the top m features.

Feature indices in results are 1-based, matching how selected sets are
reported in tables.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    ArgumentError,
    DataError,
    DegenerateDataError,
    DegenerateDataWarning,
    UnsupportedMethodError,
)
from .kernels import Bandwidth, DataMatrix, bandwidth, center_and_decompose, gram
from .measures import Method, dcor_score, hsic_score, kcca_singular_value, pearson_score
from .tuning import GCV_GRID, select_epsilon

# The GCV sum over all p predictors is O(p n^3); above this many predictors
# the tuning step uses a seeded uniform subsample unless told otherwise.
GCV_SUBSAMPLE_DEFAULT = 200


@dataclass(frozen=True)
class ThresholdRule:
    """How many top-ranked features to select.

    kind "fixed_m" selects a caller-chosen m; kind "auto" uses the
    empirical recommendation m = ceil(1.5 * epsilon^(-3/2) * n^(1/4)),
    clamped to [1, p].  The theoretical cutoff against which scores would
    be thresholded has the same epsilon^(-3/2) shape with unknowable
    constants, so top-m selection is the implementable rule.
    """

    kind: str
    m: int | None = None

    def __post_init__(self):
        if self.kind not in ("fixed_m", "auto"):
            raise ArgumentError(f"unknown threshold rule kind {self.kind!r}")
        if self.kind == "fixed_m":
            if self.m is None or int(self.m) < 1:
                raise ArgumentError("fixed_m rule requires a positive m")
            object.__setattr__(self, "m", int(self.m))
        elif self.m is not None:
            raise ArgumentError("auto rule takes no m")

    @classmethod
    def fixed(cls, m: int) -> "ThresholdRule":
        return cls(kind="fixed_m", m=m)

    @classmethod
    def auto(cls) -> "ThresholdRule":
        return cls(kind="auto")


@dataclass(frozen=True, eq=False)
class ScreeningResult:
    """Scores, ranking, and selected set from one screening run.

    scores[r-1] is the dependence score of feature r; ranking is the
    1-based feature permutation by descending score (ties broken by
    ascending index); selected is its first m entries.  epsilon is present
    only for the KCCA method.
    """

    scores: np.ndarray
    ranking: np.ndarray
    selected: np.ndarray
    epsilon: float | None
    method: Method
    m: int

    def __post_init__(self):
        p = self.scores.shape[0]
        if not 1 <= self.m <= p:
            raise ArgumentError(f"m={self.m} outside [1, {p}]")
        if self.ranking.shape != (p,) or not np.array_equal(
            np.sort(self.ranking), np.arange(1, p + 1)
        ):
            raise ArgumentError("ranking must be a permutation of 1..p")
        if not np.array_equal(self.selected, self.ranking[: self.m]):
            raise ArgumentError("selected must be the first m entries of ranking")
        for name in ("scores", "ranking", "selected"):
            getattr(self, name).setflags(write=False)

    def rank_positions(self) -> np.ndarray:
        """positions[r-1] = 1-based rank of feature r."""
        pos = np.empty(self.ranking.shape[0], dtype=int)
        pos[self.ranking - 1] = np.arange(1, self.ranking.shape[0] + 1)
        return pos


def auto_threshold(epsilon: float, n: int, p: int) -> int:
    """Recommended model size m = ceil(1.5 * eps^(-3/2) * n^(1/4)), in [1, p]."""
    if not np.isfinite(epsilon) or epsilon <= 0.0:
        raise ArgumentError(f"epsilon must be positive and finite, got {epsilon!r}")
    if n < 1 or p < 1:
        raise ArgumentError(f"n and p must be positive, got n={n}, p={p}")
    m = math.ceil(1.5 * epsilon ** -1.5 * n ** 0.25)
    return min(p, max(1, m))


def rank_by_score(scores) -> np.ndarray:
    """Stable descending sort of scores as a 1-based feature permutation.

    Ties are broken by ascending feature index.  NaN scores are a data
    error.
    """
    s = np.asarray(scores, dtype=float)
    if s.ndim != 1 or s.size == 0:
        raise ArgumentError("scores must be a nonempty 1-D sequence")
    if np.isnan(s).any():
        raise DataError("scores contain NaN")
    order = np.argsort(-s, kind="stable")
    return order.astype(int) + 1


def _column_bandwidth(values: np.ndarray, label: str) -> Bandwidth:
    try:
        return bandwidth(values)
    except DegenerateDataError:
        warnings.warn(
            f"{label} is constant; substituting gamma = 1 (its score will be 0)",
            DegenerateDataWarning,
        )
        return Bandwidth(gamma=1.0)


def _resolve_m(rule, method: Method, epsilon, n: int, p: int) -> int:
    if rule is None:
        # Default selection size: the top 1 percent of features.
        rule = ThresholdRule.fixed(min(p, max(1, math.ceil(0.01 * p))))
    if rule.kind == "fixed_m":
        return min(rule.m, p)
    if method is not Method.KCCA or epsilon is None:
        raise ArgumentError("auto threshold rule requires a KCCA epsilon")
    return auto_threshold(epsilon, n, p)


def _map_indexed(fn, count: int, threads: int) -> list:
    out = [None] * count
    if threads > 1 and count > 1:
        def run(r):
            out[r] = fn(r)
        with ThreadPoolExecutor(max_workers=threads) as ex:
            list(ex.map(run, range(count)))
    else:
        for r in range(count):
            out[r] = fn(r)
    return out


def screen(
    x: DataMatrix,
    y: DataMatrix,
    method=Method.KCCA,
    rule: ThresholdRule | None = None,
    epsilon="auto",
    seed: int = 0,
    *,
    grid=GCV_GRID,
    gcv_subsample: int | None = None,
    tol_rel: float = 1e-10,
    threads: int = 1,
) -> ScreeningResult:
    """Rank all features of x by marginal dependence with y and select the top m.

    Parameters
    ----------
    x, y : DataMatrix
        Predictors (n x p) and response (n x d) over the same n samples.
    method : Method or str
        "kcca", "hsic", "dc", or "sis" (sis requires a univariate response).
    rule : ThresholdRule, optional
        Selection size; defaults to the top 1 percent of features.  The
        auto rule is valid for kcca only (its formula needs epsilon).
    epsilon : "auto" or positive float
        KCCA ridge parameter; "auto" runs the GCV grid search.
    seed : int
        Seeds the GCV predictor subsample draw (used when p exceeds the
        subsample size); has no other effect.
    gcv_subsample : int, optional
        Number of predictors entering the GCV sum; defaults to
        min(p, 200).  Pass p to force the full sum.
    threads : int
        Fan per-predictor score computation over this many threads; the
        numeric result is independent of the thread count.
    """
    method = Method(method)
    if x.n != y.n:
        raise ArgumentError(f"x and y sample counts differ: {x.n} vs {y.n}")
    n, p = x.n, x.p
    if n < 4:
        raise ArgumentError(f"screening needs at least 4 samples, got {n}")
    if p < 1:
        raise ArgumentError("x has no feature columns")
    if threads < 1:
        raise ArgumentError(f"threads must be >= 1, got {threads}")
    if np.all(np.ptp(y.values, axis=0) == 0.0):
        raise DegenerateDataError("response is constant; screening is meaningless")
    if method is Method.SIS and y.p != 1:
        raise UnsupportedMethodError("sis requires a univariate response")

    xv = x.values
    yv = y.values
    eps = None

    if method is Method.SIS:
        scores = np.array([pearson_score(xv[:, r], yv[:, 0]).value for r in range(p)])
    elif method is Method.DC:
        vals = _map_indexed(lambda r: dcor_score(xv[:, r], yv).value, p, threads)
        scores = np.asarray(vals, dtype=float)
    else:
        # Non-constant response plus the scale-free bandwidth rule guarantees
        # a nonzero centered Gram, so no rank guard is needed here.
        bw_y = _column_bandwidth(yv, "response")
        gy = center_and_decompose(gram(yv, bw_y), tol_rel)

        bws = [_column_bandwidth(xv[:, r], f"feature {r + 1}") for r in range(p)]

        if method is Method.KCCA:
            if isinstance(epsilon, str):
                if epsilon != "auto":
                    raise ArgumentError(f"epsilon must be 'auto' or a positive real, got {epsilon!r}")
                k_budget = gcv_subsample if gcv_subsample is not None else min(p, GCV_SUBSAMPLE_DEFAULT)
                if k_budget < 1:
                    raise ArgumentError(f"gcv_subsample must be >= 1, got {k_budget}")
                if k_budget < p:
                    rng = np.random.default_rng(seed)
                    tuning_idx = np.sort(rng.choice(p, size=k_budget, replace=False))
                else:
                    tuning_idx = np.arange(p)
                ky_raw = gram(yv, bw_y)
                kx_raw = [gram(xv[:, r], bws[r]) for r in tuning_idx]
                eps = select_epsilon(ky_raw, kx_raw, grid).epsilon
            else:
                eps = float(epsilon)
                if not np.isfinite(eps) or eps <= 0.0:
                    raise ArgumentError(f"epsilon must be positive, got {epsilon!r}")

            def score_one(r):
                gx = center_and_decompose(gram(xv[:, r], bws[r]), tol_rel)
                return kcca_singular_value(gx, gy, eps)

        else:  # HSIC

            def score_one(r):
                gx = center_and_decompose(gram(xv[:, r], bws[r]), tol_rel)
                return hsic_score(gx, gy).value

        scores = np.asarray(_map_indexed(score_one, p, threads), dtype=float)

    ranking = rank_by_score(scores)
    m = _resolve_m(rule, method, eps, n, p)
    return ScreeningResult(
        scores=scores,
        ranking=ranking,
        selected=ranking[:m].copy(),
        epsilon=eps,
        method=method,
        m=m,
    )
