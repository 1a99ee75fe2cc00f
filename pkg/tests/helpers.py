"""Independent brute-force oracles used to check the production paths.

Everything here is written the slow, explicit way (loops, dense inverses,
full eigenproblems) on purpose: these implementations must not share code
with the library paths they validate.
"""

import numpy as np

import kscreen as ks


def random_gram(rng, n, d=1, scale=1.0):
    """A centered-and-decomposed Gaussian Gram from random data."""
    pts = scale * rng.standard_normal((n, d))
    return ks.center_and_decompose(ks.gram(pts, ks.bandwidth(pts)))


def kcca_dense_oracle(gx, gy, eps):
    """sqrt of the top eigenvalue of the dense product S_X S_Y."""

    def smoother(g):
        r = g.rank
        u = g.u[:, :r]
        d = g.d[:r]
        return u @ np.diag(d / (d + eps)) @ u.T

    prod = smoother(gx) @ smoother(gy)
    lam = np.max(np.real(np.linalg.eigvals(prod)))
    return float(np.sqrt(max(lam, 0.0)))


def hsic_double_sum(gx, gy):
    """Explicit double sum over matrix entries."""
    n = gx.n
    total = 0.0
    for i in range(n):
        for j in range(n):
            total += gx.g[i, j] * gy.g[i, j]
    return total / (n * n)


def dcor_brute(xs, ys):
    """Loop-based doubly-centered distance correlation."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.ndim == 1:
        xs = xs[:, None]
    if ys.ndim == 1:
        ys = ys[:, None]
    n = xs.shape[0]

    def centered_distances(pts):
        d = np.zeros((n, n))
        for i in range(n):
            for j in range(n):
                d[i, j] = np.sqrt(np.sum((pts[i] - pts[j]) ** 2))
        c = np.zeros((n, n))
        grand = d.mean()
        for i in range(n):
            for j in range(n):
                c[i, j] = d[i, j] - d[i, :].mean() - d[:, j].mean() + grand
        return c

    a = centered_distances(xs)
    b = centered_distances(ys)
    dcov2 = float((a * b).sum()) / n ** 2
    dvx = float((a * a).sum()) / n ** 2
    dvy = float((b * b).sum()) / n ** 2
    if dvx <= 0 or dvy <= 0:
        return 0.0
    return float(np.sqrt(max(dcov2, 0.0) / np.sqrt(dvx * dvy)))


def gcv_dense_oracle(eps, ky, kxs):
    """Eq-faithful assembly with explicit (n+1)-sized matrix inverses."""
    ky = np.asarray(ky, dtype=float)
    n = ky.shape[0]
    ly = np.vstack([np.ones((1, n)), ky])
    total = 0.0
    for kx in kxs:
        lr = np.vstack([np.ones((1, n)), np.asarray(kx, dtype=float)])
        inv = np.linalg.inv(lr @ lr.T + eps * np.eye(n + 1))
        h = lr.T @ inv @ lr
        num = np.linalg.norm(ly - ly @ h, "fro") ** 2
        den = (1.0 - np.trace(h) / n) ** 2
        total += num / den
    return total


def min_size_prefix_scan(ranking, active):
    """Smallest prefix of the ranking containing every active feature."""
    active = set(active)
    seen = set()
    for k, feature in enumerate(ranking, start=1):
        seen.add(int(feature))
        if active <= seen:
            return k
    raise AssertionError("active set not covered by ranking")
