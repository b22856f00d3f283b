"""Cross-validated choice of the basis truncation cutoffs.

The score for a cutoff pair (K, L) is an unbiased risk estimate
A2(K, L) - 2 B(K, L): A2 is the squared norm of the fitted coefficient
table and B estimates the cross term through leave-one-out coefficients,
which reduce to closed form via first and second nearest-neighbour
distances (removing point i changes the distance of i' only when i was
its nearest neighbour, where it becomes the second-nearest distance).

Every per-cell quantity is a plain dot product of identically built
factor columns and every block total is an exactly rounded sum, so the
per-pair scorer, the grid selector, and the coordinate-swapped problem
all agree bit for bit.
"""

import math
from dataclasses import dataclass

import numpy as np

from .basis import design_matrix
from .errors import ConfigError, SizeError


@dataclass(frozen=True)
class CvResult:
    """Selected cutoff pair and the full score grid that produced it."""

    best: tuple
    scores: np.ndarray


def _cell_tables(points, nn, kmax, lmax, weights):
    """Per-cell squared coefficients and cross-term entries."""
    n = points.shape[0]
    w = np.ones(n) if weights is None else np.asarray(weights, dtype=float)
    rw = nn.values * w
    rw2 = rw * rw
    a = nn.index
    g = (nn.second - nn.values) * w * rw[a]
    P = design_matrix(points[:, 0], kmax)
    Q = design_matrix(points[:, 1], lmax)
    Pa = P[a]
    Qa = Q[a]
    cn = 2.0 * math.sqrt(n - 1.0) / n
    cn1 = 2.0 * math.sqrt(n - 2.0) / (n - 1.0)
    beta2 = np.empty((kmax + 1, lmax + 1))
    cross = np.empty((kmax + 1, lmax + 1))
    for k in range(kmax + 1):
        pk = P[:, k]
        pka = pk * Pa[:, k]
        for l in range(lmax + 1):
            c = pk * Q[:, l]
            tf = float(np.dot(rw, c))
            t2 = float(np.dot(rw2, c * c))
            t3 = float(np.dot(g, pka * (Q[:, l] * Qa[:, l])))
            b = cn * tf
            beta2[k, l] = b * b
            cross[k, l] = cn * cn1 * (tf * tf - t2 + t3)
    return beta2, cross


def _block_score(beta2, cross, K, L):
    a2 = math.fsum(beta2[: K + 1, : L + 1].ravel())
    bv = math.fsum(cross[: K + 1, : L + 1].ravel())
    return a2 - 2.0 * bv


def _check_args(pseudo, kmax, lmax):
    if kmax < 0 or lmax < 0:
        raise ConfigError("cutoff bounds must be non-negative")
    if pseudo.n < 3:
        raise SizeError("cross-validation needs at least 3 observations")


def cv_score(pseudo, nn, K, L, weights=None):
    """Risk estimate for one cutoff pair."""
    _check_args(pseudo, K, L)
    beta2, cross = _cell_tables(pseudo.points, nn, K, L, weights)
    return _block_score(beta2, cross, K, L)


def admissible(K, L, kmax, lmax):
    """Whether a cutoff pair may be selected by cross-validation.

    Pairs with K + L < 2 are excluded (when the grid extends that far):
    at (0, 0) the normalized statistic degenerates to zero identically,
    and a single extra coefficient yields an unstable one-term ratio, so
    admitting them collapses the estimate on independent data.
    """
    return K + L >= min(2, kmax + lmax)


def select_cutoffs(pseudo, nn, kmax=5, lmax=5, weights=None):
    """Scan the cutoff grid and pick the admissible minimiser.

    The full score grid is computed for every pair up to (kmax, lmax);
    ties prefer the smaller K + L, then the smaller K.
    """
    _check_args(pseudo, kmax, lmax)
    beta2, cross = _cell_tables(pseudo.points, nn, kmax, lmax, weights)
    scores = np.empty((kmax + 1, lmax + 1))
    for K in range(kmax + 1):
        for L in range(lmax + 1):
            scores[K, L] = _block_score(beta2, cross, K, L)
    best = None
    best_score = math.inf
    for s in range(kmax + lmax + 1):
        for K in range(min(s, kmax) + 1):
            L = s - K
            if L > lmax or not admissible(K, L, kmax, lmax):
                continue
            if scores[K, L] < best_score:
                best = (K, L)
                best_score = scores[K, L]
    return CvResult(best=best, scores=scores)
