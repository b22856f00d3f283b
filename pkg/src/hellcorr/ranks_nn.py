"""Pseudo-observations and exact nearest-neighbour distances.

Raw samples are reduced to their column ranks, giving points in the open unit
square; every later stage sees only those ranks. Nearest-neighbour distances
come from either a brute-force O(n^2) scan or a bucket-grid search; the two
agree bit-for-bit because the grid path evaluates the same float expression
on a candidate superset and the minimum over a superset containing the row
minimum is the row minimum.
"""

from dataclasses import dataclass

import numpy as np

from .errors import SizeError
from .rng import substream

# brute force is faster below this size and serves as the oracle above it
_GRID_MIN_N = 1024


def as_sample(x):
    """Validate and return an (n, 2) float array of observations."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise SizeError("expected an (n, 2) array of bivariate observations")
    if arr.shape[0] < 2:
        raise SizeError("need at least 2 observations")
    if not np.all(np.isfinite(arr)):
        raise SizeError("observations must be finite")
    return arr


@dataclass(frozen=True)
class PseudoObs:
    """Rank-transformed sample: points u = r/(n+1) and the integer ranks."""

    points: np.ndarray
    ranks: np.ndarray
    n: int
    tie_warning: bool


def pseudo_observations(sample, jitter_seed=None):
    """Column ranks scaled by 1/(n+1), in input order.

    Ties are ranked stably by input order and flagged via ``tie_warning``.
    Passing ``jitter_seed`` instead breaks ties by adding deterministic noise
    of magnitude 1e-10 times the column range before ranking, for data
    recorded at coarse precision.
    """
    arr = as_sample(sample)
    n = arr.shape[0]
    tie = any(np.unique(arr[:, j]).size < n for j in (0, 1))
    work = arr
    if jitter_seed is not None and tie:
        work = arr.copy()
        for j in (0, 1):
            spread = np.ptp(work[:, j]) or 1.0
            work[:, j] += substream(jitter_seed, "jitter", j).uniform(-1.0, 1.0, n) * 1e-10 * spread
    ranks = np.empty((n, 2), dtype=np.int64)
    for j in (0, 1):
        order = np.argsort(work[:, j], kind="stable")
        ranks[order, j] = np.arange(1, n + 1)
    return PseudoObs(points=ranks / (n + 1.0), ranks=ranks, n=n, tie_warning=tie)


@dataclass(frozen=True)
class NNDistances:
    """Distance from each point to its nearest other point."""

    values: np.ndarray

    @property
    def n(self):
        return self.values.shape[0]


@dataclass(frozen=True)
class TwoNearest:
    """First and second nearest-neighbour distances, plus the first's index.

    ``second[i]`` is the nearest-neighbour distance of point i once ``index[i]``
    is removed, which is all the leave-one-out bookkeeping the cross-validation
    criterion needs.
    """

    index: np.ndarray
    values: np.ndarray
    second: np.ndarray

    def nn(self):
        return NNDistances(self.values)


def _check_points(points):
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise SizeError("expected an (n, 2) array of points")
    if pts.shape[0] < 2:
        raise SizeError("need at least 2 points")
    return pts


def _two_nearest_brute(pts):
    n = pts.shape[0]
    dx = pts[:, 0:1] - pts[None, :, 0]
    dy = pts[:, 1:2] - pts[None, :, 1]
    d2 = dx * dx + dy * dy
    np.fill_diagonal(d2, np.inf)
    idx1 = np.argmin(d2, axis=1)
    rows = np.arange(n)
    b1 = d2[rows, idx1]
    d2[rows, idx1] = np.inf
    b2 = d2.min(axis=1) if n > 2 else np.full(n, np.inf)
    return idx1, b1, b2


def _grid_cells(pts, m):
    cells = np.zeros((pts.shape[0], 2), dtype=np.int64)
    spans = np.empty(2)
    lo = pts.min(axis=0)
    for j in (0, 1):
        width = pts[:, j].max() - lo[j]
        spans[j] = width / m if width > 0 else 1.0
        if width > 0:
            cells[:, j] = np.minimum(((pts[:, j] - lo[j]) / spans[j]).astype(np.int64), m - 1)
    return cells, spans


def _two_nearest_grid(pts):
    n = pts.shape[0]
    x, y = pts[:, 0], pts[:, 1]
    m = max(1, int(np.ceil(np.sqrt(n))))
    cells, spans = _grid_cells(pts, m)
    cell_id = cells[:, 0] * m + cells[:, 1]
    order = np.argsort(cell_id, kind="stable")
    counts = np.bincount(cell_id, minlength=m * m)
    starts = np.concatenate(([0], np.cumsum(counts)))

    rows_all, cand_all = [], []
    for ox in (-1, 0, 1):
        for oy in (-1, 0, 1):
            ncx = cells[:, 0] + ox
            ncy = cells[:, 1] + oy
            vi = np.flatnonzero((ncx >= 0) & (ncx < m) & (ncy >= 0) & (ncy < m))
            nc = ncx[vi] * m + ncy[vi]
            cnt = counts[nc]
            keep = cnt > 0
            vi, nc, cnt = vi[keep], nc[keep], cnt[keep]
            cum = np.concatenate(([0], np.cumsum(cnt)))
            local = np.arange(cum[-1]) - np.repeat(cum[:-1], cnt)
            rows_all.append(np.repeat(vi, cnt))
            cand_all.append(order[np.repeat(starts[nc], cnt) + local])
    rows = np.concatenate(rows_all)
    cand = np.concatenate(cand_all)
    keep = rows != cand
    rows, cand = rows[keep], cand[keep]
    dx = x[rows] - x[cand]
    dy = y[rows] - y[cand]
    d2 = dx * dx + dy * dy

    srt = np.lexsort((d2, rows))
    rows_s, cand_s, d2_s = rows[srt], cand[srt], d2[srt]
    first = np.concatenate(([True], rows_s[1:] != rows_s[:-1]))
    fpos = np.flatnonzero(first)
    got = rows_s[fpos]

    b1 = np.full(n, np.inf)
    b2 = np.full(n, np.inf)
    idx1 = np.zeros(n, dtype=np.int64)
    b1[got] = d2_s[fpos]
    idx1[got] = cand_s[fpos]
    # a second candidate exists when the next sorted entry is the same row
    spos = fpos + 1
    has2 = spos < rows_s.size
    has2[has2] = rows_s[spos[has2]] == got[has2]
    b2[got[has2]] = d2_s[spos[has2]]

    # beyond the 3x3 block every candidate is at least one cell side away
    bound = min(spans[0], spans[1])
    unsettled = np.flatnonzero(b2 > bound * bound)
    for i in unsettled:
        k = 2
        while True:
            x0, x1 = max(cells[i, 0] - k, 0), min(cells[i, 0] + k, m - 1)
            y0, y1 = max(cells[i, 1] - k, 0), min(cells[i, 1] + k, m - 1)
            block = []
            for cxx in range(x0, x1 + 1):
                base = cxx * m
                block.append(order[starts[base + y0]:starts[base + y1 + 1]])
            cj = np.concatenate(block)
            cj = cj[cj != i]
            if cj.size >= 2 or (cj.size == n - 1):
                dxi = x[i] - x[cj]
                dyi = y[i] - y[cj]
                d2i = dxi * dxi + dyi * dyi
                top = np.sort(np.partition(d2i, 1)[:2]) if d2i.size > 1 else np.array([d2i[0], np.inf])
                j1 = cj[np.argmin(d2i)]
                full_cover = x0 == 0 and y0 == 0 and x1 == m - 1 and y1 == m - 1
                if top[1] <= (k * bound) ** 2 or full_cover:
                    b1[i], b2[i] = top[0], top[1]
                    idx1[i] = j1
                    break
            elif x0 == 0 and y0 == 0 and x1 == m - 1 and y1 == m - 1:
                # n == 2: a single neighbour is all there is
                dxi = x[i] - x[cj]
                dyi = y[i] - y[cj]
                b1[i] = (dxi * dxi + dyi * dyi)[0]
                idx1[i] = cj[0]
                break
            k += 1
    return idx1, np.sqrt(b1), np.sqrt(b2)


def two_nearest_neighbors(points, method="auto"):
    """Exact first and second nearest-neighbour distances for 2-d points."""
    pts = _check_points(points)
    if method == "brute" or (method == "auto" and pts.shape[0] < _GRID_MIN_N):
        idx1, b1, b2 = _two_nearest_brute(pts)
        return TwoNearest(index=idx1, values=np.sqrt(b1), second=np.sqrt(b2))
    idx1, d1, d2 = _two_nearest_grid(pts)
    return TwoNearest(index=idx1, values=d1, second=d2)


def nn_distances_brute(points):
    """O(n^2) nearest-neighbour distances; the reference oracle."""
    pts = _check_points(points)
    _, b1, _ = _two_nearest_brute(pts)
    return NNDistances(np.sqrt(b1))


def nn_distances_grid(points):
    """Bucket-grid nearest-neighbour distances; equals the oracle exactly."""
    pts = _check_points(points)
    _, d1, _ = _two_nearest_grid(pts)
    return NNDistances(d1)


def nn_distances(points):
    """Exact nearest-neighbour distances, picking the faster path by size."""
    pts = _check_points(points)
    if pts.shape[0] < _GRID_MIN_N:
        return nn_distances_brute(pts)
    return nn_distances_grid(pts)


def loo_nn_distances(points, excluded):
    """Nearest-neighbour distances of the n-1 retained points when one point
    is removed, in original order."""
    pts = _check_points(points)
    n = pts.shape[0]
    if n < 3:
        raise SizeError("leave-one-out distances need at least 3 points")
    if not 0 <= excluded < n:
        raise SizeError(f"excluded index {excluded} out of range")
    keep = np.arange(n) != excluded
    return nn_distances(pts[keep])
