"""Statistical reductions over replicate datasets.

Histograms, correlation, seat-vote slope and ratio-law exponent fits, swing
regression, and a one-sample Kolmogorov-Smirnov statistic for goodness of
fit against exact limiting CDFs.  Everything here is a pure deterministic
reduction with a fixed summation order, so results are reproducible across
runs and across parallel replicate production.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = [
    "ReplicateDataset",
    "SlopeFit",
    "SwingRecord",
    "histogram",
    "pearson",
    "central_slope_fit",
    "cube_exponent_fit",
    "swing_regression",
    "ks_statistic",
]


@dataclass
class ReplicateDataset:
    """Per-replicate election summaries for one experiment.

    One row per replicate: national (ball-weighted) vote shares and seat
    counts for every party, plus party 1's share in district 1 and in the
    north/south halves of the district list.  ``district_shares_p1`` offers
    the full per-district share vector when an experiment requests it.
    """

    replicate_ids: np.ndarray
    seeds: np.ndarray
    popular_shares: np.ndarray          # (R, m)
    seats: np.ndarray                   # (R, m) integer seat counts
    district1_shares: np.ndarray        # (R,) party 1 share in district 1
    north_shares: np.ndarray            # (R,) party 1 share in the north half
    south_shares: np.ndarray            # (R,) party 1 share in the south half
    district_shares_p1: np.ndarray | None = None  # optional (R, N)

    def __post_init__(self):
        if self.num_replicates < 1:
            raise ValueError("a dataset needs at least one replicate")
        for name in ("popular_shares", "district1_shares", "north_shares", "south_shares"):
            arr = getattr(self, name)
            if np.any(arr < 0.0) or np.any(arr > 1.0):
                raise ValueError(f"{name} must lie in [0, 1]")

    @property
    def num_replicates(self) -> int:
        return self.popular_shares.shape[0]

    @property
    def num_parties(self) -> int:
        return self.popular_shares.shape[1]

    @property
    def num_districts(self) -> int:
        return int(self.seats[0].sum())

    @property
    def popular_share_party1(self) -> np.ndarray:
        return self.popular_shares[:, 0]

    @property
    def seat_share_party1(self) -> np.ndarray:
        return self.seats[:, 0] / self.seats.sum(axis=1)


@dataclass(frozen=True)
class SlopeFit:
    """Ordinary least squares line fit."""

    slope: float
    intercept: float
    residual_rms: float
    points_used: int

    def __post_init__(self):
        if self.points_used < 2:
            raise ValueError("a line fit needs at least two points")


@dataclass(frozen=True)
class SwingRecord:
    """One replicate of the inter-election swing pipeline (tracked district)."""

    original_district_share: float
    local_swing: float
    national_swing: float

    def __post_init__(self):
        if not -1.0 <= self.local_swing <= 1.0 or not -1.0 <= self.national_swing <= 1.0:
            raise ValueError("swings must lie in [-1, 1]")


def histogram(values: Iterable[float], bin_edges: Sequence[float]) -> np.ndarray:
    """Bin counts over half-open bins [e_i, e_{i+1}), last bin closed.

    Out-of-range values are dropped; counts sum to the number of in-range
    values.  Empty input yields all-zero counts.
    """
    edges = np.asarray(bin_edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
        raise ValueError("bin edges must be strictly increasing with >= 2 entries")
    vals = np.asarray(list(values), dtype=float)
    counts, _ = np.histogram(vals, bins=edges)
    return counts


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Product-moment correlation; raises on degenerate input rather than NaN."""
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.shape != ya.shape or xa.ndim != 1:
        raise ValueError("x and y must be one-dimensional and the same length")
    if xa.size < 2:
        raise ValueError("correlation needs at least two points")
    xc = xa - xa.mean()
    yc = ya - ya.mean()
    sx = float(xc @ xc)
    sy = float(yc @ yc)
    if sx == 0.0 or sy == 0.0:
        raise ValueError("correlation undefined: zero variance input")
    r = float(xc @ yc) / np.sqrt(sx * sy)
    return float(min(1.0, max(-1.0, r)))


def _ols(x: np.ndarray, y: np.ndarray) -> SlopeFit:
    n = x.size
    if n < 2:
        raise ValueError("a line fit needs at least two points")
    xc = x - x.mean()
    sxx = float(xc @ xc)
    if sxx == 0.0:
        raise ValueError("degenerate fit: no variance in x")
    slope = float(xc @ (y - y.mean())) / sxx
    intercept = float(y.mean() - slope * x.mean())
    resid = y - (intercept + slope * x)
    return SlopeFit(slope, intercept, float(np.sqrt(np.mean(resid**2))), n)


def central_slope_fit(data: ReplicateDataset, window_halfwidth: float = 1.0) -> SlopeFit:
    """OLS of seat share on popular vote share near the 50% point.

    The default window (halfwidth 1) keeps every replicate, i.e. plain OLS
    over the whole cloud; a narrower window restricts to
    |popular share - 1/2| <= halfwidth for sensitivity checks of the slope
    at the 50-50 point.
    """
    x = data.popular_share_party1
    y = data.seat_share_party1
    mask = np.abs(x - 0.5) <= window_halfwidth
    if mask.sum() < 2:
        raise ValueError("fewer than two replicates inside the fit window")
    return _ols(x[mask], y[mask])


def _logit(v: np.ndarray) -> np.ndarray:
    return np.log(v / (1.0 - v))


def cube_exponent_fit(data: ReplicateDataset) -> float:
    """Ratio-law exponent k from origin-constrained logit-logit regression.

    Fits logit(seat share) = k * logit(vote share) by least squares through
    the origin.  Replicates with a seat or vote share of exactly 0 or 1
    (landslides) carry no logit information and are excluded.
    """
    x = data.popular_share_party1
    y = data.seat_share_party1
    mask = (x > 0.0) & (x < 1.0) & (y > 0.0) & (y < 1.0)
    if mask.sum() < 2:
        raise ValueError("fewer than two replicates strictly inside (0, 1)")
    lx = _logit(x[mask])
    ly = _logit(y[mask])
    denom = float(lx @ lx)
    if denom == 0.0:
        raise ValueError("degenerate fit: all vote shares exactly 1/2")
    return float(lx @ ly) / denom


def swing_regression(records: Sequence[SwingRecord]) -> SlopeFit:
    """OLS of (local - national) swing on the original district vote share.

    A slope near zero is the uniform-swing signature; a positive slope is
    the proportional-swing signature.
    """
    if len(records) < 2:
        raise ValueError("need at least two swing records")
    x = np.array([r.original_district_share for r in records])
    y = np.array([r.local_swing - r.national_swing for r in records])
    return _ols(x, y)


def ks_statistic(samples: Sequence[float], cdf: Callable[[float], float]) -> float:
    """One-sample Kolmogorov-Smirnov statistic against a reference CDF.

    D = max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n) over the order
    statistics x_(1) <= ... <= x_(n).
    """
    xs = np.sort(np.asarray(samples, dtype=float))
    n = xs.size
    if n < 1:
        raise ValueError("need at least one sample")
    f = np.array([cdf(float(v)) for v in xs])
    i = np.arange(1, n + 1, dtype=float)
    return float(max(np.max(i / n - f), np.max(f - (i - 1.0) / n)))
