"""Tail-index estimators and diagnostics built on QQ point sets.

Everything here targets 1/alpha: the least-squares slope of the centered
log-scale QQ set and the Hill estimator (1/k) sum log(X_(i)/X_(k)).  The
module also exposes the deterministic design moments of the log(k/j)
abscissae, moments restricted to a comparison window, the empirical tail
measure, and the concentration ratio that diagnoses when a vanishing
cluster of points is about to hijack a least-squares fit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import qqsets
from .empirical import OrderedSample
from .qqsets import PointSet
from .setmetrics import WindowMissError, window_km

__all__ = [
    "EstimatorReport",
    "WindowedMoments",
    "ls_slope",
    "qq_slope_estimator",
    "hill_estimator",
    "design_moments",
    "concentration_ratio",
    "tail_measure",
    "windowed_moments",
    "estimator_report",
]

# fsum is exact but walks the array in Python; beyond this size the
# two-pass numpy dot (pairwise summation) is accurate enough and fast.
_FSUM_MAX = 200_000


def _mean(values: np.ndarray) -> float:
    if values.size <= _FSUM_MAX:
        return math.fsum(values) / values.size
    return float(np.mean(values))


@dataclass(frozen=True)
class EstimatorReport:
    """Point estimates and diagnostics for one (sample, k) pair."""

    n: int
    k: int
    ls_slope: float
    hill: float
    sbar_x: float
    sbar_xx: float
    sbar_y: float
    sbar_xy: float
    concentration: float | None = None
    window_m: float | None = None
    k_m: int | None = None

    def __post_init__(self) -> None:
        if self.k > self.n:
            raise ValueError(f"k={self.k} exceeds n={self.n}")
        if self.hill < -1e-12:
            raise ValueError(f"hill estimate must be nonnegative, got {self.hill}")
        if self.sbar_xx < self.sbar_x**2 - 1e-9:
            raise ValueError("design second moment below squared mean")


class WindowedMoments(NamedTuple):
    k_m: int
    sbar_x: float
    sbar_xx: float
    sbar_y: float
    sbar_xy: float


def ls_slope(ps: PointSet) -> float:
    """Ordinary least-squares slope of y on x over the point set.

    Two-pass centered sums; exact (fsum) accumulation up to 2e5 points,
    numpy pairwise summation beyond.  Fewer than two points or a design
    with all x equal is a degenerate-design error, never 0 or NaN.
    """
    m = len(ps)
    if m < 2:
        raise ValueError("degenerate design: need at least two points")
    x = ps.x
    y = ps.y
    if np.ptp(x) == 0.0:
        raise ValueError("degenerate design: all x equal")
    xm = _mean(x)
    ym = _mean(y)
    dx = x - xm
    dy = y - ym
    if m <= _FSUM_MAX:
        sxx = math.fsum(dx * dx)
        sxy = math.fsum(dx * dy)
    else:
        sxx = float(np.dot(dx, dx))
        sxy = float(np.dot(dx, dy))
    return sxy / sxx


def qq_slope_estimator(s: OrderedSample, k: int) -> float:
    """LS slope of the centered top-k QQ set; estimates 1/alpha."""
    return ls_slope(qqsets.centered_qq_set(s, k))


def hill_estimator(s: OrderedSample, k: int) -> float:
    """(1/k) sum_{i<=k} log(X_(i)/X_(k)), computed as mean(log top) - log X_(k)."""
    _check_k(s, k)
    top = s.ascending[s.n - k:]
    if top[0] <= 0.0:
        raise ValueError("hill estimator needs a positive threshold order statistic")
    return float(np.mean(np.log(top))) - math.log(float(top[0]))


def _check_k(s: OrderedSample, k: int) -> None:
    if not isinstance(k, (int, np.integer)) or not 2 <= k <= s.n:
        raise ValueError(f"k={k!r} outside 2..{s.n}")


def design_moments(k: int) -> tuple[float, float]:
    """Exact finite averages of log(k/j) and its square over j = 1..k.

    Deterministic, data independent; tends to (1, 2) as k grows.
    """
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError(f"k={k!r} must be a positive integer")
    j = np.arange(1, int(k) + 1, dtype=float)
    x = np.log(float(k) / j)
    return math.fsum(x) / k, math.fsum(x * x) / k


def concentration_ratio(ps: PointSet, center=None, delta: float = 0.25) -> float:
    """Fraction of points in the open square of half-width delta at center.

    center=None uses the set's own mean.  Open intervals: boundary points
    do not count.  Monotone nondecreasing in delta.
    """
    if not delta > 0.0:
        raise ValueError("delta must be positive")
    if len(ps) == 0:
        raise ValueError("concentration ratio needs a nonempty set")
    if center is None:
        cx, cy = _mean(ps.x), _mean(ps.y)
    else:
        cx, cy = float(center[0]), float(center[1])
    inside = (np.abs(ps.x - cx) < delta) & (np.abs(ps.y - cy) < delta)
    return float(np.count_nonzero(inside)) / len(ps)


def tail_measure(s: OrderedSample, k: int, y: float) -> float:
    """(1/k) #{i <= n : X_(i)/X_(k) > y}, the empirical tail mass beyond y.

    Mass 1/k per exceedance over the whole sample, so values above 1 are
    possible for y < 1.  Estimates y**(-alpha) for power-law tails.
    """
    _check_k(s, k)
    if not y > 0.0:
        raise ValueError("y must be positive")
    xk = float(s.ascending[s.n - k])
    if xk <= 0.0:
        raise ValueError("tail measure needs a positive threshold order statistic")
    return float(np.count_nonzero(s.ascending > y * xk)) / k


def windowed_moments(
    s: OrderedSample, k: int, m: float, alpha_hint: float
) -> WindowedMoments:
    """Counts and averages of the centered QQ set inside [0,M] x [0,2M/alpha].

    alpha_hint sets the window height; pass the known simulation alpha (a
    plug-in estimate is a harness-level choice, not made here).  Raises
    WindowMissError if nothing falls inside the window.
    """
    ps = qqsets.centered_qq_set(s, k)
    w = window_km(m, alpha_hint)
    mask = w.contains(ps.points)
    k_m = int(np.count_nonzero(mask))
    if k_m == 0:
        raise WindowMissError(f"no centered QQ points inside [0,{m}] x [0,{w.y_hi}]")
    x = ps.x[mask]
    y = ps.y[mask]
    return WindowedMoments(
        k_m,
        math.fsum(x) / k_m,
        math.fsum(x * x) / k_m,
        math.fsum(y) / k_m,
        math.fsum(x * y) / k_m,
    )


def estimator_report(
    s: OrderedSample,
    k: int,
    *,
    m: float | None = None,
    alpha_hint: float | None = None,
    delta: float | None = None,
    center=None,
) -> EstimatorReport:
    """Assemble the standard report for one sample and threshold count."""
    ps = qqsets.centered_qq_set(s, k)
    sbar_x, sbar_xx = design_moments(k)
    sbar_y = math.fsum(ps.y) / k
    sbar_xy = math.fsum(ps.x * ps.y) / k
    concentration = None
    if delta is not None:
        concentration = concentration_ratio(ps, center, delta)
    k_m = None
    if m is not None:
        if alpha_hint is None:
            raise ValueError("windowed moments need alpha_hint")
        k_m = windowed_moments(s, k, m, alpha_hint).k_m
    return EstimatorReport(
        n=s.n,
        k=int(k),
        ls_slope=ls_slope(ps),
        hill=hill_estimator(s, k),
        sbar_x=sbar_x,
        sbar_xx=sbar_xx,
        sbar_y=sbar_y,
        sbar_xy=sbar_xy,
        concentration=concentration,
        window_m=m,
        k_m=k_m,
    )
