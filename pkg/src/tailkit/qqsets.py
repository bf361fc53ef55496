"""QQ point sets and the straight-line shapes they converge to.

The constructors pair theoretical quantiles with order statistics:

* qq_set: (F^{-1}(i/(n+1)), X_{i:n}) for i = 1..n.
* pareto_log_qq_set: (-log(1 - i/(n+1)), log X_{i:n}), the log-scale QQ set
  against standard exponential quantiles; linear with slope 1/alpha for a
  power-law tail.
* thresholded_qq_set: (-log(j/(n+1)), log X_(j)) over the top k descending
  order statistics, j = 1..k.
* centered_qq_set: (log(k/j), log(X_(j)/X_(k))), the thresholded set
  translated so that the j = k point sits at the origin.

PointSet stores points in construction order for deterministic
serialization, but every consumer treats it as an unordered multiset.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import dists
from .empirical import OrderedSample

__all__ = [
    "PointSet",
    "ShapeKind",
    "LimitShape",
    "segment",
    "ray",
    "qq_set",
    "pareto_log_qq_set",
    "thresholded_qq_set",
    "centered_qq_set",
    "translate",
    "limit_shape_for",
    "write_points_csv",
    "read_points_csv",
]


@dataclass(frozen=True)
class PointSet:
    """Finite multiset of points in the plane, stored as an (m, 2) array."""

    points: np.ndarray

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError(f"points must have shape (m, 2), got {pts.shape}")
        if pts.size and not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def x(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self.points[:, 1]

    @classmethod
    def from_xy(cls, x, y) -> "PointSet":
        return cls(np.column_stack([np.asarray(x, float), np.asarray(y, float)]))


class ShapeKind(enum.Enum):
    SEGMENT = "segment"
    RAY = "ray"


@dataclass(frozen=True)
class LimitShape:
    """A line segment or ray: points anchor + t*(1, slope).

    t ranges over [0, t_max] for a segment and [0, inf) for a ray
    (t_max is None).  Vertical shapes are not representable; none of the
    limit shapes here need them.
    """

    kind: ShapeKind
    slope: float
    anchor: tuple[float, float]
    t_max: float | None = None

    def __post_init__(self) -> None:
        ax, ay = float(self.anchor[0]), float(self.anchor[1])
        m = float(self.slope)
        if not (math.isfinite(ax) and math.isfinite(ay) and math.isfinite(m)):
            raise ValueError("anchor and slope must be finite")
        object.__setattr__(self, "anchor", (ax, ay))
        object.__setattr__(self, "slope", m)
        if self.kind is ShapeKind.SEGMENT:
            if self.t_max is None or not math.isfinite(float(self.t_max)) or float(self.t_max) < 0:
                raise ValueError("segment needs a finite t_max >= 0")
            object.__setattr__(self, "t_max", float(self.t_max))
        elif self.kind is ShapeKind.RAY:
            if self.t_max is not None:
                raise ValueError("ray must not set t_max")
        else:
            raise ValueError(f"unknown shape kind: {self.kind!r}")

    def point_at(self, t: float) -> tuple[float, float]:
        return (self.anchor[0] + t, self.anchor[1] + self.slope * t)

    def endpoints(self) -> tuple[tuple[float, float], tuple[float, float]]:
        if self.kind is not ShapeKind.SEGMENT:
            raise ValueError("only segments have two endpoints")
        return (self.point_at(0.0), self.point_at(self.t_max))


def segment(p0, p1) -> LimitShape:
    """Segment between two points; p1 must lie strictly to the right of p0."""
    x0, y0 = float(p0[0]), float(p0[1])
    x1, y1 = float(p1[0]), float(p1[1])
    if not x1 > x0:
        raise ValueError("segment endpoints need x1 > x0 (vertical segments unsupported)")
    return LimitShape(ShapeKind.SEGMENT, (y1 - y0) / (x1 - x0), (x0, y0), x1 - x0)


def ray(anchor, slope: float) -> LimitShape:
    return LimitShape(ShapeKind.RAY, float(slope), (float(anchor[0]), float(anchor[1])))


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def qq_set(s: OrderedSample, model: dists.DistributionModel) -> PointSet:
    """Theoretical-vs-empirical quantile pairs (F^{-1}(i/(n+1)), X_{i:n})."""
    p = np.arange(1, s.n + 1, dtype=float) / (s.n + 1.0)
    return PointSet.from_xy(dists._quantile_array(model, p), s.ascending)


def pareto_log_qq_set(s: OrderedSample) -> PointSet:
    """Log-scale QQ set (-log(1 - i/(n+1)), log X_{i:n}); needs positive data."""
    if s.ascending[0] <= 0.0:
        raise ValueError("log-scale QQ set needs strictly positive sample values")
    p = np.arange(1, s.n + 1, dtype=float) / (s.n + 1.0)
    return PointSet.from_xy(-np.log1p(-p), np.log(s.ascending))


def _top_k_descending(s: OrderedSample, k: int) -> np.ndarray:
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= s.n:
        raise ValueError(f"k={k!r} outside 1..{s.n}")
    top = s.ascending[s.n - int(k):]
    if top[0] <= 0.0:
        raise ValueError("top-k order statistics must be strictly positive")
    return top[::-1]  # X_(1) >= X_(2) >= ... >= X_(k)


def thresholded_qq_set(s: OrderedSample, k: int) -> PointSet:
    """Top-k set (-log(j/(n+1)), log X_(j)), j = 1..k."""
    desc = _top_k_descending(s, k)
    j = np.arange(1, int(k) + 1, dtype=float)
    return PointSet.from_xy(-np.log(j / (s.n + 1.0)), np.log(desc))


def centered_qq_set(s: OrderedSample, k: int) -> PointSet:
    """Centered top-k set (log(k/j), log(X_(j)/X_(k))); the j=k point is (0, 0)."""
    desc = _top_k_descending(s, k)
    j = np.arange(1, int(k) + 1, dtype=float)
    return PointSet.from_xy(np.log(float(k) / j), np.log(desc / desc[-1]))


def translate(ps: PointSet, v) -> PointSet:
    """Pointwise shift by the vector v."""
    shift = np.asarray(v, dtype=float).reshape(2)
    return PointSet(ps.points + shift)


# ---------------------------------------------------------------------------
# Limit shapes
# ---------------------------------------------------------------------------

def limit_shape_for(
    context: str,
    *,
    model: dists.DistributionModel | None = None,
    alpha: float | None = None,
    anchor: tuple[float, float] | None = None,
) -> LimitShape:
    """The straight-line limit matching a QQ construction.

    Contexts:
      'uniform'      diagonal segment (0,0)-(1,1)
      'exponential'  ray from the origin with slope 1
      'general'      slope-1 diagonal over the model's support (needs model)
      'pareto_logqq' ray from the origin with slope 1/alpha (needs alpha)
      'centered'     ray from the origin with slope 1/alpha (needs alpha)
      'thresholded'  ray with slope 1/alpha from the supplied anchor
    """
    name = context.strip().lower()
    if name == "uniform":
        return segment((0.0, 0.0), (1.0, 1.0))
    if name == "exponential":
        return ray((0.0, 0.0), 1.0)
    if name == "general":
        if model is None:
            raise ValueError("context 'general' needs a model")
        if model.kind is dists.Kind.UNIFORM01:
            return segment((0.0, 0.0), (1.0, 1.0))
        lo = model.support_left
        return ray((lo, lo), 1.0)
    if name in ("pareto_logqq", "centered"):
        if alpha is None:
            raise ValueError(f"context {name!r} needs alpha")
        return ray((0.0, 0.0), 1.0 / float(alpha))
    if name == "thresholded":
        if alpha is None or anchor is None:
            raise ValueError("context 'thresholded' needs alpha and an anchor")
        return ray(anchor, 1.0 / float(alpha))
    raise ValueError(f"unknown limit-shape context: {context!r}")


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def write_points_csv(ps: PointSet, path) -> None:
    """Write `x,y` rows at full double precision (17 significant digits)."""
    lines = ["x,y"]
    for px, py in ps.points:
        lines.append(f"{px:.17g},{py:.17g}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_points_csv(path) -> PointSet:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "x,y":
            raise ValueError(f"expected header 'x,y', got {header!r}")
        rows = [line for line in fh.read().splitlines() if line.strip()]
    if not rows:
        return PointSet(np.empty((0, 2)))
    data = np.loadtxt(rows, delimiter=",", dtype=float, ndmin=2)
    return PointSet(data)
