"""Hausdorff distance between point sets and truncated limit shapes.

The distance is D(A, B) = max(sup_{a in A} d(a, B), sup_{b in B} d(b, A))
with the Euclidean ground metric.  Operands are finite point sets or
segments (rays must be clipped to a window first, which keeps every
comparison compact).  Point-to-segment distances are exact (clamped
projection).  The segment-to-point-set direction discretizes the segment
with spacing at most 1e-4 of its length, so that direction carries an
error of at most spacing/2; the point-set-to-segment direction is exact.

Windows are closed axis-aligned rectangles.  Truncating a point set by a
window may legitimately produce an empty set; experiments must record
that as a window miss rather than substituting 0 or infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .qqsets import LimitShape, PointSet, ShapeKind

__all__ = [
    "Window",
    "window_km",
    "WindowMissError",
    "truncate",
    "clip_shape",
    "hausdorff",
    "swelling_contains",
]

# Relative spacing of segment sample points in the discretized direction.
SEGMENT_SPACING_REL = 1.0e-4


class WindowMissError(ValueError):
    """A truncation left nothing inside the window."""


@dataclass(frozen=True)
class Window:
    """Closed rectangle [x_lo, x_hi] x [y_lo, y_hi]."""

    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    def __post_init__(self) -> None:
        vals = (self.x_lo, self.x_hi, self.y_lo, self.y_hi)
        if not all(math.isfinite(float(v)) for v in vals):
            raise ValueError("window bounds must be finite")
        if self.x_lo > self.x_hi or self.y_lo > self.y_hi:
            raise ValueError(f"window bounds out of order: {vals}")
        for name in ("x_lo", "x_hi", "y_lo", "y_hi"):
            object.__setattr__(self, name, float(getattr(self, name)))

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Boolean mask of rows inside the closed rectangle."""
        x, y = points[:, 0], points[:, 1]
        return (x >= self.x_lo) & (x <= self.x_hi) & (y >= self.y_lo) & (y <= self.y_hi)


def window_km(m: float, alpha: float) -> Window:
    """The standard comparison window [0, M] x [0, 2M/alpha]."""
    m = float(m)
    alpha = float(alpha)
    if m <= 0 or alpha <= 0:
        raise ValueError("window_km needs M > 0 and alpha > 0")
    return Window(0.0, m, 0.0, 2.0 * m / alpha)


def truncate(ps: PointSet, w: Window) -> PointSet:
    """Points of ps inside the closed window; possibly empty."""
    return PointSet(ps.points[w.contains(ps.points)])


def clip_shape(shape: LimitShape, w: Window) -> LimitShape | None:
    """Intersect a segment or ray with a window.

    Returns the intersection as a segment (possibly degenerate, a single
    point) or None when the shape misses the window.
    """
    ax, ay = shape.anchor
    m = shape.slope
    t_lo, t_hi = 0.0, math.inf if shape.t_max is None else shape.t_max
    # x constraint
    t_lo = max(t_lo, w.x_lo - ax)
    t_hi = min(t_hi, w.x_hi - ax)
    # y constraint
    if m > 0.0:
        t_lo = max(t_lo, (w.y_lo - ay) / m)
        t_hi = min(t_hi, (w.y_hi - ay) / m)
    elif m < 0.0:
        t_lo = max(t_lo, (w.y_hi - ay) / m)
        t_hi = min(t_hi, (w.y_lo - ay) / m)
    else:
        if not w.y_lo <= ay <= w.y_hi:
            return None
    if t_hi < t_lo:
        return None
    x0, y0 = shape.point_at(t_lo)
    return LimitShape(ShapeKind.SEGMENT, m, (x0, y0), t_hi - t_lo)


# ---------------------------------------------------------------------------
# Directed distances
# ---------------------------------------------------------------------------

def _require_points(ps: PointSet, side: str) -> np.ndarray:
    if len(ps) == 0:
        raise ValueError(f"hausdorff needs a nonempty {side} operand")
    return ps.points


def _distances_to_shape(points: np.ndarray, shape: LimitShape) -> np.ndarray:
    """Exact Euclidean distance from each point to a segment or ray."""
    ax, ay = shape.anchor
    m = shape.slope
    d2 = 1.0 + m * m
    t = ((points[:, 0] - ax) + m * (points[:, 1] - ay)) / d2
    t = np.maximum(t, 0.0)
    if shape.t_max is not None:
        t = np.minimum(t, shape.t_max)
    dx = points[:, 0] - (ax + t)
    dy = points[:, 1] - (ay + m * t)
    return np.hypot(dx, dy)


def _segment_samples(shape: LimitShape) -> np.ndarray:
    """Uniform samples along a segment with relative spacing <= 1e-4."""
    if shape.kind is not ShapeKind.SEGMENT:
        raise ValueError("can only sample a segment")
    if shape.t_max == 0.0:
        return np.asarray([[shape.anchor[0], shape.anchor[1]]], dtype=float)
    steps = int(math.ceil(1.0 / SEGMENT_SPACING_REL))
    t = np.linspace(0.0, shape.t_max, steps + 1)
    ax, ay = shape.anchor
    return np.column_stack([ax + t, ay + shape.slope * t])


def _directed_points_to_points(src: np.ndarray, dst: np.ndarray) -> float:
    dist, _ = cKDTree(dst).query(src, k=1)
    return float(np.max(dist))


def hausdorff(a, b) -> float:
    """Hausdorff distance between point sets and/or segments.

    Each operand is a nonempty PointSet or a segment LimitShape.  Rays are
    rejected: clip them to a window first.  Two segments are out of scope.
    """
    for op in (a, b):
        if isinstance(op, LimitShape) and op.kind is ShapeKind.RAY:
            raise ValueError("clip rays to a window before computing distances")
    if isinstance(a, LimitShape) and isinstance(b, LimitShape):
        raise ValueError("segment-to-segment distance is not supported")
    if isinstance(a, PointSet) and isinstance(b, PointSet):
        pa = _require_points(a, "left")
        pb = _require_points(b, "right")
        return max(
            _directed_points_to_points(pa, pb),
            _directed_points_to_points(pb, pa),
        )
    # one point set, one segment
    if isinstance(a, LimitShape):
        seg, ps = a, b
    else:
        seg, ps = b, a
    pts = _require_points(ps, "point-set")
    d_points = float(np.max(_distances_to_shape(pts, seg)))  # exact direction
    samples = _segment_samples(seg)
    d_segment = _directed_points_to_points(samples, pts)  # error <= spacing/2
    return max(d_points, d_segment)


def swelling_contains(cover, target: PointSet, delta: float) -> bool:
    """True iff every target point lies strictly within delta of cover.

    The delta-swelling is the open delta-neighborhood, so the comparison
    is strict.  cover may be a PointSet, a segment, or a ray (the exact
    clamped-projection distance works for all three).
    """
    if not delta > 0.0:
        raise ValueError("delta must be positive")
    pts = _require_points(target, "target")
    if isinstance(cover, LimitShape):
        dist = _distances_to_shape(pts, cover)
    else:
        cpts = _require_points(cover, "cover")
        dist, _ = cKDTree(cpts).query(pts, k=1)
    return bool(np.all(dist < delta))
