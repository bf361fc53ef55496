"""Windows, clipping, Hausdorff distances, swellings."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import tailkit as tk
from tailkit.qqsets import ShapeKind


def random_point_set(rng, lo=3, hi=40):
    m = rng.integers(lo, hi + 1)
    return tk.PointSet(rng.uniform(-5.0, 5.0, size=(m, 2)))


# ---------------------------------------------------------------------------
# windows
# ---------------------------------------------------------------------------

def test_window_basics():
    w = tk.Window(0.0, 2.0, -1.0, 1.0)
    pts = np.array([[0.0, -1.0], [2.0, 1.0], [1.0, 0.0], [2.0001, 0.0], [1.0, -1.0001]])
    mask = w.contains(pts)
    assert list(mask) == [True, True, True, False, False]  # boundary is inside
    with pytest.raises(ValueError):
        tk.Window(1.0, 0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        tk.Window(0.0, float("inf"), 0.0, 1.0)


def test_window_km():
    w = tk.window_km(3.0, 2.0)
    assert (w.x_lo, w.x_hi, w.y_lo, w.y_hi) == (0.0, 3.0, 0.0, 3.0)
    w = tk.window_km(2.0, 0.5)
    assert w.y_hi == 8.0
    with pytest.raises(ValueError):
        tk.window_km(0.0, 1.0)
    with pytest.raises(ValueError):
        tk.window_km(1.0, -1.0)


def test_truncate_keeps_boundary_and_may_empty():
    ps = tk.PointSet.from_xy([0.0, 1.0, 2.0], [0.0, 1.0, 2.0])
    w = tk.Window(0.0, 1.0, 0.0, 1.0)
    tr = tk.truncate(ps, w)
    assert len(tr) == 2
    empty = tk.truncate(ps, tk.Window(5.0, 6.0, 5.0, 6.0))
    assert len(empty) == 0


# ---------------------------------------------------------------------------
# clipping
# ---------------------------------------------------------------------------

def test_clip_diagonal_ray_to_unit_window():
    c = tk.clip_shape(tk.ray((0.0, 0.0), 1.0), tk.Window(0.0, 1.0, 0.0, 1.0))
    assert c.kind is ShapeKind.SEGMENT
    assert c.endpoints() == ((0.0, 0.0), (1.0, 1.0))


def test_clip_segment_partially_outside():
    # slope 1/2 segment leaves the unit window at x = 1
    c = tk.clip_shape(tk.segment((0.0, 0.0), (2.0, 1.0)), tk.Window(0.0, 1.0, 0.0, 1.0))
    assert c.endpoints() == ((0.0, 0.0), (1.0, 0.5))


def test_clip_steep_ray_exits_through_top():
    c = tk.clip_shape(tk.ray((0.0, 0.0), 4.0), tk.Window(0.0, 1.0, 0.0, 1.0))
    (x0, y0), (x1, y1) = c.endpoints()
    assert (x0, y0) == (0.0, 0.0)
    assert math.isclose(x1, 0.25, rel_tol=1e-15) and math.isclose(y1, 1.0, rel_tol=1e-15)


def test_clip_miss_returns_none():
    assert tk.clip_shape(tk.ray((2.0, 0.0), 1.0), tk.Window(0.0, 1.0, 0.0, 1.0)) is None
    assert tk.clip_shape(tk.ray((0.0, 2.0), 1.0), tk.Window(0.0, 1.0, 0.0, 1.0)) is None
    # horizontal ray below the window
    assert tk.clip_shape(tk.ray((0.0, -1.0), 0.0), tk.Window(0.0, 1.0, 0.0, 1.0)) is None


def test_clip_horizontal_inside():
    c = tk.clip_shape(tk.ray((-1.0, 0.5), 0.0), tk.Window(0.0, 1.0, 0.0, 1.0))
    assert c.endpoints() == ((0.0, 0.5), (1.0, 0.5))


def test_clip_negative_slope():
    c = tk.clip_shape(tk.ray((0.0, 1.0), -1.0), tk.Window(0.0, 1.0, 0.0, 1.0))
    assert c.endpoints() == ((0.0, 1.0), (1.0, 0.0))
    # this one only grazes the top-right corner
    c2 = tk.clip_shape(tk.ray((0.0, 2.0), -1.0), tk.Window(0.0, 1.0, 0.0, 1.0))
    assert c2.t_max == 0.0 and c2.endpoints() == ((1.0, 1.0), (1.0, 1.0))


def test_clip_can_degenerate_to_point():
    c = tk.clip_shape(tk.ray((1.0, 1.0), 1.0), tk.Window(0.0, 1.0, 0.0, 1.0))
    assert c.kind is ShapeKind.SEGMENT and c.t_max == 0.0
    assert c.endpoints() == ((1.0, 1.0), (1.0, 1.0))
    # distance to a degenerate segment is a point distance
    d = tk.hausdorff(tk.PointSet.from_xy([0.0], [1.0]), c)
    assert math.isclose(d, 1.0, rel_tol=1e-12)


# ---------------------------------------------------------------------------
# hausdorff
# ---------------------------------------------------------------------------

def test_hausdorff_identical_sets_is_zero():
    ps = tk.PointSet.from_xy([0.0, 1.0, 2.0], [0.0, -1.0, 4.0])
    assert tk.hausdorff(ps, ps) == 0.0


def test_hausdorff_two_singletons():
    a = tk.PointSet.from_xy([0.0], [0.0])
    b = tk.PointSet.from_xy([3.0], [4.0])
    assert tk.hausdorff(a, b) == 5.0
    assert tk.hausdorff(b, a) == 5.0


def test_hausdorff_point_set_vs_segment():
    # the two sample points are the diagonal's endpoints, so the exact
    # direction is 0 and the midpoint gap sqrt(2)/2 comes entirely from
    # the discretized segment-to-points direction
    ps = tk.PointSet.from_xy([0.0, 1.0], [0.0, 1.0])
    seg = tk.segment((0.0, 0.0), (1.0, 1.0))
    d = tk.hausdorff(ps, seg)
    assert abs(d - math.sqrt(2.0) / 2.0) <= 1e-4
    assert tk.hausdorff(seg, ps) == d


def test_hausdorff_point_set_vs_antidiagonal():
    # here the far endpoints dominate instead: each segment endpoint is
    # exactly 1 away from the nearest sample point
    ps = tk.PointSet.from_xy([0.0, 1.0], [0.0, 1.0])
    seg = tk.segment((0.0, 1.0), (1.0, 0.0))
    assert abs(tk.hausdorff(ps, seg) - 1.0) <= 1e-8


def test_hausdorff_exact_direction_dominates():
    # one far point: the exact point-to-segment direction carries the max,
    # so the result has no discretization error at all
    ps = tk.PointSet.from_xy([0.0, 0.5, 1.0, 0.5], [0.0, 0.0, 0.0, 2.0])
    seg = tk.segment((0.0, 0.0), (1.0, 0.0))
    assert tk.hausdorff(ps, seg) == 2.0


def test_hausdorff_rejects_rays_and_segment_pairs():
    ps = tk.PointSet.from_xy([0.0], [0.0])
    with pytest.raises(ValueError):
        tk.hausdorff(ps, tk.ray((0.0, 0.0), 1.0))
    with pytest.raises(ValueError):
        tk.hausdorff(tk.segment((0, 0), (1, 0)), tk.segment((0, 0), (1, 1)))


def test_hausdorff_rejects_empty():
    empty = tk.PointSet(np.empty((0, 2)))
    ps = tk.PointSet.from_xy([0.0], [0.0])
    with pytest.raises(ValueError):
        tk.hausdorff(empty, ps)
    with pytest.raises(ValueError):
        tk.hausdorff(ps, empty)
    with pytest.raises(ValueError):
        tk.hausdorff(empty, tk.segment((0, 0), (1, 0)))


def test_hausdorff_metric_axioms_sampled():
    rng = np.random.default_rng(2026)
    for _ in range(200):
        a, b, c = (random_point_set(rng) for _ in range(3))
        dab = tk.hausdorff(a, b)
        dba = tk.hausdorff(b, a)
        assert dab == dba
        assert dab >= 0.0
        assert tk.hausdorff(a, a) == 0.0
        assert tk.hausdorff(a, c) <= dab + tk.hausdorff(b, c) + 1e-12


@given(
    st.floats(min_value=-50, max_value=50),
    st.floats(min_value=-50, max_value=50),
    st.integers(min_value=0, max_value=2**31 - 1),
)
@settings(max_examples=100, deadline=None)
def test_hausdorff_translation_invariant(vx, vy, seed):
    rng = np.random.default_rng(seed)
    a = random_point_set(rng)
    b = random_point_set(rng)
    d0 = tk.hausdorff(a, b)
    d1 = tk.hausdorff(tk.translate(a, (vx, vy)), tk.translate(b, (vx, vy)))
    assert abs(d0 - d1) <= 1e-10 * max(1.0, d0)


# ---------------------------------------------------------------------------
# swellings
# ---------------------------------------------------------------------------

def test_swelling_is_strictly_open():
    cover = tk.PointSet.from_xy([0.0], [0.0])
    target = tk.PointSet.from_xy([1.0], [0.0])
    assert not tk.swelling_contains(cover, target, 1.0)
    assert tk.swelling_contains(cover, target, 1.0 + 1e-9)
    with pytest.raises(ValueError):
        tk.swelling_contains(cover, target, 0.0)


def test_swelling_consistent_with_hausdorff():
    rng = np.random.default_rng(7)
    for _ in range(50):
        a = random_point_set(rng)
        b = random_point_set(rng)
        d = tk.hausdorff(a, b)
        eps = 1e-9 * max(1.0, d)
        assert tk.swelling_contains(a, b, d + eps)
        assert tk.swelling_contains(b, a, d + eps)
        if d > 0:
            both = tk.swelling_contains(a, b, d - eps) and tk.swelling_contains(b, a, d - eps)
            assert not both


def test_swelling_accepts_segment_and_ray_cover():
    diag = np.linspace(0.0, 100.0, 17)
    target = tk.PointSet.from_xy(diag, diag)
    assert tk.swelling_contains(tk.ray((0.0, 0.0), 1.0), target, 1e-9)
    # a segment cover clamps at its end, so far points fall outside
    seg = tk.segment((0.0, 0.0), (1.0, 1.0))
    assert not tk.swelling_contains(seg, target, 1.0)
    assert tk.swelling_contains(seg, tk.PointSet.from_xy([0.5], [0.5]), 1e-12)


def test_swelling_rejects_empty_operands():
    empty = tk.PointSet(np.empty((0, 2)))
    ps = tk.PointSet.from_xy([0.0], [0.0])
    with pytest.raises(ValueError):
        tk.swelling_contains(ps, empty, 1.0)
    with pytest.raises(ValueError):
        tk.swelling_contains(empty, ps, 1.0)
