"""The exact point-set family whose LS slope escapes to 1."""

import math
from fractions import Fraction

import numpy as np
import pytest

import tailkit as tk


def test_n1_enumeration():
    inst = tk.build_example(1)
    assert inst.k_n == 6 and len(inst.set) == 6
    got = {tuple(p) for p in inst.set.points}
    want = {(-1.0, 0.0), (0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (1.5, 1.5), (2.0, 2.0)}
    assert got == want
    assert inst.mean == (0.75, 0.75)


def test_cardinality_formula():
    for n in range(1, 13):
        inst = tk.build_example(n)
        assert len(inst.set) == tk.exact_cardinality(n) == 2**n + 2 * n + 2
        assert inst.k_n == len(inst.set)


def test_exact_mean_values():
    assert tk.exact_mean(2) == 0.375
    assert tk.exact_mean(1) == 0.75
    for n in range(1, 16):
        inst = tk.build_example(n)
        mu = tk.exact_mean(n)
        assert abs(inst.mean[0] - mu) <= 1e-13
        assert abs(inst.mean[1] - mu) <= 1e-13


def test_closed_form_slope_pinned_fractions():
    assert tk.closed_form_slope(1) == float(Fraction(31, 47))
    assert tk.closed_form_slope(2) == float(Fraction(5, 13))


def test_closed_form_matches_generic_ls():
    # same quantity by two routes: exact rational sums vs the generic
    # floating-point fit on the materialized points
    for n in range(1, 15):
        inst = tk.build_example(n)
        generic = tk.ls_slope(inst.set)
        assert abs(generic - tk.closed_form_slope(n)) <= 1e-9


def test_slope_dips_then_climbs_to_one():
    ms = [tk.closed_form_slope(n) for n in range(1, 31)]
    assert all(a > b for a, b in zip(ms[:8], ms[1:8]))   # decreasing through n=8
    assert all(a < b for a, b in zip(ms[7:], ms[8:]))    # increasing from n=8 on
    assert ms[19] >= 0.9
    assert ms[29] > 0.999
    # usable far beyond the materialization cap
    assert 0.9999999 < tk.closed_form_slope(60) < 1.0


def test_exact_hausdorff_values():
    assert tk.exact_hausdorff(1) == math.sqrt(5.0)
    assert tk.exact_hausdorff(4) == 0.5
    # the farthest point is the cluster tip, handled by the exact
    # point-to-segment direction, so the computed value is exact too
    for n in (1, 2, 5, 10):
        diag = tk.verify_example(tk.build_example(n))
        assert abs(diag.hausdorff_to_f - tk.exact_hausdorff(n)) <= 1e-12


def test_limit_segment_is_flat():
    seg = tk.limit_segment()
    assert seg.slope == 0.0
    assert seg.endpoints() == ((-1.0, 0.0), (1.0, 0.0))


def test_concentration_with_default_square():
    # half-width 1.5 catches everything except the far baseline ends at n=1
    assert tk.verify_example(tk.build_example(1)).concentration == pytest.approx(5.0 / 6.0, abs=0)
    for n in (2, 3, 6):
        assert tk.verify_example(tk.build_example(n)).concentration == 1.0


def test_concentration_flags_the_cluster():
    # with a tight square the cluster mass dominates while a bare grid of
    # the same extent stays spread out
    inst = tk.build_example(10)
    spiked = tk.concentration_ratio(inst.set, inst.mean, 0.25)
    grid = tk.PointSet.from_xy(np.arange(-10, 11) / 10.0, np.zeros(21))
    flat = tk.concentration_ratio(grid, None, 0.25)
    assert spiked > 0.95
    assert flat < 0.5


def test_verify_example_consistency_small_n():
    for n in range(1, 9):
        inst = tk.build_example(n)
        diag = tk.verify_example(inst)
        assert diag.hausdorff_to_f < 3.0 / n
        assert abs(diag.slope - tk.closed_form_slope(n)) <= 1e-9
        assert diag.concentration >= (2**n + 1) / inst.k_n


def test_large_n_by_swelling_bounds():
    """Bound the distance for set sizes where the two-way computation is
    heavy: each direction separately via open swellings."""
    seg = tk.limit_segment()
    fine = tk.PointSet.from_xy(np.linspace(-1.0, 1.0, 20001), np.zeros(20001))
    for n in (23, 24, 25):
        inst = tk.build_example(n)
        delta = 3.0 / n
        # every family point within 3/n of the segment
        assert tk.swelling_contains(seg, inst.set, delta)
        # every segment point within 3/n of the baseline grid alone
        grid = tk.PointSet.from_xy(np.arange(-n, n + 1) / n, np.zeros(2 * n + 1))
        assert tk.swelling_contains(grid, fine, delta)
        assert abs(inst.mean[0] - tk.exact_mean(n)) <= 1e-13
        assert len(inst.set) == tk.exact_cardinality(n)
        conc = tk.concentration_ratio(inst.set, inst.mean, 1.5)
        assert conc >= (2**n + 1) / inst.k_n


def test_build_example_bounds():
    with pytest.raises(ValueError):
        tk.build_example(0)
    with pytest.raises(ValueError):
        tk.build_example(31)
    with pytest.raises(ValueError):
        tk.build_example(1.5)
    with pytest.raises(ValueError):
        tk.closed_form_slope(0)
