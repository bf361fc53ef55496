"""An exact set family whose least-squares slope refuses to converge.

build_example(n) materializes 2**n + 2n + 2 points: the flat grid
(i/n, 0) for -n <= i <= n together with a dense diagonal cluster
((1 + j/2**n)/n, (1 + j/2**n)/n) for 0 <= j <= 2**n.  The sets converge
to the segment [-1, 1] x {0} in Hausdorff distance (within 3/n; the true
distance is 2/n for n >= 2), yet the cluster carries all but a vanishing
fraction of the point count, so the fitted slope tends to 1 instead of
the limit segment's 0.  The concentration ratio around the mean tends to
1 and flags the failure.

Closed forms (exact rational arithmetic, usable for any n without
materializing points): with N = 2**n, K = N + 2n + 2 and
mu = 3(N+1)/(2nK),

    slope numerator   = sum over the cluster of c_j**2  -  K mu**2
                      = ((N+1)/n**2) (2 + (2N+1)/(6N) - 9(N+1)/(4K))
    slope denominator = numerator + (n+1)(2n+1)/(3n)

The numerator stays bounded away from 0 while the baseline term
(n+1)(2n+1)/(3n) grows only linearly against the cluster's 2**n count,
which is why the ratio climbs to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import estimators, setmetrics
from .qqsets import PointSet, segment

__all__ = [
    "ExampleInstance",
    "ExampleDiagnostics",
    "MAX_N",
    "build_example",
    "verify_example",
    "limit_segment",
    "exact_cardinality",
    "exact_mean",
    "closed_form_slope",
    "exact_hausdorff",
]

MAX_N = 30

# Half-width of the default concentration square.  The cluster's farthest
# corner sits at most 1.25 from the mean (worst case n=1), so 1.5 keeps the
# entire cluster strictly inside for every buildable n and the ratio is at
# least (2**n + 1) / (2**n + 2n + 2).
DEFAULT_DELTA = 1.5


@dataclass(frozen=True)
class ExampleInstance:
    n: int
    set: PointSet
    k_n: int
    mean: tuple[float, float]


@dataclass(frozen=True)
class ExampleDiagnostics:
    hausdorff_to_f: float
    slope: float
    concentration: float


def limit_segment():
    """The flat limit segment [-1, 1] x {0}."""
    return segment((-1.0, 0.0), (1.0, 0.0))


def exact_cardinality(n: int) -> int:
    return 2**n + 2 * n + 2


def _mean_fraction(n: int) -> Fraction:
    big = 2**n
    return Fraction(3 * (big + 1), 2 * n * (big + 2 * n + 2))


def exact_mean(n: int) -> float:
    """Both mean coordinates: 3(2**n+1) / (2n(2**n+2n+2)) as a float."""
    return float(_mean_fraction(n))


def closed_form_slope(n: int) -> float:
    """LS slope from the exact rational sums; works for any n >= 1."""
    if n < 1:
        raise ValueError(f"n={n} must be >= 1")
    big = 2**n
    k_n = big + 2 * n + 2
    numerator = Fraction(big + 1, n * n) * (
        2 + Fraction(2 * big + 1, 6 * big) - Fraction(9 * (big + 1), 4 * k_n)
    )
    denominator = numerator + Fraction((n + 1) * (2 * n + 1), 3 * n)
    return float(numerator / denominator)


def exact_hausdorff(n: int) -> float:
    """Distance to the limit segment: sqrt(5) at n=1 (cluster corner (2,2)
    against endpoint (1,0)), else the cluster height 2/n; always < 3/n."""
    if n == 1:
        return math.sqrt(5.0)
    return 2.0 / n


def build_example(n: int) -> ExampleInstance:
    """Materialize the n-th set; n is capped at 30 to bound the 2**n points."""
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_N:
        raise ValueError(f"n={n!r} outside 1..{MAX_N}")
    n = int(n)
    base_x = np.arange(-n, n + 1, dtype=float) / n
    cluster = (1.0 + np.arange(2**n + 1, dtype=float) / 2**n) / n
    x = np.concatenate([base_x, cluster])
    y = np.concatenate([np.zeros(base_x.size), cluster])
    ps = PointSet.from_xy(x, y)
    mean = (float(np.mean(x)), float(np.mean(y)))
    return ExampleInstance(n=n, set=ps, k_n=x.size, mean=mean)


def verify_example(inst: ExampleInstance, delta: float = DEFAULT_DELTA) -> ExampleDiagnostics:
    """Distance to the flat segment, generic LS slope, and the concentration
    ratio in the open square of half-width delta at the set's mean."""
    return ExampleDiagnostics(
        hausdorff_to_f=setmetrics.hausdorff(inst.set, limit_segment()),
        slope=estimators.ls_slope(inst.set),
        concentration=estimators.concentration_ratio(inst.set, inst.mean, delta),
    )
