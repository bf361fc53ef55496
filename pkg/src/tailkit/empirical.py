"""Order statistics, empirical quantiles, and the Kolmogorov-Smirnov statistic."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dists

__all__ = ["OrderedSample", "order_statistics", "empirical_quantile", "ks_statistic"]


@dataclass(frozen=True)
class OrderedSample:
    """A sample stored in nondecreasing order.

    ascending[i] is X_{i+1:n}.  The j-th descending order statistic X_(j)
    (so X_(1) is the maximum) is ascending[n - j]; see descending().
    Duplicates are preserved: the sample is a multiset.
    """

    ascending: np.ndarray
    n: int

    def descending(self, j: int) -> float:
        """X_(j) for 1-based j: descending(1) is the maximum."""
        if not 1 <= j <= self.n:
            raise ValueError(f"j={j} outside 1..{self.n}")
        return float(self.ascending[self.n - j])


def order_statistics(data) -> OrderedSample:
    """Sort a nonempty finite sample into an OrderedSample (sorted copy)."""
    values = np.asarray(data, dtype=float)
    if values.ndim != 1:
        values = values.reshape(-1)
    if values.size == 0:
        raise ValueError("empty sample")
    if not np.all(np.isfinite(values)):
        raise ValueError("sample contains non-finite values")
    return OrderedSample(np.sort(values), int(values.size))


def empirical_quantile(s: OrderedSample, p: float) -> float:
    """Empirical quantile X_{ceil(np):n} for p in (0, 1]."""
    p = float(p)
    if not 0.0 < p <= 1.0:
        raise ValueError(f"p={p} outside (0, 1]")
    i = math.ceil(s.n * p)
    return float(s.ascending[i - 1])


def ks_statistic(s: OrderedSample, model: dists.DistributionModel) -> float:
    """sup_x |F_n(x) - F(x)| via the order-statistic formula.

    For a sorted sample this is max_i max(i/n - F(X_{i:n}), F(X_{i:n}) - (i-1)/n),
    which is exact (no grid search).  Always >= 1/(2n) for continuous F.
    """
    n = s.n
    f = np.asarray(dists.cdf(model, s.ascending), dtype=float)
    i = np.arange(1, n + 1, dtype=float)
    d_plus = np.max(i / n - f)
    d_minus = np.max(f - (i - 1.0) / n)
    return float(max(d_plus, d_minus, 0.0))
