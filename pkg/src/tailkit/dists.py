"""Distribution models with invertible CDFs and inverse-transform sampling.

Four built-in univariate laws:

* ``Uniform01``: uniform on (0, 1).
* ``Exponential(alpha)``: F(x) = 1 - exp(-alpha*x) on [0, inf).
* ``Pareto(alpha)``: F(x) = 1 - x**(-alpha) on [1, inf).
* ``ParetoLog(alpha)``: survival function x**(-alpha) / log(e*x) on
  [1, inf), i.e. a pure power law damped by the slowly varying factor
  L(x) = 1 / (1 + log x).

Uniform, Exponential and Pareto invert in closed form; ParetoLog is
inverted numerically by bisection.  Sampling is inverse-transform applied
to raw uniforms from an explicit counter-based generator (numpy Philox),
so results are reproducible given the stream and independent of
scheduling.  All functions are pure.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Kind",
    "DistributionModel",
    "uniform01",
    "exponential",
    "pareto",
    "pareto_log",
    "model_from_name",
    "cdf",
    "quantile",
    "sample",
]


class Kind(enum.Enum):
    UNIFORM01 = "uniform01"
    EXPONENTIAL = "exponential"
    PARETO = "pareto"
    PARETO_LOG = "pareto_log"


@dataclass(frozen=True)
class DistributionModel:
    """A sampleable, invertible law identified by kind and tail/rate parameter.

    alpha is the rate for Exponential and the tail index for Pareto and
    ParetoLog; it is ignored by Uniform01.
    """

    kind: Kind
    alpha: float = 1.0

    def __post_init__(self) -> None:
        if not isinstance(self.kind, Kind):
            raise ValueError(f"unknown model kind: {self.kind!r}")
        if self.kind is not Kind.UNIFORM01:
            a = float(self.alpha)
            if not math.isfinite(a) or a <= 0.0:
                raise ValueError(f"alpha must be finite and > 0, got {self.alpha!r}")
            object.__setattr__(self, "alpha", a)

    @property
    def support_left(self) -> float:
        """Left endpoint of the support (0 for Uniform01/Exponential, 1 otherwise)."""
        if self.kind in (Kind.PARETO, Kind.PARETO_LOG):
            return 1.0
        return 0.0


def uniform01() -> DistributionModel:
    return DistributionModel(Kind.UNIFORM01)


def exponential(alpha: float) -> DistributionModel:
    return DistributionModel(Kind.EXPONENTIAL, alpha)


def pareto(alpha: float) -> DistributionModel:
    return DistributionModel(Kind.PARETO, alpha)


def pareto_log(alpha: float) -> DistributionModel:
    return DistributionModel(Kind.PARETO_LOG, alpha)


def model_from_name(name: str, alpha: float = 1.0) -> DistributionModel:
    """Build a model from its CLI string name ('uniform01', 'pareto', ...)."""
    try:
        kind = Kind(name.strip().lower())
    except ValueError:
        valid = ", ".join(k.value for k in Kind)
        raise ValueError(f"unknown model {name!r}; expected one of: {valid}") from None
    return DistributionModel(kind, alpha)


# ---------------------------------------------------------------------------
# CDF
# ---------------------------------------------------------------------------

def cdf(model: DistributionModel, x):
    """Cumulative distribution function; accepts scalars or arrays.

    Returns values in [0, 1], equal to 0 below the support.
    """
    xs = np.asarray(x, dtype=float)
    if model.kind is Kind.UNIFORM01:
        out = np.clip(xs, 0.0, 1.0)
    elif model.kind is Kind.EXPONENTIAL:
        out = np.where(xs > 0.0, -np.expm1(-model.alpha * np.maximum(xs, 0.0)), 0.0)
    elif model.kind is Kind.PARETO:
        t = np.maximum(xs, 1.0)
        out = np.where(xs > 1.0, -np.expm1(-model.alpha * np.log(t)), 0.0)
    else:
        t = np.maximum(xs, 1.0)
        sf = t ** (-model.alpha) / (1.0 + np.log(t))
        out = np.where(xs > 1.0, 1.0 - sf, 0.0)
    if np.ndim(x) == 0:
        return float(out)
    return out


def _pareto_log_sf(x: float, alpha: float) -> float:
    if x <= 1.0:
        return 1.0
    return x ** (-alpha) / (1.0 + math.log(x))


# ---------------------------------------------------------------------------
# Quantile
# ---------------------------------------------------------------------------

# ParetoLog inversion parameters: plain bisection, robust for a monotone F.
_BISECT_LO = 1.0
_BISECT_HI = 1.0e9
_BISECT_MAX_ITER = 200
_BISECT_RTOL = 1.0e-12


def quantile(model: DistributionModel, p: float) -> float:
    """Generalized inverse inf{x: F(x) >= p} for a single probability.

    p must lie in (0, 1); p = 1 is accepted only for Uniform01 (where the
    quantile is 1).  Rejecting the endpoints keeps every downstream point
    set finite by construction.
    """
    p = float(p)
    if not 0.0 < p < 1.0:
        if p == 1.0 and model.kind is Kind.UNIFORM01:
            return 1.0
        raise ValueError(f"p={p} outside the quantile domain for {model.kind.value}")
    if model.kind is Kind.UNIFORM01:
        return p
    if model.kind is Kind.EXPONENTIAL:
        return -math.log1p(-p) / model.alpha
    if model.kind is Kind.PARETO:
        return (1.0 - p) ** (-1.0 / model.alpha)
    return _pareto_log_quantile_scalar(p, model.alpha)


def _pareto_log_quantile_scalar(p: float, alpha: float) -> float:
    q = 1.0 - p
    lo, hi = _BISECT_LO, _BISECT_HI
    # Widen the default cap for probabilities it cannot reach (small alpha,
    # p near 1); the survival function at hi must fall at or below q.
    while _pareto_log_sf(hi, alpha) > q:
        hi = hi * hi
        if hi >= 1.0e300:
            break
    for _ in range(_BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if _pareto_log_sf(mid, alpha) > q:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _BISECT_RTOL * hi:
            break
    return 0.5 * (lo + hi)


def _pareto_log_quantile_vec(p: np.ndarray, alpha: float) -> np.ndarray:
    """Vectorized ParetoLog inversion on a tight analytic bracket.

    With q = 1-p and b = q**(-1/alpha) (the pure power-law quantile), the
    damping factor 1/(1+log x) <= 1 gives quantile <= b, and bounding the
    factor below by 1/(1+log b) on [1, b] gives quantile >= b*(1+log b)**(-1/alpha).
    Bisection on [a, b] to relative tolerance 1e-12.  Entries with p = 0 map
    to the support edge 1.
    """
    q = 1.0 - p
    b = q ** (-1.0 / alpha)
    b = np.maximum(b, 1.0)
    a = np.maximum(b * (1.0 + np.log(b)) ** (-1.0 / alpha), 1.0)
    lo, hi = a, b
    for _ in range(_BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        t = np.maximum(mid, 1.0)
        sf = t ** (-alpha) / (1.0 + np.log(t))
        below = sf > q
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.all(hi - lo <= _BISECT_RTOL * hi):
            break
    return 0.5 * (lo + hi)


def _quantile_array(model: DistributionModel, p: np.ndarray) -> np.ndarray:
    """Quantiles for an array of probabilities in [0, 1).

    Same transforms as quantile(); entries equal to 0 map to the left
    support edge (only relevant for raw uniforms, which live in [0, 1)).
    """
    p = np.asarray(p, dtype=float)
    if np.any(p < 0.0) or np.any(p >= 1.0):
        raise ValueError("array quantiles require probabilities in [0, 1)")
    if model.kind is Kind.UNIFORM01:
        return p.copy()
    if model.kind is Kind.EXPONENTIAL:
        return -np.log1p(-p) / model.alpha
    if model.kind is Kind.PARETO:
        return (1.0 - p) ** (-1.0 / model.alpha)
    return _pareto_log_quantile_vec(p, model.alpha)


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

def sample(model: DistributionModel, n: int, stream: np.random.Generator) -> np.ndarray:
    """n iid draws by inverse transform of the stream's raw uniforms.

    For Uniform01 the output is exactly the raw uniforms.  Deterministic
    given the stream state.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"sample size must be a positive integer, got {n!r}")
    u = stream.random(int(n))
    return _quantile_array(model, u)
