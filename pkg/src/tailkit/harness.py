"""Monte Carlo experiment driver with reproducible seeding and CSV/SVG output.

Experiments draw replicated samples over a grid of sizes, build the matching
QQ point set, and record windowed Hausdorff distances to the limit shape
together with slope/Hill estimates and diagnostics.  Seeding is counter-based
(Philox) and derived per (experiment, n, replication), so a run's CSV is
byte-identical across thread counts and across repeat runs.  runtime_ms is 0
unless timing is switched on, which is the one knob that opts out of
byte-identity.

Comparisons truncate both operands to a compact window before measuring the
distance; an empty truncation is recorded as a window miss, never as 0 or
infinity.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import counterexample as cex
from . import dists, estimators, qqsets, setmetrics
from .empirical import OrderedSample, order_statistics
from .qqsets import LimitShape, PointSet, limit_shape_for, ray
from .setmetrics import Window, clip_shape, hausdorff, truncate, window_km

__all__ = [
    "ConfigError",
    "KRule",
    "ExperimentConfig",
    "ExperimentRecord",
    "RunResult",
    "EXPERIMENTS",
    "CSV_HEADER",
    "derive_seed",
    "record_seed",
    "run",
    "run_to_dir",
    "emit_csv",
    "emit_svg",
    "svg_transform",
    "limitset_demo",
    "counterexample_rows",
    "write_counterexample_outputs",
    "load_config_file",
]

EXPERIMENTS = (
    "uniform_qq",
    "general_qq",
    "exp_qq",
    "pareto_logqq",
    "thresholded",
    "slope_consistency",
    "counterexample",
    "limitset_demo",
)

_SAMPLING = (
    "uniform_qq",
    "general_qq",
    "exp_qq",
    "pareto_logqq",
    "thresholded",
    "slope_consistency",
    "limitset_demo",
)

CSV_HEADER = (
    "experiment,n,k,rep,seed,hausdorff,window_miss,ls_slope,hill,"
    "kM_ratio,concentration,runtime_ms"
)


class ConfigError(ValueError):
    """Invalid experiment configuration (CLI exit code 1)."""


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KRule:
    """How the threshold count k depends on n.

    fixed:K   always K
    power:G   ceil(n**G) with 0 < G < 1 (keeps k/n -> 0)
    logsq     ceil(log(n)**2)
    """

    kind: str
    value: float | None = None

    def __post_init__(self) -> None:
        if self.kind == "fixed":
            if self.value is None or int(self.value) != self.value or self.value < 2:
                raise ConfigError(f"fixed k rule needs an integer k >= 2, got {self.value!r}")
        elif self.kind == "power":
            if self.value is None or not 0.0 < float(self.value) < 1.0:
                raise ConfigError(f"power k rule needs 0 < gamma < 1, got {self.value!r}")
        elif self.kind == "logsq":
            if self.value is not None:
                raise ConfigError("logsq k rule takes no parameter")
        else:
            raise ConfigError(f"unknown k rule kind: {self.kind!r}")

    def k_for(self, n: int) -> int:
        if self.kind == "fixed":
            return int(self.value)
        if self.kind == "power":
            return int(math.ceil(n ** float(self.value)))
        return int(math.ceil(math.log(n) ** 2))

    @classmethod
    def parse(cls, text: str) -> "KRule":
        parts = text.strip().split(":")
        kind = parts[0]
        if len(parts) == 1:
            return cls(kind)
        if len(parts) == 2:
            try:
                value = float(parts[1])
            except ValueError:
                raise ConfigError(f"bad k rule parameter: {text!r}") from None
            return cls(kind, value)
        raise ConfigError(f"bad k rule: {text!r}")

    def spell(self) -> str:
        if self.kind == "fixed":
            return f"fixed:{int(self.value)}"
        if self.kind == "power":
            return f"power:{self.value:g}"
        return "logsq"


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    model: dists.DistributionModel
    n_grid: tuple[int, ...]
    k_rule: KRule = field(default_factory=lambda: KRule("power", 0.6))
    replications: int = 1
    master_seed: int = 0
    m: float = 3.0
    delta: float = 0.25
    output_dir: Path = Path("tailkit-out")
    dump_samples: bool = False
    svg: bool = False
    threads: int = 1
    timing: bool = False

    def validate(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(
                f"unknown experiment {self.experiment!r}; expected one of {', '.join(EXPERIMENTS)}"
            )
        if not self.n_grid:
            raise ConfigError("empty n grid")
        if any(int(n) != n or n < 1 for n in self.n_grid):
            raise ConfigError(f"n grid must hold positive integers: {self.n_grid}")
        if self.replications < 1:
            raise ConfigError(f"replications must be >= 1, got {self.replications}")
        if self.master_seed < 0:
            raise ConfigError("master seed must be nonnegative")
        if self.m <= 0 or self.delta <= 0:
            raise ConfigError("M and delta must be positive")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        kind = self.model.kind
        if self.experiment == "uniform_qq" and kind is not dists.Kind.UNIFORM01:
            raise ConfigError("uniform_qq runs on the uniform01 model")
        if self.experiment == "exp_qq" and kind is not dists.Kind.EXPONENTIAL:
            raise ConfigError("exp_qq runs on the exponential model")
        if self.experiment in ("pareto_logqq", "thresholded") and kind not in (
            dists.Kind.PARETO,
            dists.Kind.PARETO_LOG,
        ):
            raise ConfigError(f"{self.experiment} needs a pareto or pareto_log model")
        if self.experiment == "limitset_demo" and kind not in (
            dists.Kind.PARETO_LOG,
            dists.Kind.PARETO,
        ):
            raise ConfigError("limitset_demo needs pareto_log (or pareto as debug reference)")
        if self.experiment == "counterexample":
            bad = [n for n in self.n_grid if n > cex.MAX_N]
            if bad:
                raise ConfigError(f"counterexample n capped at {cex.MAX_N}, got {bad}")
            return
        if any(n < 2 for n in self.n_grid):
            raise ConfigError("sampling experiments need n >= 2")
        for n in self.n_grid:
            k = self.k_rule.k_for(int(n))
            if not 2 <= k <= n:
                raise ConfigError(
                    f"k rule {self.k_rule.spell()} gives k={k} outside 2..{n} at n={n}"
                )


@dataclass(frozen=True)
class ExperimentRecord:
    experiment: str
    n: int
    k: int | None
    rep: int
    seed: int | None
    hausdorff: float | None
    window_miss: bool
    ls_slope: float | None
    hill: float | None
    km_ratio: float | None
    concentration: float | None
    runtime_ms: float = 0.0


@dataclass(frozen=True)
class RunResult:
    records: list[ExperimentRecord]
    summary: dict


# ---------------------------------------------------------------------------
# Seed derivation
# ---------------------------------------------------------------------------

_MASK64 = (1 << 64) - 1
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def _fnv1a64(text: str) -> int:
    """FNV-1a 64-bit hash of the UTF-8 bytes."""
    h = _FNV_OFFSET
    for byte in text.encode("utf-8"):
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK64
    return h


def _mix64(v: int) -> int:
    """splitmix64 finalizer; a bijection on 64-bit words."""
    z = (v + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, label: str, n: int, rep: int) -> np.random.Generator:
    """Philox stream derived lane-wise from (master, hash(label), n, rep).

    Each component is finalized with splitmix64 (a bijection on 64-bit
    words).  master and the label's FNV-1a hash fill the two 64-bit key
    lanes; n and rep fill the two high lanes of the 256-bit start counter,
    so distinct tuples get distinct, overlap-free streams (streams with
    equal keys only meet after 2**128 draws).  Identical inputs give
    identical streams, so replication-level parallelism cannot perturb
    results.
    """
    key = np.array(
        [_mix64(master & _MASK64), _mix64(_fnv1a64(label))],
        dtype=np.uint64,
    )
    counter = np.array(
        [0, 0, _mix64(n & _MASK64), _mix64(rep & _MASK64)],
        dtype=np.uint64,
    )
    return np.random.Generator(np.random.Philox(key=key, counter=counter))


def record_seed(master: int, label: str, n: int, rep: int) -> int:
    """64-bit digest of the same tuple, written to the CSV seed column."""
    d = _mix64(master & _MASK64)
    for v in (_fnv1a64(label), n & _MASK64, rep & _MASK64):
        d = _mix64(d ^ _mix64(v))
    return d


# ---------------------------------------------------------------------------
# Per-replication work
# ---------------------------------------------------------------------------

def _safe_ls_slope(ps: PointSet) -> float | None:
    if len(ps) < 2 or np.ptp(ps.x) == 0.0:
        return None
    return estimators.ls_slope(ps)


@dataclass(frozen=True)
class _Scene:
    """What one replication produced, for optional SVG dumping."""

    points: PointSet
    shape: LimitShape | None
    window: Window


def _replicate(config: ExperimentConfig, n: int, rep: int):
    """One (n, rep) cell: returns (record, scene, sample or None)."""
    exp = config.experiment
    model = config.model
    alpha = model.alpha
    stream = derive_seed(config.master_seed, exp, n, rep)
    seed = record_seed(config.master_seed, exp, n, rep)
    t0 = time.perf_counter() if config.timing else 0.0

    xs = dists.sample(model, n, stream)
    s = order_statistics(xs)

    k = None
    hausdorff_val = None
    miss = False
    ls = None
    hill = None
    km_ratio = None
    concentration = None

    if exp == "uniform_qq":
        ps = qqsets.qq_set(s, model)
        shape = limit_shape_for("uniform")
        w = Window(0.0, 1.0, 0.0, 1.0)
    elif exp in ("general_qq", "exp_qq"):
        ps = qqsets.qq_set(s, model)
        shape = limit_shape_for("general", model=model)
        lo = model.support_left
        w = Window(lo, lo + config.m, lo, lo + config.m)
    elif exp == "pareto_logqq":
        ps = qqsets.pareto_log_qq_set(s)
        shape = limit_shape_for("pareto_logqq", alpha=alpha)
        w = window_km(config.m, alpha)
    elif exp in ("thresholded", "slope_consistency"):
        k = config.k_rule.k_for(n)
        ps = qqsets.centered_qq_set(s, k)
        shape = limit_shape_for("centered", alpha=alpha)
        w = window_km(config.m, alpha)
    elif exp == "limitset_demo":
        ps = qqsets.pareto_log_qq_set(s)
        shape = None
        w = Window(0.0, config.m, -config.m, config.m)
    else:  # pragma: no cover - validate() rejects anything else
        raise ConfigError(f"unknown experiment {exp!r}")

    tr = truncate(ps, w)
    if exp in ("uniform_qq", "general_qq", "exp_qq", "pareto_logqq"):
        clipped = clip_shape(shape, w)
        if len(tr) == 0 or clipped is None:
            miss = True
        else:
            hausdorff_val = hausdorff(tr, clipped)
            ls = _safe_ls_slope(tr)
    elif exp == "thresholded":
        clipped = clip_shape(shape, w)
        if len(tr) == 0 or clipped is None:
            miss = True
        else:
            hausdorff_val = hausdorff(tr, clipped)
        ls = estimators.ls_slope(ps)
        hill = estimators.hill_estimator(s, k)
        wm = estimators.windowed_moments(s, k, config.m, alpha)
        km_ratio = wm.k_m / k
        concentration = estimators.concentration_ratio(ps, None, config.delta)
    elif exp == "slope_consistency":
        ls = estimators.ls_slope(ps)
        hill = estimators.hill_estimator(s, k)
    elif exp == "limitset_demo":
        curve = truncate(limitset_demo(alpha, config.m, kind=model.kind), w)
        if len(tr) == 0 or len(curve) == 0:
            miss = True
        else:
            hausdorff_val = hausdorff(tr, curve)
            ls = _safe_ls_slope(tr)

    runtime_ms = (time.perf_counter() - t0) * 1e3 if config.timing else 0.0
    record = ExperimentRecord(
        experiment=exp,
        n=n,
        k=k,
        rep=rep,
        seed=seed,
        hausdorff=hausdorff_val,
        window_miss=miss,
        ls_slope=ls,
        hill=hill,
        km_ratio=km_ratio,
        concentration=concentration,
        runtime_ms=runtime_ms,
    )
    scene = _Scene(points=ps, shape=shape, window=w)
    return record, scene, xs


def _counterexample_record(config: ExperimentConfig, n: int):
    inst = cex.build_example(n)
    diag = cex.verify_example(inst, delta=config.delta)
    record = ExperimentRecord(
        experiment="counterexample",
        n=n,
        k=inst.k_n,
        rep=0,
        seed=None,
        hausdorff=diag.hausdorff_to_f,
        window_miss=False,
        ls_slope=diag.slope,
        hill=None,
        km_ratio=None,
        concentration=diag.concentration,
        runtime_ms=0.0,
    )
    w = Window(-1.25, 2.25, -0.25, 2.25)
    return record, _Scene(points=inst.set, shape=cex.limit_segment(), window=w)


# ---------------------------------------------------------------------------
# The limit-curve demo
# ---------------------------------------------------------------------------

def limitset_demo(alpha: float, m: float, kind: dists.Kind = dists.Kind.PARETO_LOG) -> PointSet:
    """Sample the log-scale limit curve on 1000 parameter values in (0, M].

    For pareto_log the curve is (alpha*x, x - log(1 + log q)/alpha) with
    q the quantile at 1 - exp(-alpha*x); the vertical offset is the slowly
    varying factor's contribution and drifts off on a log-log scale.  The
    pareto kind is accepted as a debug reference, where the factor is 1 and
    the curve is exactly (alpha*x, x).
    """
    alpha = float(alpha)
    m = float(m)
    if alpha <= 0 or m <= 0:
        raise ValueError("limitset_demo needs alpha > 0 and M > 0")
    if kind not in (dists.Kind.PARETO_LOG, dists.Kind.PARETO):
        raise ValueError("limitset_demo supports pareto_log, plus pareto as debug")
    xs = np.linspace(m / 1000.0, m, 1000)
    if kind is dists.Kind.PARETO:
        return PointSet.from_xy(alpha * xs, xs)
    p = -np.expm1(-alpha * xs)
    q = dists._quantile_array(dists.pareto_log(alpha), p)
    y = xs - np.log1p(np.log(q)) / alpha
    return PointSet.from_xy(alpha * xs, y)


# ---------------------------------------------------------------------------
# Running
# ---------------------------------------------------------------------------

def run(config: ExperimentConfig) -> RunResult:
    """Execute every (n, replication) cell and summarize the records.

    Replications are the unit of parallel work; each derives its own
    stream, results are sorted by (n, rep) before any aggregation, and the
    output is invariant to the thread count.
    """
    config.validate()
    out = Path(config.output_dir)
    if config.svg or config.dump_samples:
        _mkdir(out)

    if config.experiment == "counterexample":
        records = []
        for n in config.n_grid:
            record, scene = _counterexample_record(config, int(n))
            records.append(record)
            if config.svg:
                emit_svg(
                    scene.points,
                    scene.shape,
                    scene.window,
                    out / f"counterexample_n{record.n}_rep0.svg",
                )
        records.sort(key=lambda r: (r.n, r.rep))
        return RunResult(records, _summarize(config, records))

    tasks = [(int(n), rep) for n in config.n_grid for rep in range(config.replications)]

    def work(cell):
        n, rep = cell
        record, scene, xs = _replicate(config, n, rep)
        if config.svg:
            emit_svg(
                scene.points,
                scene.shape if scene.shape is not None
                else _curve_shape_for_svg(config),
                scene.window,
                out / f"{config.experiment}_n{n}_rep{rep}.svg",
            )
        if config.dump_samples:
            _write_sample(xs, out / f"samples_{config.experiment}_n{n}_rep{rep}.csv")
        return record

    if config.threads == 1:
        records = [work(cell) for cell in tasks]
    else:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            records = list(pool.map(work, tasks))
    records.sort(key=lambda r: (r.n, r.rep))
    return RunResult(records, _summarize(config, records))


def _curve_shape_for_svg(config: ExperimentConfig) -> LimitShape:
    # The demo has a curve, not a line; the rendered reference is the ray the
    # curve would follow with the slowly varying factor stripped.
    return ray((0.0, 0.0), 1.0 / config.model.alpha)


def _mkdir(path: Path) -> None:
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {path}: {exc}") from exc


def _write_sample(xs: np.ndarray, path: Path) -> None:
    lines = ["value"]
    lines.extend(format(float(v), ".17g") for v in xs)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"failed writing sample to {path}: {exc}") from exc


def _quantile_or_none(values: list[float], q: float) -> float | None:
    if not values:
        return None
    return float(np.quantile(np.asarray(values), q))


def _mean_or_none(values: list[float]) -> float | None:
    if not values:
        return None
    return float(np.mean(np.asarray(values)))


def _summarize(config: ExperimentConfig, records: list[ExperimentRecord]) -> dict:
    per_n = []
    warnings = []
    for n in sorted(set(r.n for r in records)):
        group = [r for r in records if r.n == n]
        h = [r.hausdorff for r in group if r.hausdorff is not None]
        misses = sum(1 for r in group if r.window_miss)
        miss_rate = misses / len(group)
        if miss_rate > 0.5:
            warnings.append(f"window miss rate {miss_rate:.0%} at n={n}")
        per_n.append(
            {
                "n": n,
                "k": next((r.k for r in group if r.k is not None), None),
                "replications": len(group),
                "miss_rate": miss_rate,
                "hausdorff_median": _quantile_or_none(h, 0.5),
                "hausdorff_mean": _mean_or_none(h),
                "hausdorff_q25": _quantile_or_none(h, 0.25),
                "hausdorff_q75": _quantile_or_none(h, 0.75),
                "ls_slope_mean": _mean_or_none(
                    [r.ls_slope for r in group if r.ls_slope is not None]
                ),
                "hill_mean": _mean_or_none([r.hill for r in group if r.hill is not None]),
                "km_ratio_mean": _mean_or_none(
                    [r.km_ratio for r in group if r.km_ratio is not None]
                ),
                "concentration_mean": _mean_or_none(
                    [r.concentration for r in group if r.concentration is not None]
                ),
            }
        )
    medians = [row["hausdorff_median"] for row in per_n if row["hausdorff_median"] is not None]
    trend = None
    if len(medians) >= 2:
        trend = all(b <= a for a, b in zip(medians, medians[1:]))
    return {
        "experiment": config.experiment,
        "model": config.model.kind.value,
        "alpha": config.model.alpha,
        "k_rule": config.k_rule.spell(),
        "replications": config.replications,
        "master_seed": config.master_seed,
        "M": config.m,
        "delta": config.delta,
        "per_n": per_n,
        "hausdorff_medians_nonincreasing": trend,
        "warnings": warnings,
    }


# ---------------------------------------------------------------------------
# CSV emission
# ---------------------------------------------------------------------------

def _fmt_float(v: float | None) -> str:
    return "" if v is None else format(float(v), ".17g")


def _fmt_int(v: int | None) -> str:
    return "" if v is None else str(int(v))


def emit_csv(records, path) -> None:
    """Write records sorted by (n, rep); floats carry 17 significant digits."""
    recs = sorted(records, key=lambda r: (r.n, r.rep))
    lines = [CSV_HEADER]
    for r in recs:
        lines.append(
            ",".join(
                [
                    r.experiment,
                    str(int(r.n)),
                    _fmt_int(r.k),
                    str(int(r.rep)),
                    _fmt_int(r.seed),
                    _fmt_float(r.hausdorff),
                    "1" if r.window_miss else "0",
                    _fmt_float(r.ls_slope),
                    _fmt_float(r.hill),
                    _fmt_float(r.km_ratio),
                    _fmt_float(r.concentration),
                    format(float(r.runtime_ms), ".17g"),
                ]
            )
        )
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"failed writing CSV to {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# SVG emission
# ---------------------------------------------------------------------------

SVG_WIDTH = 640
SVG_HEIGHT = 480
SVG_MARGIN = 50


def svg_transform(w: Window):
    """Data-to-pixel maps (fx, fy) used by emit_svg; exposed for checking."""
    span_x = w.x_hi - w.x_lo or 1.0
    span_y = w.y_hi - w.y_lo or 1.0
    plot_w = SVG_WIDTH - 2 * SVG_MARGIN
    plot_h = SVG_HEIGHT - 2 * SVG_MARGIN

    def fx(x: float) -> float:
        return SVG_MARGIN + (x - w.x_lo) / span_x * plot_w

    def fy(y: float) -> float:
        return SVG_HEIGHT - SVG_MARGIN - (y - w.y_lo) / span_y * plot_h

    return fx, fy


def emit_svg(ps: PointSet, shape: LimitShape, w: Window, path) -> None:
    """Standalone deterministic SVG: window border, points, reference line.

    Only the points inside the window are drawn (one circle each); the
    reference line endpoints are exactly the clipped shape's endpoints.
    """
    fx, fy = svg_transform(w)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" '
        f'height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
        f'<rect x="{SVG_MARGIN}" y="{SVG_MARGIN}" '
        f'width="{SVG_WIDTH - 2 * SVG_MARGIN}" height="{SVG_HEIGHT - 2 * SVG_MARGIN}" '
        'fill="white" stroke="black" stroke-width="1"/>',
        f'<text x="{SVG_MARGIN}" y="{SVG_HEIGHT - SVG_MARGIN + 20}" '
        f'font-size="12">x: [{w.x_lo:.6g}, {w.x_hi:.6g}]</text>',
        f'<text x="{SVG_MARGIN}" y="{SVG_MARGIN - 10}" '
        f'font-size="12">y: [{w.y_lo:.6g}, {w.y_hi:.6g}]</text>',
    ]
    clipped = clip_shape(shape, w) if shape is not None else None
    if clipped is not None:
        (x0, y0), (x1, y1) = clipped.endpoints()
        parts.append(
            f'<line x1="{fx(x0):.3f}" y1="{fy(y0):.3f}" '
            f'x2="{fx(x1):.3f}" y2="{fy(y1):.3f}" '
            'stroke="crimson" stroke-width="1.5"/>'
        )
    for px, py in truncate(ps, w).points:
        parts.append(
            f'<circle cx="{fx(px):.3f}" cy="{fy(py):.3f}" r="2" '
            'fill="steelblue" fill-opacity="0.7"/>'
        )
    parts.append("</svg>")
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(parts) + "\n")
    except OSError as exc:
        raise OSError(f"failed writing SVG to {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# Summary figure (matplotlib, Agg, no global pyplot state)
# ---------------------------------------------------------------------------

def write_summary_png(summary: dict, path) -> None:
    """Render median distances and mean estimates against n."""
    from matplotlib.backends.backend_agg import FigureCanvasAgg
    from matplotlib.figure import Figure

    rows = summary["per_n"]
    ns = [row["n"] for row in rows]
    h_med = [row["hausdorff_median"] for row in rows]
    ls_mean = [row["ls_slope_mean"] for row in rows]
    hill_mean = [row["hill_mean"] for row in rows]
    have_h = any(v is not None for v in h_med)
    have_e = any(v is not None for v in ls_mean) or any(v is not None for v in hill_mean)

    n_panels = (1 if have_h else 0) + (1 if have_e else 0)
    if n_panels == 0:
        return
    fig = Figure(figsize=(4.8 * n_panels, 3.6), dpi=120)
    FigureCanvasAgg(fig)
    axes = fig.subplots(1, n_panels)
    if n_panels == 1:
        axes = [axes]
    idx = 0
    if have_h:
        ax = axes[idx]
        idx += 1
        pairs = [(n, v) for n, v in zip(ns, h_med) if v is not None]
        ax.plot([p[0] for p in pairs], [p[1] for p in pairs], "o-", color="steelblue")
        if all(p[1] > 0 for p in pairs) and len(pairs) > 1:
            ax.set_xscale("log")
            ax.set_yscale("log")
        ax.set_xlabel("n")
        ax.set_ylabel("median Hausdorff distance")
        ax.set_title(summary["experiment"])
    if have_e:
        ax = axes[idx]
        target = 1.0 / summary["alpha"] if summary["alpha"] else None
        for label, series, color in (
            ("LS slope", ls_mean, "steelblue"),
            ("Hill", hill_mean, "darkorange"),
        ):
            pairs = [(n, v) for n, v in zip(ns, series) if v is not None]
            if pairs:
                ax.plot(
                    [p[0] for p in pairs], [p[1] for p in pairs], "o-",
                    label=label, color=color,
                )
        if summary["experiment"] in ("thresholded", "slope_consistency") and target:
            ax.axhline(target, linestyle="--", color="gray", linewidth=1)
        if len(ns) > 1 and min(ns) > 0:
            ax.set_xscale("log")
        ax.set_xlabel("n")
        ax.set_ylabel("mean estimate")
        ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    try:
        fig.savefig(path)
    except OSError as exc:
        raise OSError(f"failed writing figure to {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# Orchestration used by the CLI
# ---------------------------------------------------------------------------

def run_to_dir(config: ExperimentConfig) -> RunResult:
    """Run, then write records.csv, summary.json and the summary figure."""
    out = Path(config.output_dir)
    _mkdir(out)
    result = run(config)
    emit_csv(result.records, out / "records.csv")
    try:
        with open(out / "summary.json", "w", encoding="utf-8", newline="\n") as fh:
            json.dump(result.summary, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"failed writing summary to {out / 'summary.json'}: {exc}") from exc
    write_summary_png(result.summary, out / f"{config.experiment}_summary.png")
    if config.experiment == "limitset_demo":
        curve = limitset_demo(config.model.alpha, config.m, kind=config.model.kind)
        qqsets.write_points_csv(curve, out / "limitset_curve.csv")
    return result


def counterexample_rows(n_max: int, delta: float = cex.DEFAULT_DELTA) -> list[dict]:
    """Diagnostics for every n in 1..n_max (generic routes, not closed forms)."""
    if not 1 <= n_max <= cex.MAX_N:
        raise ConfigError(f"n_max must lie in 1..{cex.MAX_N}")
    rows = []
    for n in range(1, n_max + 1):
        inst = cex.build_example(n)
        diag = cex.verify_example(inst, delta=delta)
        rows.append(
            {
                "n": n,
                "k_n": inst.k_n,
                "hausdorff": diag.hausdorff_to_f,
                "slope": diag.slope,
                "concentration": diag.concentration,
            }
        )
    return rows


def write_counterexample_outputs(
    rows: list[dict], out_dir, svg_n: int, delta: float = cex.DEFAULT_DELTA
) -> None:
    """CSV table for all rows plus the overlay SVG for one chosen n."""
    out = Path(out_dir)
    _mkdir(out)
    lines = ["n,k_n,hausdorff,slope,concentration"]
    for row in rows:
        lines.append(
            f"{row['n']},{row['k_n']},{row['hausdorff']:.17g},"
            f"{row['slope']:.17g},{row['concentration']:.17g}"
        )
    path = out / "counterexample.csv"
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"failed writing CSV to {path}: {exc}") from exc
    inst = cex.build_example(svg_n)
    emit_svg(
        inst.set,
        cex.limit_segment(),
        Window(-1.25, 2.25, -0.25, 2.25),
        out / f"counterexample_n{svg_n}_rep0.svg",
    )


# ---------------------------------------------------------------------------
# Config files
# ---------------------------------------------------------------------------

_CONFIG_KEYS = {
    "experiment",
    "model",
    "alpha",
    "n",
    "k_rule",
    "reps",
    "seed",
    "M",
    "delta",
    "out",
    "dump_samples",
    "svg",
    "threads",
    "timing",
}


def load_config_file(path) -> dict[str, str]:
    """Parse a key=value config file; '#' starts a comment line.

    Keys mirror the CLI flags (n is the comma-separated grid).  CLI flags
    override file values.
    """
    values: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value.strip()
    return values
