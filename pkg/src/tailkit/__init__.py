"""tailkit: QQ point sets, Hausdorff convergence diagnostics, and
heavy-tail index estimators, with a reproducible Monte Carlo CLI."""

from .dists import (
    DistributionModel,
    Kind,
    cdf,
    exponential,
    model_from_name,
    pareto,
    pareto_log,
    quantile,
    sample,
    uniform01,
)
from .empirical import OrderedSample, empirical_quantile, ks_statistic, order_statistics
from .qqsets import (
    LimitShape,
    PointSet,
    ShapeKind,
    centered_qq_set,
    limit_shape_for,
    pareto_log_qq_set,
    qq_set,
    ray,
    read_points_csv,
    segment,
    thresholded_qq_set,
    translate,
    write_points_csv,
)
from .setmetrics import (
    Window,
    WindowMissError,
    clip_shape,
    hausdorff,
    swelling_contains,
    truncate,
    window_km,
)
from .estimators import (
    EstimatorReport,
    WindowedMoments,
    concentration_ratio,
    design_moments,
    estimator_report,
    hill_estimator,
    ls_slope,
    qq_slope_estimator,
    tail_measure,
    windowed_moments,
)
from .counterexample import (
    ExampleDiagnostics,
    ExampleInstance,
    build_example,
    closed_form_slope,
    exact_cardinality,
    exact_hausdorff,
    exact_mean,
    limit_segment,
    verify_example,
)
from .harness import (
    EXPERIMENTS,
    ConfigError,
    ExperimentConfig,
    ExperimentRecord,
    KRule,
    RunResult,
    derive_seed,
    emit_csv,
    emit_svg,
    limitset_demo,
    run,
    run_to_dir,
)

__version__ = "0.1.0"
