"""Command line front end.

    tailkit run --experiment thresholded --model pareto --alpha 1 \
        --n 10000,100000 --k-rule power:0.6 --reps 100 --seed 42 \
        --M 3 --delta 0.25 --out results [--dump-samples] [--svg]

    tailkit counterexample --n-max 12 --svg-n 8 --out results

Exit codes: 0 success, 1 configuration error, 2 I/O error, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import sys
import traceback
from pathlib import Path

from . import counterexample as cex
from . import dists
from .harness import (
    EXPERIMENTS,
    ConfigError,
    ExperimentConfig,
    KRule,
    counterexample_rows,
    load_config_file,
    run_to_dir,
    write_counterexample_outputs,
)

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as ConfigError (exit code 1)."""

    def error(self, message):
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="tailkit", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    runp = sub.add_parser("run", help="run a Monte Carlo experiment")
    runp.add_argument("--config", type=Path, default=None,
                      help="key=value config file; explicit flags override it")
    runp.add_argument("--experiment", choices=EXPERIMENTS, default=None)
    runp.add_argument("--model", default=None,
                      choices=[k.value for k in dists.Kind])
    runp.add_argument("--alpha", type=float, default=None)
    runp.add_argument("--n", default=None, help="comma-separated sample sizes")
    runp.add_argument("--k-rule", dest="k_rule", default=None,
                      help="fixed:K | power:GAMMA | logsq (default power:0.6)")
    runp.add_argument("--reps", type=int, default=None)
    runp.add_argument("--seed", type=int, default=None)
    runp.add_argument("--M", dest="M", type=float, default=None)
    runp.add_argument("--delta", type=float, default=None)
    runp.add_argument("--out", type=Path, default=None)
    runp.add_argument("--dump-samples", dest="dump_samples",
                      action="store_true", default=None)
    runp.add_argument("--svg", action="store_true", default=None)
    runp.add_argument("--threads", type=int, default=None)
    runp.add_argument("--timing", action="store_true", default=None,
                      help="record wall-clock runtime_ms (gives up byte-identical CSV)")

    cexp = sub.add_parser("counterexample",
                          help="exact table and overlay plot for the slope failure family")
    cexp.add_argument("--n-max", dest="n_max", type=int, default=12)
    cexp.add_argument("--svg-n", dest="svg_n", type=int, default=None,
                      help="which n to render (default min(n_max, 8))")
    cexp.add_argument("--delta", type=float, default=cex.DEFAULT_DELTA)
    cexp.add_argument("--out", type=Path, default=Path("tailkit-out"))
    return parser


_RUN_DEFAULTS = {
    "experiment": None,
    "model": None,
    "alpha": 1.0,
    "n": None,
    "k_rule": "power:0.6",
    "reps": 1,
    "seed": 0,
    "M": 3.0,
    "delta": 0.25,
    "out": Path("tailkit-out"),
    "dump_samples": False,
    "svg": False,
    "threads": 1,
    "timing": False,
}

# Sensible model defaults when --model is omitted.
_MODEL_DEFAULTS = {
    "uniform_qq": "uniform01",
    "exp_qq": "exponential",
    "general_qq": "pareto",
    "pareto_logqq": "pareto",
    "thresholded": "pareto",
    "slope_consistency": "pareto",
    "limitset_demo": "pareto_log",
    "counterexample": "uniform01",  # unused; the experiment is deterministic
}

_BOOL_KEYS = ("dump_samples", "svg", "timing")


def _parse_bool(value: str, key: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"bad boolean for {key}: {value!r}")


def _merge_run_options(args: argparse.Namespace) -> dict:
    """defaults < config file < explicit CLI flags."""
    merged = dict(_RUN_DEFAULTS)
    if args.config is not None:
        raw = load_config_file(args.config)
        for key, value in raw.items():
            if key == "n":
                merged["n"] = value
            elif key == "alpha":
                merged["alpha"] = float(value)
            elif key == "reps":
                merged["reps"] = int(value)
            elif key == "seed":
                merged["seed"] = int(value)
            elif key == "M":
                merged["M"] = float(value)
            elif key == "delta":
                merged["delta"] = float(value)
            elif key == "threads":
                merged["threads"] = int(value)
            elif key == "out":
                merged["out"] = Path(value)
            elif key in _BOOL_KEYS:
                merged[key] = _parse_bool(value, key)
            else:  # experiment, model, k_rule
                merged[key] = value
    for key in _RUN_DEFAULTS:
        cli_value = getattr(args, key, None)
        if cli_value is not None:
            merged[key] = cli_value
    return merged


def _parse_n_grid(text) -> tuple[int, ...]:
    if text is None:
        raise ConfigError("missing --n (comma-separated sample sizes)")
    if isinstance(text, tuple):
        return text
    try:
        grid = tuple(int(part.strip()) for part in str(text).split(",") if part.strip())
    except ValueError:
        raise ConfigError(f"bad --n value: {text!r}") from None
    if not grid:
        raise ConfigError(f"bad --n value: {text!r}")
    return grid


def _config_from_options(opts: dict) -> ExperimentConfig:
    experiment = opts["experiment"]
    if experiment is None:
        raise ConfigError("missing --experiment")
    if experiment not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {experiment!r}")
    model_name = opts["model"] or _MODEL_DEFAULTS[experiment]
    try:
        model = dists.model_from_name(model_name, float(opts["alpha"]))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    delta = float(opts["delta"])
    # The deterministic family needs a square wide enough to hold its
    # cluster; keep its own default unless the user overrode delta.
    if experiment == "counterexample" and opts["delta"] == _RUN_DEFAULTS["delta"]:
        delta = cex.DEFAULT_DELTA
    return ExperimentConfig(
        experiment=experiment,
        model=model,
        n_grid=_parse_n_grid(opts["n"]),
        k_rule=KRule.parse(str(opts["k_rule"])),
        replications=int(opts["reps"]),
        master_seed=int(opts["seed"]),
        m=float(opts["M"]),
        delta=delta,
        output_dir=Path(opts["out"]),
        dump_samples=bool(opts["dump_samples"]),
        svg=bool(opts["svg"]),
        threads=int(opts["threads"]),
        timing=bool(opts["timing"]),
    )


def _print_summary(summary: dict) -> None:
    print(f"experiment={summary['experiment']} model={summary['model']} "
          f"alpha={summary['alpha']:g} k_rule={summary['k_rule']} "
          f"reps={summary['replications']} seed={summary['master_seed']}")
    header = (f"{'n':>9} {'k':>7} {'miss%':>6} {'H(med)':>12} {'H(q25)':>12} "
              f"{'H(q75)':>12} {'ls_mean':>10} {'hill_mean':>10}")
    print(header)
    for row in summary["per_n"]:
        def cell(v, width, digits=5):
            return f"{'-':>{width}}" if v is None else f"{v:>{width}.{digits}g}"
        print(f"{row['n']:>9} "
              f"{row['k'] if row['k'] is not None else '-':>7} "
              f"{100.0 * row['miss_rate']:>5.1f}% "
              f"{cell(row['hausdorff_median'], 12)} "
              f"{cell(row['hausdorff_q25'], 12)} "
              f"{cell(row['hausdorff_q75'], 12)} "
              f"{cell(row['ls_slope_mean'], 10)} "
              f"{cell(row['hill_mean'], 10)}")
    trend = summary["hausdorff_medians_nonincreasing"]
    if trend is not None:
        verdict = "nonincreasing" if trend else "mixed"
        print(f"distance trend across n grid: {verdict}")
    for warning in summary["warnings"]:
        print(f"warning: {warning}")


def _cmd_run(args: argparse.Namespace) -> int:
    config = _config_from_options(_merge_run_options(args))
    result = run_to_dir(config)
    _print_summary(result.summary)
    out = Path(config.output_dir)
    print(f"wrote {out / 'records.csv'} ({len(result.records)} records)")
    return 0


def _cmd_counterexample(args: argparse.Namespace) -> int:
    if args.delta <= 0:
        raise ConfigError("delta must be positive")
    svg_n = args.svg_n if args.svg_n is not None else min(args.n_max, 8)
    if not 1 <= svg_n <= args.n_max:
        raise ConfigError(f"svg-n must lie in 1..{args.n_max}")
    rows = counterexample_rows(args.n_max, delta=args.delta)
    write_counterexample_outputs(rows, args.out, svg_n, delta=args.delta)
    print(f"{'n':>3} {'k_n':>9} {'hausdorff':>11} {'slope':>9} {'concentration':>14}")
    for row in rows:
        print(f"{row['n']:>3} {row['k_n']:>9} {row['hausdorff']:>11.5g} "
              f"{row['slope']:>9.5g} {row['concentration']:>14.6g}")
    print(f"wrote {Path(args.out) / 'counterexample.csv'}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_counterexample(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        raise
    except Exception:
        print("internal invariant violation:", file=sys.stderr)
        traceback.print_exc()
        return 3


if __name__ == "__main__":
    sys.exit(main())
