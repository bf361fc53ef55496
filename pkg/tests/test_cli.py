"""Command line behavior: exit codes, files, config merging."""

import json

import pytest

from tailkit.cli import main
from tailkit.harness import record_seed


def test_no_arguments_is_a_config_error(capsys):
    assert main([]) == 1
    assert "config error" in capsys.readouterr().err


def test_run_uniform_end_to_end(tmp_path, capsys):
    out = tmp_path / "res"
    code = main([
        "run", "--experiment", "uniform_qq", "--n", "100,200",
        "--reps", "2", "--seed", "7", "--out", str(out),
    ])
    captured = capsys.readouterr()
    assert code == 0
    assert (out / "records.csv").exists()
    assert (out / "summary.json").exists()
    assert (out / "uniform_qq_summary.png").exists()
    assert "experiment=uniform_qq" in captured.out
    assert "records.csv" in captured.out
    lines = (out / "records.csv").read_text().splitlines()
    assert len(lines) == 5  # header + 2 sizes x 2 reps
    # seed column records the per-replication digest
    first = lines[1].split(",")
    assert int(first[4]) == record_seed(7, "uniform_qq", 100, 0)


@pytest.mark.parametrize(
    "argv",
    [
        ["run", "--experiment", "bogus", "--n", "100"],
        ["run", "--experiment", "uniform_qq"],  # missing --n
        ["run", "--experiment", "uniform_qq", "--n", "ten"],
        ["run", "--experiment", "uniform_qq", "--n", "100", "--model", "pareto"],
        ["run", "--experiment", "thresholded", "--n", "100", "--k-rule", "fixed:1000"],
        ["run", "--experiment", "uniform_qq", "--n", "100", "--reps", "0"],
    ],
)
def test_bad_run_configs_exit_1(argv, capsys, tmp_path):
    assert main(argv + ["--out", str(tmp_path / "x")]) == 1
    assert "config error" in capsys.readouterr().err


def test_unwritable_output_exits_2(tmp_path, capsys):
    blocker = tmp_path / "blocker"
    blocker.write_text("a file, not a directory\n")
    code = main([
        "run", "--experiment", "uniform_qq", "--n", "50",
        "--out", str(blocker / "sub"),
    ])
    assert code == 2
    assert "i/o error" in capsys.readouterr().err


def test_model_defaults_per_experiment(tmp_path):
    out = tmp_path / "demo"
    code = main([
        "run", "--experiment", "limitset_demo", "--n", "500",
        "--seed", "3", "--out", str(out),
    ])
    assert code == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["model"] == "pareto_log"
    assert (out / "limitset_curve.csv").exists()


def test_config_file_merging(tmp_path):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text(
        "experiment=uniform_qq\n"
        "n=100\n"
        "reps=3\n"
        "seed=5\n"
    )
    out = tmp_path / "merged"
    # CLI seed wins over the file, file reps survive
    code = main(["run", "--config", str(cfg), "--seed", "9", "--out", str(out)])
    assert code == 0
    lines = (out / "records.csv").read_text().splitlines()
    assert len(lines) == 4  # header + 3 reps
    assert int(lines[1].split(",")[4]) == record_seed(9, "uniform_qq", 100, 0)


def test_config_file_unknown_key_exits_1(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("nonsense=1\n")
    assert main(["run", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 1
    assert "config error" in capsys.readouterr().err


def test_counterexample_subcommand(tmp_path, capsys):
    out = tmp_path / "cex"
    code = main(["counterexample", "--n-max", "4", "--out", str(out)])
    captured = capsys.readouterr()
    assert code == 0
    lines = (out / "counterexample.csv").read_text().splitlines()
    assert lines[0] == "n,k_n,hausdorff,slope,concentration"
    assert len(lines) == 5
    assert (out / "counterexample_n4_rep0.svg").exists()  # min(n_max, 8)
    assert "counterexample.csv" in captured.out


def test_counterexample_svg_n_selection(tmp_path):
    out = tmp_path / "cex2"
    assert main(["counterexample", "--n-max", "5", "--svg-n", "2",
                 "--out", str(out)]) == 0
    assert (out / "counterexample_n2_rep0.svg").exists()


@pytest.mark.parametrize(
    "argv",
    [
        ["counterexample", "--n-max", "4", "--svg-n", "9"],
        ["counterexample", "--n-max", "0"],
        ["counterexample", "--n-max", "40"],
        ["counterexample", "--delta", "-1"],
    ],
)
def test_bad_counterexample_configs_exit_1(argv, tmp_path, capsys):
    assert main(argv + ["--out", str(tmp_path / "x")]) == 1
    assert "config error" in capsys.readouterr().err


def test_svg_flag_writes_scene_files(tmp_path):
    out = tmp_path / "withsvg"
    code = main([
        "run", "--experiment", "uniform_qq", "--n", "50", "--reps", "1",
        "--svg", "--out", str(out),
    ])
    assert code == 0
    assert (out / "uniform_qq_n50_rep0.svg").exists()


def test_console_entry_point_matches_main():
    import importlib.metadata as md

    eps = md.entry_points(group="console_scripts")
    ours = [ep for ep in eps if ep.name == "tailkit"]
    assert ours and ours[0].value == "tailkit.cli:main"
