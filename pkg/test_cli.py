#!/usr/bin/env python3
"""
命令行测试
通过 main(argv) 运行子命令，检查输出内容与退出码
"""

import csv
import io
import json

import pytest

from main import main
from propint.commands.isoquant_command import expand_range
from propint.errors import DomainError
from propint.intervals import SampleSummary, Target, confidence_interval
from propint.report import render_json
from propint.settings import SEED_ENV

POPULATION_GOLDEN = (0.544301577788208, 0.742768160810678)
UNSAMPLED_GOLDEN = (0.49916421640973, 0.775811359434426)

EXAMPLE_ARGS = ["ci", "--alpha", "0.05", "--n", "60", "--successes", "39", "--population-size", "200"]


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("PROPINT_SEED", "PROPINT_CONFIG", "PROPINT_LOG_DIR", "PROPINT_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCi:
    def test_population_text_block(self, capsys):
        code, out, _ = run(capsys, *EXAMPLE_ARGS, "--target", "population")
        assert code == 0
        assert out.splitlines() == [
            "    Confidence Interval (CI)",
            "",
            "95.00% CI for proportion for population of size 200",
            "Interval uses 60 binary data points with sample",
            "proportion = 0.6500",
            "",
            "[0.544302, 0.742768]",
        ]

    def test_unsampled_text(self, capsys):
        code, out, _ = run(capsys, *EXAMPLE_ARGS, "--target", "unsampled")
        assert code == 0
        assert "95.00% CI for proportion for unsampled population of size 140" in out
        assert "[0.499164, 0.775811]" in out

    def test_population_json_full_precision(self, capsys):
        code, out, _ = run(capsys, *EXAMPLE_ARGS, "--target", "population", "--format", "json")
        assert code == 0
        record = json.loads(out)
        assert record["lower"] == pytest.approx(POPULATION_GOLDEN[0], abs=1e-7)
        assert record["upper"] == pytest.approx(POPULATION_GOLDEN[1], abs=1e-7)
        assert record["N"] == 200
        assert record["effective_n"] == pytest.approx(85.2857142857, abs=1e-9)

    @pytest.mark.parametrize("target", list(Target))
    def test_json_matches_library_exactly(self, capsys, target):
        code, out, _ = run(capsys, *EXAMPLE_ARGS, "--target", target.value, "--format", "json")
        assert code == 0
        record = json.loads(out)
        interval = confidence_interval(target, 0.05, SampleSummary.from_counts(60, 39), 200.0)
        assert record["lower"] == interval.lower
        assert record["upper"] == interval.upper
        assert record["width"] == interval.width

    @pytest.mark.parametrize("argv", [
        [*EXAMPLE_ARGS, "--target", "unsampled"],
        ["ci", "--n", "10", "--successes", "0"],
        ["plan", "--width", "0.5"],
    ])
    def test_json_regenerates_identically(self, capsys, argv):
        code, out, _ = run(capsys, "--format", "json", *argv)
        assert code == 0
        assert render_json([json.loads(out)]) == out.rstrip("\n")

    def test_json_table_regenerates_identically(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "isoquant", "--effective-n", "50", "--m-range", "10:50:10")
        assert code == 0
        assert render_json(json.loads(out), as_table=True) == out.rstrip("\n")

    def test_global_format_flag(self, capsys):
        code, out, _ = run(capsys, "--format", "json", *EXAMPLE_ARGS, "--target", "unsampled")
        assert code == 0
        record = json.loads(out)
        assert record["lower"] == pytest.approx(UNSAMPLED_GOLDEN[0], abs=1e-7)
        assert record["upper"] == pytest.approx(UNSAMPLED_GOLDEN[1], abs=1e-7)

    def test_csv(self, capsys):
        code, out, _ = run(capsys, *EXAMPLE_ARGS, "--target", "population", "--format", "csv")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 1
        assert float(rows[0]["lower"]) == pytest.approx(POPULATION_GOLDEN[0], abs=1e-12)
        assert rows[0]["label"] == ""

    def test_rule_of_three_with_defaults(self, capsys):
        code, out, _ = run(capsys, "ci", "--n", "10", "--successes", "0")
        assert code == 0
        assert "proportion parameter for infinite population" in out
        assert "[0.000000, 0.277533]" in out

    def test_infinite_population_json(self, capsys):
        code, out, _ = run(capsys, "ci", "--n", "10", "--successes", "3", "--format", "json")
        assert code == 0
        assert json.loads(out)["N"] == "inf"

    def test_data_file_with_header(self, capsys, tmp_path):
        path = tmp_path / "SAMPLE.csv"
        path.write_text("x\n" + "1\n" * 39 + "\n" + "0\n" * 21, encoding="utf-8")
        code, out, _ = run(capsys, "ci", "--data", str(path), "--population-size", "200", "--target", "population")
        assert code == 0
        assert "Interval uses 60 binary data points from data SAMPLE with sample" in out
        assert "[0.544302, 0.742768]" in out

    def test_data_file_single_value(self, capsys, tmp_path):
        path = tmp_path / "one.txt"
        path.write_text("1\n", encoding="utf-8")
        code, out, _ = run(capsys, "ci", "--data", str(path), "--format", "json")
        assert code == 0
        record = json.loads(out)
        assert record["n"] == 1
        assert record["x_bar"] == 1.0

    def test_bad_data_token_exit_code(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1\n0\n2\n", encoding="utf-8")
        code, out, err = run(capsys, "ci", "--data", str(path))
        assert code == 3
        assert out == ""
        assert f"{path}:3:" in err

    def test_missing_data_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "ci", "--data", str(tmp_path / "missing.txt"))
        assert code == 3
        assert "propint: error:" in err

    def test_empty_data_file(self, capsys, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("header\n\n", encoding="utf-8")
        code, _, _ = run(capsys, "ci", "--data", str(path))
        assert code == 3

    @pytest.mark.parametrize("argv", [
        ["ci", "--alpha", "1.5", "--n", "10", "--successes", "3"],
        ["ci", "--n", "300", "--successes", "3", "--population-size", "200"],
        ["ci", "--n", "10", "--successes", "11"],
        ["ci", "--n", "10"],
        ["ci", "--n", "10", "--successes", "3", "--data", "x.txt"],
        ["ci", "--n", "10", "--successes", "3", "--population-size", "0"],
        ["ci", "--n", "10", "--successes", "3", "--target", "everything"],
    ])
    def test_usage_errors(self, capsys, argv):
        code, out, _ = run(capsys, *argv)
        assert code == 2
        assert out == ""


class TestPlan:
    def test_assumed_proportion(self, capsys):
        code, out, _ = run(capsys, "plan", "--width", "0.2", "--alpha", "0.05", "--assumed-prop", "0", "--format", "json")
        assert code == 0
        record = json.loads(out)
        assert record["required_n"] == pytest.approx(15.365835, abs=1e-5)
        assert record["practical_n"] == 16

    def test_conservative_exact(self, capsys):
        code, out, _ = run(capsys, "plan", "--width", "0.5", "--alpha", "0.05", "--conservative", "exact",
                           "--format", "json")
        assert code == 0
        record = json.loads(out)
        assert record["required_n"] == pytest.approx(11.524376, abs=1e-5)
        assert record["practical_n"] == 12
        assert record["paper_theorem14"] == pytest.approx(3.841459, abs=5e-6)
        assert record["conservative_forms_agree"] is False

    def test_conservative_text_with_ceil(self, capsys):
        code, out, _ = run(capsys, "plan", "--width", "0.5", "--ceil")
        assert code == 0
        assert out.strip().splitlines()[-1] == "n = 12"

    def test_near_unit_width(self, capsys):
        code, out, _ = run(capsys, "plan", "--width", "0.99", "--assumed-prop", "0.5", "--format", "json")
        assert code == 0
        record = json.loads(out)
        assert 0 < record["required_n"] <= record["practical_n"]

    def test_assumed_range(self, capsys):
        code, out, _ = run(capsys, "plan", "--width", "0.2", "--assumed-range", "0.3:0.7", "--format", "json")
        assert code == 0
        assert json.loads(out)["required_n"] == pytest.approx(92.195012, abs=1e-4)

    def test_finite_population(self, capsys):
        code, out, _ = run(capsys, "plan", "--width", "0.2", "--assumed-prop", "0.5", "--population-size", "500",
                           "--target", "unsampled", "--format", "json")
        assert code == 0
        record = json.loads(out)
        assert record["mode"] == "finite"
        assert record["min_width_exact"] < record["min_width_closed_form"]

    @pytest.mark.parametrize("argv", [
        ["plan", "--width", "1.2"],
        ["plan", "--width", "0.2", "--alpha", "0"],
        ["plan"],
        ["plan", "--width", "0.2", "--assumed-prop", "0.5", "--assumed-range", "0.1:0.2"],
        ["plan", "--width", "0.05", "--assumed-prop", "0.5", "--population-size", "200", "--target", "unsampled"],
    ])
    def test_usage_errors(self, capsys, argv):
        code, _, _ = run(capsys, *argv)
        assert code == 2


class TestIsoquant:
    def test_inverse_of_worked_example(self, capsys):
        code, out, _ = run(capsys, "isoquant", "--effective-n", "85.2857142857", "--m-range", "140:140:1",
                           "--format", "json")
        assert code == 0
        rows = json.loads(out)
        assert len(rows) == 1
        assert rows[0]["m"] == 140.0
        assert rows[0]["n"] == pytest.approx(60.0, abs=1e-6)

    def test_zero_effective_size(self, capsys):
        code, out, _ = run(capsys, "isoquant", "--effective-n", "0", "--m-range", "1:10:1", "--format", "json")
        assert code == 0
        rows = json.loads(out)
        assert len(rows) == 10
        assert all(row["n"] == 0 for row in rows)

    def test_increasing_concave(self, capsys):
        code, out, _ = run(capsys, "isoquant", "--effective-n", "50", "--m-range", "10:1000:10", "--format", "csv")
        assert code == 0
        n = [float(row["n"]) for row in csv.DictReader(io.StringIO(out))]
        assert len(n) == 100
        assert all(b > a for a, b in zip(n, n[1:]))
        assert all(n[i + 1] - n[i] < n[i] - n[i - 1] for i in range(1, len(n) - 1))

    def test_text_table(self, capsys):
        code, out, _ = run(capsys, "isoquant", "--effective-n", "10", "--m-range", "20:40:10", "--kind", "unsampled")
        assert code == 0
        assert out.splitlines()[0] == "Isoquant (unsampled) for effective sample size 10"
        assert len(out.strip().splitlines()) == 6

    @pytest.mark.parametrize("argv", [
        ["isoquant", "--effective-n", "10", "--m-range", "10:1:1"],
        ["isoquant", "--effective-n", "10", "--m-range", "1:10:0"],
        ["isoquant", "--effective-n", "10", "--m-range", "1:10"],
        ["isoquant", "--effective-n", "10", "--m-range", "5:20:5", "--kind", "unsampled"],
    ])
    def test_usage_errors(self, capsys, argv):
        code, _, _ = run(capsys, *argv)
        assert code == 2

    def test_expand_range_includes_end(self):
        assert expand_range(0.1, 0.3, 0.1) == pytest.approx([0.1, 0.2, 0.3])
        with pytest.raises(DomainError):
            expand_range(1, 0, 1)


class TestCoverage:
    def test_exact_superpopulation(self, capsys):
        code, out, _ = run(capsys, "coverage", "--mode", "exact", "--theta", "0.5", "--n", "30", "--alpha", "0.05",
                           "--format", "json")
        assert code == 0
        record = json.loads(out)
        assert record["coverage"] == pytest.approx(0.957226054743, abs=1e-9)
        assert record["reps_or_outcomes"] == 31

    def test_exact_census_unsampled(self, capsys):
        code, out, _ = run(capsys, "coverage", "--mode", "exact", "--n", "50", "--population-size", "50",
                           "--successes-in-population", "20", "--target", "unsampled")
        assert code == 0
        assert "coverage = 1.000000" in out

    def test_exact_finite_from_theta(self, capsys):
        code, out, _ = run(capsys, "coverage", "--theta", "0.705", "--n", "60", "--population-size", "200",
                           "--target", "population", "--format", "json")
        assert code == 0
        assert json.loads(out)["coverage"] == pytest.approx(0.957809643839, abs=1e-9)

    def test_monte_carlo_single_rep(self, capsys):
        code, out, _ = run(capsys, "coverage", "--mode", "mc", "--reps", "1", "--seed", "7", "--theta", "0.3",
                           "--n", "20", "--format", "json")
        assert code == 0
        assert json.loads(out)["coverage"] in (0.0, 1.0)

    def test_monte_carlo_reproducible(self, capsys):
        argv = ["coverage", "--mode", "mc", "--reps", "20000", "--seed", "5", "--theta", "0.3", "--n", "40",
                "--population-size", "400", "--target", "population", "--format", "json"]
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv, "--workers", "3")
        assert first == second

    def test_seed_precedence(self, capsys, monkeypatch):
        argv = ["coverage", "--mode", "mc", "--reps", "100", "--theta", "0.3", "--n", "20", "--format", "json"]
        _, out, _ = run(capsys, *argv)
        assert json.loads(out)["seed"] == 20240101

        monkeypatch.setenv(SEED_ENV, "77")
        _, out, _ = run(capsys, *argv)
        assert json.loads(out)["seed"] == 77

        _, out, _ = run(capsys, *argv, "--seed", "9")
        assert json.loads(out)["seed"] == 9

    def test_bad_seed_env(self, capsys, monkeypatch):
        monkeypatch.setenv(SEED_ENV, "abc")
        code, _, err = run(capsys, "coverage", "--mode", "mc", "--reps", "10", "--theta", "0.3", "--n", "20")
        assert code == 2
        assert SEED_ENV in err

    @pytest.mark.parametrize("argv", [
        ["coverage", "--n", "30"],
        ["coverage", "--theta", "0.5", "--n", "30", "--population-size", "6000", "--target", "population"],
        ["coverage", "--theta", "0.5", "--n", "100001"],
        ["coverage", "--mode", "mc", "--n", "30"],
        ["coverage", "--mode", "mc", "--theta", "0.5", "--n", "30", "--reps", "0"],
    ])
    def test_usage_errors(self, capsys, argv):
        code, _, _ = run(capsys, *argv)
        assert code == 2


def test_config_file_changes_defaults(capsys, tmp_path):
    config = tmp_path / "defaults.json"
    config.write_text(json.dumps({"alpha": 0.1, "format": "json"}), encoding="utf-8")
    code, out, _ = run(capsys, "--config", str(config), "ci", "--n", "10", "--successes", "3")
    assert code == 0
    assert json.loads(out)["alpha"] == 0.1


def test_missing_subcommand(capsys):
    code, _, _ = run(capsys)
    assert code == 2
