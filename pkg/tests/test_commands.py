import csv
import io
import json
import math

import pytest

from config import __version__

SQRT2 = math.sqrt(2.0)

pytestmark = pytest.mark.integration


def _json(result):
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


class TestAnalyze:
    def test_werner_state(self, cli, runner):
        result = runner.invoke(
            cli, ["analyze", "--family", "werner", "--alpha", "0.5", "--format", "json"]
        )
        report = _json(result)["report"]
        assert report["p_e"] == pytest.approx(0.5, abs=1e-12)
        assert report["f_max"] == pytest.approx(SQRT2, abs=1e-12)
        assert report["g_max"] == pytest.approx(1.0, abs=1e-12)
        assert report["entangled"] is True
        assert report["chsh_violated"] is False

    def test_bell_state(self, cli, runner):
        result = runner.invoke(cli, ["analyze", "--family", "bell", "--format", "json"])
        document = _json(result)
        assert document["tool_version"] == __version__
        assert document["input"]["family"] == "bell_psi_plus"
        assert document["report"]["f_max"] == pytest.approx(2 * SQRT2, abs=1e-12)
        assert document["report"]["chsh_violated"] is True
        assert document["report"]["singular_values"] == pytest.approx([1.0, 1.0, 1.0], abs=1e-12)

    def test_oracle_and_shots_sections(self, cli, runner):
        result = runner.invoke(
            cli,
            [
                "analyze", "--family", "pure_01_10", "--k1", "0.6",
                "--oracle", "--shots", "5000", "--seed", "7", "--format", "json",
            ],
        )  # fmt: skip
        document = _json(result)
        assert document["oracle"]["f_delta"] < 1e-7
        assert document["oracle"]["g_delta"] < 1e-7
        assert document["shots"]["shots_per_term"] == 5000
        assert len(document["shots"]["terms"]) == 4

    def test_optional_sections_are_omitted(self, cli, runner):
        document = _json(runner.invoke(cli, ["analyze", "--family", "bell", "--format", "json"]))
        assert "oracle" not in document
        assert "shots" not in document

    def test_table_output(self, cli, runner):
        result = runner.invoke(cli, ["analyze", "--family", "bell", "--which", "phi_minus"])
        assert result.exit_code == 0
        assert "f_max" in result.stdout
        assert "settings_f" in result.stdout

    def test_csv_output(self, cli, runner):
        result = runner.invoke(
            cli, ["analyze", "--family", "product", "--u", "0", "0", "1", "--v", "1", "0", "0",
                  "--format", "csv"]
        )  # fmt: skip
        assert result.exit_code == 0
        rows = list(csv.reader(io.StringIO(result.stdout)))
        assert rows[0] == ["field", "value"]
        fields = dict(rows[1:])
        assert float(fields["report.p_e"]) == 0.0
        assert fields["report.entangled"] == "false"
        assert fields["report.beta_rank"] == "1"

    def test_save_state_round_trip(self, cli, runner, tmp_path):
        state_path = tmp_path / "estado.json"
        first = _json(
            runner.invoke(
                cli,
                ["analyze", "--family", "random_mixed", "--seed", "99", "--format", "json",
                 "--save-state", str(state_path)],
            )  # fmt: skip
        )
        second = _json(
            runner.invoke(cli, ["analyze", "--input", str(state_path), "--format", "json"])
        )
        assert second["input"]["family"] == "explicit"
        assert second["report"] == first["report"]
        assert second["bloch"] == first["bloch"]

        resaved_path = tmp_path / "estado2.json"
        third = _json(
            runner.invoke(
                cli,
                ["analyze", "--input", str(state_path), "--format", "json",
                 "--save-state", str(resaved_path)],
            )  # fmt: skip
        )
        assert third == second
        assert resaved_path.read_text(encoding="utf-8") == state_path.read_text(encoding="utf-8")

    def test_output_file_is_json_for_table(self, cli, runner, tmp_path):
        report_path = tmp_path / "informe.json"
        result = runner.invoke(
            cli, ["analyze", "--family", "werner", "--alpha", "1", "--output", str(report_path)]
        )
        assert result.exit_code == 0
        document = json.loads(report_path.read_text(encoding="utf-8"))
        assert document["report"]["p_e"] == pytest.approx(1.0, abs=1e-12)

    def test_unphysical_matrix_exits_3(self, cli, runner, tmp_path):
        path = tmp_path / "negativa.json"
        matrix = [[0.0] * 4 for _ in range(4)]
        for i, value in enumerate([0.5, 0.5, 0.5, -0.5]):
            matrix[i][i] = value
        path.write_text(json.dumps({"matrix": matrix}))
        result = runner.invoke(cli, ["analyze", "--input", str(path)])
        assert result.exit_code == 3
        assert "Error:" in result.stderr

    def test_non_hermitian_matrix_exits_3(self, cli, runner, tmp_path):
        path = tmp_path / "no_hermitica.json"
        matrix = [[0.25 if i == j else 0.0 for j in range(4)] for i in range(4)]
        matrix[0][1] = 0.2
        path.write_text(json.dumps({"matrix": matrix}))
        assert runner.invoke(cli, ["analyze", "--input", str(path)]).exit_code == 3

    def test_malformed_file_exits_2(self, cli, runner, tmp_path):
        path = tmp_path / "roto.json"
        path.write_text("{")
        result = runner.invoke(cli, ["analyze", "--input", str(path)])
        assert result.exit_code == 2
        assert "Error:" in result.stderr

    @pytest.mark.parametrize(
        "args",
        [
            ["--family", "werner"],
            ["--family", "werner", "--alpha", "1.5"],
            ["--family", "product", "--u", "0", "0", "2", "--v", "0", "0", "1"],
            ["--family", "bell", "--input", "estado.json"],
            [],
            ["--family", "ghz"],
        ],
    )
    def test_invalid_input_exits_2(self, cli, runner, args):
        result = runner.invoke(cli, ["analyze", *args])
        assert result.exit_code == 2
        assert result.stdout == ""


class TestSweep:
    def test_werner_rows(self, cli, runner):
        rows = _json(
            runner.invoke(
                cli, ["sweep", "--family", "werner", "--step", "0.25", "--format", "json"]
            )
        )
        assert [row["value"] for row in rows] == [0.0, 0.25, 0.5, 0.75, 1.0]
        for row in rows:
            assert row["parameter"] == "alpha"
            assert row["p_e"] == pytest.approx(row["value"], abs=1e-12)
            assert row["separable_per_cited_bound"] is (row["value"] <= 1 / 3)

    def test_chsh_threshold_crossing(self, cli, runner):
        rows = _json(
            runner.invoke(
                cli,
                ["sweep", "--family", "werner", "--start", "0.7", "--stop", "0.72",
                 "--step", "0.01", "--format", "json"],
            )  # fmt: skip
        )
        assert [row["chsh_violated"] for row in rows] == [False, True, True]

    def test_pure_family_csv_has_no_bound_column(self, cli, runner):
        result = runner.invoke(
            cli, ["sweep", "--family", "pure_01_10", "--step", "0.5", "--format", "csv"]
        )
        assert result.exit_code == 0
        rows = list(csv.DictReader(io.StringIO(result.stdout)))
        assert "separable_per_cited_bound" not in rows[0]
        assert [float(row["value"]) for row in rows] == [0.0, 0.5, 1.0]
        assert float(rows[1]["p_e"]) == pytest.approx(2 * 0.5 * math.sqrt(0.75), abs=1e-12)

    def test_single_point(self, cli, runner):
        rows = _json(
            runner.invoke(
                cli,
                ["sweep", "--family", "werner", "--start", "0.5", "--stop", "0.5", "--format",
                 "json"],
            )  # fmt: skip
        )
        assert len(rows) == 1

    @pytest.mark.parametrize(
        "args", [["--start", "1", "--stop", "0"], ["--step", "0"], ["--step", "-0.1"]]
    )
    def test_empty_range_exits_2(self, cli, runner, args):
        result = runner.invoke(cli, ["sweep", "--family", "werner", *args])
        assert result.exit_code == 2

    def test_family_without_parameter_is_rejected(self, cli, runner):
        assert runner.invoke(cli, ["sweep", "--family", "product"]).exit_code == 2


class TestVerify:
    def test_passes(self, cli, runner):
        document = _json(
            runner.invoke(
                cli, ["verify", "--count", "2", "--seed", "42", "--format", "json"]
            )
        )
        assert document["passed"] is True
        assert document["count"] == 2
        assert document["failures"] == []
        assert document["worst_f_delta"] < 1e-7

    def test_impossible_tolerance_exits_1(self, cli, runner):
        result = runner.invoke(
            cli,
            ["verify", "--count", "5", "--seed", "3", "--tolerance", "1e-300", "--restarts", "8",
             "--format", "json"],
        )  # fmt: skip
        assert result.exit_code == 1
        assert json.loads(result.stdout)["passed"] is False
        assert "FALLO" in result.stderr

    @pytest.mark.parametrize("args", [["--count", "0"], ["--tolerance", "0"], ["--seed", "-1"]])
    def test_invalid_arguments_exit_2(self, cli, runner, args):
        assert runner.invoke(cli, ["verify", *args]).exit_code == 2


class TestSimulate:
    def test_optimal_settings(self, cli, runner):
        document = _json(
            runner.invoke(
                cli,
                ["simulate", "--family", "bell", "--optimal-f", "--shots", "20000", "--seed",
                 "5", "--format", "json"],
            )  # fmt: skip
        )
        assert document["settings_source"] == "optimal_f"
        shots = document["shots"]
        assert shots["analytic"] == pytest.approx(2 * SQRT2, abs=1e-12)
        assert abs(shots["estimate"] - shots["analytic"]) < 5 * shots["standard_error"]

    def test_explicit_settings(self, cli, runner):
        document = _json(
            runner.invoke(
                cli,
                ["simulate", "--family", "bell", "--n", "0", "0", "1", "--n-prime", "1", "0", "0",
                 "--m", "0", "0", "1", "--m-prime", "1", "0", "0", "--shots", "100",
                 "--format", "json"],
            )  # fmt: skip
        )
        assert document["settings_source"] == "explicit"
        assert document["shots"]["analytic"] == pytest.approx(-2.0, abs=1e-12)

    def test_deterministic_for_seed(self, cli, runner):
        args = ["simulate", "--family", "werner", "--alpha", "0.8", "--optimal-f",
                "--shots", "1000", "--seed", "12", "--format", "json"]  # fmt: skip
        assert runner.invoke(cli, args).stdout == runner.invoke(cli, args).stdout

    @pytest.mark.parametrize(
        "args",
        [
            ["--optimal-f", "--n", "0", "0", "1"],
            ["--n", "0", "0", "1"],
            ["--optimal-f", "--shots", "0"],
        ],
    )
    def test_usage_errors_exit_2(self, cli, runner, args):
        assert runner.invoke(cli, ["simulate", "--family", "bell", *args]).exit_code == 2


def test_version(cli, runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.stdout
