"""Tests for the oddcon command line, driven through click's test runner."""

import json

import pytest
from click.testing import CliRunner

from oddcon.cli.main import main
from oddcon.cli.suites import CURVATURE_TRIALS
from tests.test_model import CORRUPTED

NON_INVOLUTIVE = """\
chart even t
chart odd theta
rho t theta = 2
rho theta t = 2
"""


@pytest.fixture
def runner():
    return CliRunner()


def _write(tmp_path, text: str) -> str:
    path = tmp_path / "model.odd"
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestVerify:
    def test_involution_passes(self, runner):
        result = runner.invoke(main, ["verify", "susy-r11", "--suite", "involution"])
        assert result.exit_code == 0, result.output
        assert "involution" in result.output

    def test_machine_report_is_deterministic(self, runner):
        args = ["verify", "canonical-r11", "--suite", "axioms", "--trials", "3", "--format"]
        first = runner.invoke(main, args + ["machine"])
        second = runner.invoke(main, args + ["machine"])
        assert first.exit_code == 0
        assert first.output == second.output
        document = json.loads(first.output)
        assert set(document) == {"target", "suite", "seed", "trials", "result", "checks"}
        assert document["result"] == "pass"
        assert document["trials"] == 3

    def test_seed_from_environment(self, runner):
        result = runner.invoke(
            main,
            ["verify", "susy-r11", "--suite", "involution", "--format", "machine"],
            env={"ODDCON_SEED": "5"},
        )
        assert json.loads(result.output)["seed"] == 5

    def test_non_involution_fails_tensoriality(self, runner, tmp_path):
        model = _write(tmp_path, NON_INVOLUTIVE)
        result = runner.invoke(
            main, ["verify", model, "--suite", "tensoriality", "--trials", "4"]
        )
        assert result.exit_code == 1

    def test_non_involution_fails_involution_suite(self, runner, tmp_path):
        model = _write(tmp_path, NON_INVOLUTIVE)
        result = runner.invoke(
            main, ["verify", model, "--suite", "involution", "--format", "machine"]
        )
        assert result.exit_code == 1
        checks = json.loads(result.output)["checks"]
        assert checks[0]["status"] == "fail"
        assert "residual" in checks[0]["witness"]

    def test_corrupted_model_is_an_input_error(self, runner, tmp_path):
        model = _write(tmp_path, CORRUPTED)
        result = runner.invoke(main, ["verify", model])
        assert result.exit_code == 2
        assert "line 5, column 19" in result.output

    def test_unknown_target(self, runner):
        result = runner.invoke(main, ["verify", "no-such-entry"])
        assert result.exit_code == 2

    def test_help_states_curvature_cap(self, runner):
        result = runner.invoke(main, ["verify", "--help"])
        assert result.exit_code == 0
        help_text = " ".join(result.output.split())
        assert f"curvature checks use at most {CURVATURE_TRIALS}" in help_text

    def test_unknown_suite(self, runner):
        result = runner.invoke(main, ["verify", "susy-r11", "--suite", "nothing"])
        assert result.exit_code == 2


class TestComponents:
    def test_susy_torsion(self, runner):
        result = runner.invoke(main, ["components", "susy-r11", "--object", "torsion"])
        assert result.exit_code == 0, result.output
        assert "D: -2" in result.output
        assert "2 vanishing components" in result.output

    def test_model_frame_requires_a_frame(self, runner, tmp_path):
        model = _write(tmp_path, NON_INVOLUTIVE)
        result = runner.invoke(main, ["components", model, "--frame", "model"])
        assert result.exit_code == 2


class TestCatalog:
    def test_list(self, runner):
        result = runner.invoke(main, ["catalog", "list"])
        assert result.exit_code == 0
        assert "canonical" in result.output

    def test_show(self, runner):
        result = runner.invoke(main, ["catalog", "show", "susy-r11"])
        assert result.exit_code == 0
        assert result.output.startswith("chart even t\nchart odd theta\n")
        assert "frame P even t = 1" in result.output

    def test_show_unknown(self, runner):
        result = runner.invoke(main, ["catalog", "show", "no-such-entry"])
        assert result.exit_code == 2
