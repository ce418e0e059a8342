import json

import pytest
from click.testing import CliRunner

from scripts.finsler_cli import EXIT_CONFIG, EXIT_FAIL, EXIT_PASS, cli

FAILING = """
metric.kind = randers
metric.n = 3
metric.params.b = 0.3, 0.1, 0
immersion.kind = graph
immersion.m = 2
run.points = 1
run.checks = jets
tol.jets = 0
"""


@pytest.fixture
def runner() -> CliRunner:
    """Click test runner"""
    return CliRunner()


@pytest.mark.unit
@pytest.mark.cli
class TestListCommands:
    """Tests for the listing commands"""

    def test_list_scenarios(self, runner):
        """
        Test that list-scenarios prints every shipped scenario.

        One name per line.
        """
        result = runner.invoke(cli, ["list-scenarios"])

        assert result.exit_code == 0
        assert "euclidean-plane" in result.output.splitlines()
        assert "randers-graph" in result.output.splitlines()

    def test_list_checks(self, runner):
        """
        Test that list-checks prints families and their identities.

        Identities are indented under their family.
        """
        result = runner.invoke(cli, ["list-checks"])

        lines = result.output.splitlines()
        assert result.exit_code == 0
        assert "ambient" in lines
        assert "  ambient.metricity.h_g" in lines
        assert "  compare.deformation.h10" in lines


@pytest.mark.unit
@pytest.mark.cli
class TestRunCommand:
    """Tests for run and its exit codes"""

    def test_machine_report(self, runner):
        """
        Test that a passing run prints the machine report and exits 0.

        --checks, --points and --seed override the scenario.
        """
        result = runner.invoke(
            cli,
            [
                "run",
                "euclidean-plane",
                "--format",
                "machine",
                "--checks",
                "metric",
                "--points",
                "1",
                "--seed",
                "0x2A",
            ],
        )

        assert result.exit_code == EXIT_PASS
        report = json.loads(result.stdout)
        assert report["summary"]["verdict"] == "pass"
        assert report["scenario"]["run"]["seed"] == 0x2A
        assert report["scenario"]["run"]["checks"] == ["metric"]

    def test_report_to_file(self, runner, tmp_path):
        """
        Test that --out writes the report to a file instead of stdout.

        The human report starts with the scenario name.
        """
        out = tmp_path / "report.txt"

        result = runner.invoke(
            cli,
            ["run", "euclidean-plane", "--checks", "metric", "--points", "1", "--out", str(out)],
        )

        assert result.exit_code == EXIT_PASS
        assert out.read_text(encoding="utf-8").startswith("Scenario: euclidean-plane")
        assert "Scenario:" not in result.stdout

    def test_asserted_failure(self, runner, tmp_path):
        """
        Test that an asserted failure exits 1.

        A zero tolerance on finite-difference partials cannot pass.
        """
        path = tmp_path / "strict.scenario"
        path.write_text(FAILING, encoding="utf-8")

        result = runner.invoke(cli, ["run", str(path)])

        assert result.exit_code == EXIT_FAIL
        assert "Verdict: FAIL" in result.stdout

    @pytest.mark.parametrize(
        "args",
        [
            ["run", "no-such-scenario"],
            ["run", "euclidean-plane", "--checks", "geodesics"],
            ["run", "euclidean-plane", "--seed", "xyz"],
            ["run", "euclidean-plane", "--points", "0"],
            ["run", "euclidean-plane", "--format", "yaml"],
        ],
    )
    def test_configuration_errors(self, runner, args):
        """
        Test that configuration errors exit 2.

        Unknown scenarios and families, bad seeds, point counts and formats.
        """
        result = runner.invoke(cli, args)

        assert result.exit_code == EXIT_CONFIG

    def test_invalid_scenario_file(self, runner, tmp_path):
        """
        Test that an invalid scenario file exits 2 without a report.

        The unknown key is a configuration error.
        """
        path = tmp_path / "broken.scenario"
        path.write_text("metric.kind = euclidean\nmetric.colour = red\n", encoding="utf-8")

        result = runner.invoke(cli, ["run", str(path)])

        assert result.exit_code == EXIT_CONFIG
        assert "Verdict" not in result.stdout
