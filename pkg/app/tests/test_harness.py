import json
import math

import pytest

from app.compare import ComparisonRow, RowMode, error_row, residual_row
from app.errors import ScenarioError
from app.harness import (
    CATALOG,
    FAMILIES,
    ScenarioRunner,
    draw_points,
    emit_report,
    list_scenarios,
    load_scenario,
    parse_scenario,
    run_scenario,
    summarize,
)
from app.harness.runner import matches, tolerance_override
from app.submanifold import build_immersion

SHIPPED = [
    "euclidean-plane",
    "euclidean-sphere2",
    "randers-graph",
    "riemannian-sphere-chart-linear",
]

MINIMAL = """
metric.kind = euclidean
metric.n = 3
immersion.kind = plane
immersion.m = 2
"""


@pytest.fixture
def minimal_text() -> str:
    """Smallest valid scenario text"""
    return MINIMAL


@pytest.fixture
def quick_scenario():
    """Euclidean plane restricted to two points and the metric family"""
    return parse_scenario(MINIMAL + "run.points = 2\nrun.checks = metric\n", name="quick")


@pytest.mark.unit
@pytest.mark.harness
class TestScenarioParsing:
    """Tests for scenario file parsing and validation"""

    def test_minimal_defaults(self, minimal_text, test_settings):
        """
        Test that a minimal scenario gets the harness defaults.

        Points, seed and the full check selection come from settings.
        """
        scenario = parse_scenario(minimal_text, name="minimal")

        assert scenario.name == "minimal"
        assert scenario.run.points == test_settings.HARNESS.DEFAULT_POINTS
        assert scenario.run.seed == 0xF175
        assert scenario.run.checks is None
        assert scenario.immersion.normal_delta == "induced"

    def test_values(self):
        """
        Test that lists, matrices, hex numbers, comments and tolerances parse.

        A matrix is its rows separated by ';'.
        """
        text = (
            "name = custom-name  # trailing comment\n"
            "metric.kind = randers\n"
            "metric.n = 3\n"
            "metric.params.a = 1, 0, 0; 0, 1, 0; 0, 0, 1\n"
            "metric.params.b = 0.3, 0.1, 0\n"
            "metric.box.x3 = -1, 1\n"
            "immersion.kind = graph\n"
            "immersion.m = 2\n"
            "run.seed = 0x2A\n"
            "run.checks = ambient, compare.torsion\n"
            "tol.compare.curvature = 1e-5\n"
        )

        scenario = parse_scenario(text)

        assert scenario.name == "custom-name"
        assert scenario.metric.params["a"] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        assert scenario.metric.params["b"] == [0.3, 0.1, 0]
        assert scenario.metric.box == {"x3": (-1.0, 1.0)}
        assert scenario.run.seed == 42
        assert scenario.run.checks == ("ambient", "compare.torsion")
        assert scenario.tolerances == {"compare.curvature": 1e-5}

    def test_empty_checks(self, minimal_text):
        """
        Test that an empty run.checks selects nothing.

        An absent key selects every family; an empty one selects none.
        """
        scenario = parse_scenario(minimal_text + "run.checks =\n")

        assert scenario.run.checks == ()

    @pytest.mark.parametrize(
        "text,key,line",
        [
            (
                "metric.kind = euclidean\nimmersion.kind = plane\nimmersion.m = 2\n",
                "metric.n",
                None,
            ),
            (MINIMAL + "metric.p = -1\n", "metric.p", 6),
            (MINIMAL + "metric.colour = red\n", "metric.colour", 6),
            (MINIMAL + "metric.params.b = 0.3, abc\n", "metric.params.b", 6),
            (MINIMAL + "metric.n = 4\n", "metric.n", 6),
            (MINIMAL + "run.points =\n", "run.points", 6),
        ],
    )
    def test_errors_name_key_and_line(self, text, key, line):
        """
        Test that configuration errors name the offending key and line.

        Covers a missing key, an invalid value, an unknown key, a malformed
        number, a duplicate and a missing value.
        """
        with pytest.raises(ScenarioError) as info:
            parse_scenario(text)

        assert info.value.key == key
        assert info.value.line == line
        assert key in str(info.value)

    @pytest.mark.parametrize(
        "extra",
        [
            "this line has no equals sign\n",
            "immersion.m = 3\n",
            "immersion.box.u3 = 0, 1\n",
            "immersion.box.u1 = 1, 0\n",
            "immersion.params.normal_delta = sideways\n",
            "run.points = 0\n",
            "tol.ambient = -1e-3\n",
        ],
    )
    def test_invalid_scenarios(self, extra):
        """
        Test that structurally invalid scenarios raise ScenarioError.

        m must be below n, box keys must exist and be nonempty, at least one
        point must be drawn and tolerances cannot be negative.
        """
        text = MINIMAL
        if extra.startswith("immersion.m"):
            text = MINIMAL.replace("immersion.m = 2\n", "")

        with pytest.raises(ScenarioError):
            parse_scenario(text + extra)


@pytest.mark.unit
@pytest.mark.harness
class TestScenarioFiles:
    """Tests for shipped scenarios and loading from files"""

    def test_list_shipped(self):
        """
        Test that every shipped scenario is listed.

        Names are file stems, sorted.
        """
        names = list_scenarios()

        assert all(name in names for name in SHIPPED)
        assert names == sorted(names)

    @pytest.mark.parametrize("name", SHIPPED)
    def test_load_shipped(self, name):
        """
        Test that each shipped scenario loads and validates.

        All shipped scenarios use ten points and the default seed.
        """
        scenario = load_scenario(name)

        assert scenario.name == name
        assert scenario.run.points == 10
        assert scenario.run.seed == 0xF175

    def test_load_path(self, tmp_path, minimal_text):
        """
        Test that a scenario can be loaded from a file path.

        The file stem becomes the scenario name.
        """
        path = tmp_path / "mine.scenario"
        path.write_text(minimal_text, encoding="utf-8")

        assert load_scenario(str(path)).name == "mine"

    def test_load_unknown(self):
        """
        Test that an unknown name raises ScenarioError listing shipped names.

        Neither a file nor a shipped scenario matches.
        """
        with pytest.raises(ScenarioError, match="euclidean-plane"):
            load_scenario("no-such-scenario")

    def test_overrides(self):
        """
        Test that CLI overrides replace the run settings only.

        The original scenario is left unchanged.
        """
        scenario = load_scenario("randers-graph")

        changed = scenario.with_overrides(points=3, seed=7, checks=("ambient",))

        assert (changed.run.points, changed.run.seed, changed.run.checks) == (3, 7, ("ambient",))
        assert scenario.run.points == 10
        assert changed.metric == scenario.metric
        assert scenario.with_overrides() is scenario


@pytest.mark.unit
@pytest.mark.harness
class TestSummary:
    """Tests for row selection, tolerances and the verdict"""

    def test_prefix_matching(self):
        """
        Test that selection matches whole dotted components only.

        "ambient.metric" must not select "ambient.metricity.h_g".
        """
        assert matches("ambient.metricity.h_g", "ambient")
        assert matches("ambient.metricity.h_g", "ambient.metricity.h_g")
        assert not matches("ambient.metricity.h_g", "ambient.metric")

    def test_longest_tolerance_prefix(self):
        """
        Test that the longest matching tolerance prefix wins.

        A family-wide override is refined by an identity-level one.
        """
        tolerances = {"compare": 1e-4, "compare.curvature.rh": 1e-3}

        assert tolerance_override("compare.curvature.rh", tolerances) == 1e-3
        assert tolerance_override("compare.curvature.pv", tolerances) == 1e-4
        assert tolerance_override("ambient.torsion.t00", tolerances) is None

    def test_verdict(self):
        """
        Test that only asserted failures fail the run.

        Informational failures and error rows are counted but do not fail it.
        """
        passing = residual_row("a.ok", [1.0], [1.0], 1e-8)
        informational = residual_row("b.info", [1.0], [2.0], 1e-8, mode=RowMode.INFORMATIONAL)
        error = error_row("c.domain_error", ValueError("boom"))

        summary = summarize([passing, informational, error])

        assert summary.passed
        counts = (summary.asserted, summary.failed, summary.informational, summary.errors)
        assert counts == (1, 0, 1, 1)

        failing = residual_row("a.bad", [1.0], [2.0], 1e-8)
        assert summarize([passing, failing]).verdict == "fail"

    def test_only_domain_errors_fail(self):
        """
        Test that a run whose every row is a domain error fails.

        Nothing was verified, so the verdict must not read pass. A run with no
        rows at all is an empty selection and still passes.
        """
        errors = [
            error_row("frame.domain_error", ValueError("tied pivots")).at_point(index)
            for index in range(3)
        ]

        summary = summarize(errors)

        assert summary.verdict == "fail"
        assert (summary.asserted, summary.failed, summary.errors) == (0, 0, 3)
        assert summarize([]).passed

    def test_nan_is_worst(self):
        """
        Test that a NaN residual is reported as the worst of its identity.

        A single non-finite evaluation must be visible in the summary.
        """
        rows = [
            residual_row("a.x", [1.0], [1.0], 1e-8),
            residual_row("a.x", [math.nan], [1.0], 1e-8).at_point(1),
        ]

        (identity,) = summarize(rows).identities

        assert math.isnan(identity.max_rel_residual)
        assert identity.failed == 1
        assert identity.passed is False

    def test_catalog_covers_families(self):
        """
        Test that every family is listed in the catalog.

        list-checks prints the catalog.
        """
        assert list(CATALOG) == list(FAMILIES)
        for family, identities in CATALOG.items():
            assert all(identity.startswith(family + ".") for identity in identities)


@pytest.mark.unit
@pytest.mark.harness
class TestRunner:
    """Tests for sampling, the runner steps and report rendering"""

    def test_draw_points_reproducible(self, sphere_chart3, geodesic_slice):
        """
        Test that sampling is a function of the seed.

        Every drawn point lies inside the immersion box.
        """
        first = draw_points(sphere_chart3, geodesic_slice, 4, seed=11)
        second = draw_points(sphere_chart3, geodesic_slice, 4, seed=11)

        assert first == second
        assert all(geodesic_slice.contains(point.u) for point in first)

    def test_draw_points_unsatisfiable(self, euclidean):
        """
        Test that an immersion mapping outside the metric box fails to sample.

        The plane shifted to x3 = 5 never enters the box (−2, 2)³.
        """
        shifted = build_immersion("linear", 2, 3, {"offset": [0, 0, 5]})

        with pytest.raises(ScenarioError) as info:
            draw_points(euclidean, shifted, 1, seed=1, max_draws=20)
        assert info.value.key == "immersion.box"

    def test_steps_in_order(self, quick_scenario):
        """
        Test that the runner refuses to skip steps.

        build() needs every previous step.
        """
        runner = ScenarioRunner(quick_scenario)

        with pytest.raises(ValueError):
            runner.build()
        with pytest.raises(ValueError):
            runner.draw_points()

    def test_unknown_family(self, minimal_text):
        """
        Test that selecting an unknown family is a configuration error.

        The error names run.checks.
        """
        scenario = parse_scenario(minimal_text + "run.checks = metric, geodesics\n")

        with pytest.raises(ScenarioError) as info:
            run_scenario(scenario)
        assert info.value.key == "run.checks"

    def test_quick_run(self, quick_scenario):
        """
        Test that a selected family runs at every point and passes.

        Rows are sorted by point, then identity.
        """
        report = run_scenario(quick_scenario)

        assert report.summary.passed
        assert {row.point for row in report.rows} == {0, 1}
        assert all(row.identity.startswith("metric.") for row in report.rows)
        keys = [(row.point, row.identity) for row in report.rows]
        assert keys == sorted(keys)

    def test_lift_rows_pass_for_randers(self):
        """
        Test that the homogeneous lift rows pass for a Randers ambient with p ≠ 1.

        The vertical block scales with degree −2 and h(y, y) is p² at every point.
        """
        scenario = parse_scenario(
            "metric.kind = randers\nmetric.n = 3\nmetric.p = 2\n"
            "metric.params.b = 0.3, 0.1, 0\nimmersion.kind = graph\nimmersion.m = 2\n"
            "run.points = 2\nrun.checks = metric.homogeneity, metric.lift_contraction\n",
            name="lift",
        )

        report = run_scenario(scenario)

        identities = {row.identity for row in report.rows}
        assert {"metric.homogeneity.h", "metric.lift_contraction"} <= identities
        assert report.summary.passed

    def test_empty_selection(self, minimal_text):
        """
        Test that an empty selection produces an empty passing report.

        The human report says so instead of printing empty tables.
        """
        report = run_scenario(parse_scenario(minimal_text + "run.points = 1\nrun.checks =\n"))

        assert report.rows == []
        assert report.summary.passed
        assert "No checks selected." in emit_report(report, "human")

    def test_machine_report_deterministic(self, quick_scenario):
        """
        Test that two runs give the same machine report except the wall time.

        Floats are written with 17 significant digits and keys in a fixed order.
        """
        first = json.loads(emit_report(run_scenario(quick_scenario), "machine"))
        second = json.loads(emit_report(run_scenario(quick_scenario), "machine"))

        assert list(first) == [
            "schema_version",
            "engine_version",
            "scenario",
            "rows",
            "summary",
            "wall_time_s",
        ]
        first.pop("wall_time_s")
        second.pop("wall_time_s")
        assert first == second
        assert first["summary"]["verdict"] == "pass"

    def test_human_report(self, quick_scenario):
        """
        Test that the human report shows the verdict and both tables.

        Passing rows are marked "yes".
        """
        text = emit_report(run_scenario(quick_scenario), "human")

        assert "Verdict: PASS" in text
        assert "Summary" in text and "Rows" in text
        assert "metric.euler" in text
        assert "yes" in text

    def test_unknown_format(self, quick_scenario):
        """
        Test that an unknown report format raises ValueError.

        Only human and machine are supported.
        """
        with pytest.raises(ValueError):
            emit_report(run_scenario(quick_scenario), "yaml")

    def test_tolerance_override_applied(self):
        """
        Test that a tolerance override replaces the row tolerance.

        Finite differences of the Randers F² carry truncation error, so a zero
        tolerance fails the row.
        """
        scenario = load_scenario("randers-graph").model_copy(update={"tolerances": {"jets": 0.0}})

        report = run_scenario(scenario.with_overrides(points=1, checks=("jets",)))

        assert all(row.tolerance == 0.0 for row in report.rows)
        assert not report.summary.passed


@pytest.mark.harness
@pytest.mark.slow
class TestShippedScenarios:
    """End-to-end runs of the shipped scenarios"""

    @pytest.mark.parametrize("name", SHIPPED)
    def test_scenario_passes(self, name):
        """
        Test that every asserted identity of a shipped scenario passes.

        Two points per scenario keep the run short.
        """
        report = run_scenario(load_scenario(name).with_overrides(points=2))

        failed = [
            row.identity
            for row in report.rows
            if row.mode is RowMode.ASSERTED and not row.passed
        ]
        assert failed == []
        assert report.summary.passed
        assert all(isinstance(row, ComparisonRow) for row in report.rows)
