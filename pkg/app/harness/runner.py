"""
Scenario execution.

ScenarioRunner evaluates a scenario in steps: build the metric and the
immersion, draw the sample points, evaluate the selected check families at
every point, and assemble the report. Rows are ordered by (point, identity)
whatever order they were produced in.
"""

import logging
import time

from app.compare import ComparisonRow, RowMode, error_row
from app.config import get_settings
from app.errors import DomainError, ScenarioError
from app.metric import MetricModel, build_metric
from app.submanifold import Immersion, SubPoint, build_immersion

from .checks import FAMILIES, PointContext
from .sampling import draw_points
from .schemas import RunReport, Scenario, box_rows, summarize

logger = logging.getLogger("HARNESS")


def matches(identity: str, prefix: str) -> bool:
    """True when `prefix` is the identity itself or one of its dotted ancestors."""
    return identity == prefix or identity.startswith(prefix + ".")


def tolerance_override(identity: str, tolerances: dict[str, float]) -> float | None:
    """Override of the longest matching prefix, if any."""
    candidates = [prefix for prefix in tolerances if matches(identity, prefix)]
    if not candidates:
        return None
    return tolerances[max(candidates, key=len)]


class ScenarioRunner:
    """
    Builder that runs one scenario.

    Each step method returns self for method chaining.

    Example:
        report = (ScenarioRunner(scenario)
                  .build_models()
                  .draw_points()
                  .evaluate_checks()
                  .build())
    """

    def __init__(self, scenario: Scenario):
        """
        Args:
            scenario: Validated scenario
        """
        self.scenario: Scenario = scenario
        self.metric: MetricModel | None = None
        self.immersion: Immersion | None = None
        self.points: list[SubPoint] | None = None
        self.rows: list[ComparisonRow] | None = None
        self._started = time.perf_counter()

    def __repr__(self):
        return f"<{type(self).__name__}(scenario={self.scenario.name!r})>"

    @property
    def families(self) -> list[str]:
        """Families touched by the check selection, in evaluation order."""
        checks = self.scenario.run.checks
        if checks is None:
            return list(FAMILIES)
        unknown = sorted({check.split(".")[0] for check in checks} - set(FAMILIES))
        if unknown:
            raise ScenarioError(f"unknown check families {unknown}", key="run.checks")
        return [family for family in FAMILIES if any(matches(check, family) for check in checks)]

    def build_models(self) -> "ScenarioRunner":
        """
        Step 1: Build the metric model and the immersion.

        Raises:
            ScenarioError: If a kind or parameter is rejected by the model, or the
                check selection names an unknown family

        Returns:
            self for method chaining
        """
        logger.debug(f"Check families: {self.families}")
        metric_spec, immersion_spec = self.scenario.metric, self.scenario.immersion
        try:
            metric = build_metric(
                metric_spec.kind, metric_spec.n, metric_spec.p, metric_spec.params
            )
            if metric_spec.box:
                metric = build_metric(
                    metric_spec.kind,
                    metric_spec.n,
                    metric_spec.p,
                    metric_spec.params,
                    box=box_rows(metric_spec.box, metric.box, "x"),
                )
        except ValueError as e:
            raise ScenarioError(str(e), key="metric") from e
        try:
            params = immersion_spec.immersion_params
            immersion = build_immersion(
                immersion_spec.kind, immersion_spec.m, metric_spec.n, params
            )
            if immersion_spec.box:
                immersion = build_immersion(
                    immersion_spec.kind,
                    immersion_spec.m,
                    metric_spec.n,
                    params,
                    box=box_rows(immersion_spec.box, immersion.box, "u"),
                )
        except ValueError as e:
            raise ScenarioError(str(e), key="immersion") from e
        self.metric, self.immersion = metric, immersion
        logger.info(f"Scenario {self.scenario.name!r}: {metric!r} with {immersion!r}")
        return self

    def draw_points(self) -> "ScenarioRunner":
        """
        Step 2: Draw the seeded sample points.

        Returns:
            self for method chaining
        """
        if self.metric is None:
            raise ValueError("Must call build_models() first")
        run = self.scenario.run
        self.points = draw_points(self.metric, self.immersion, run.points, run.seed)
        return self

    def evaluate_checks(self) -> "ScenarioRunner":
        """
        Step 3: Evaluate the selected check families at every point.

        A DomainError inside a family becomes one error row for that family at
        that point; the remaining families still run.

        Returns:
            self for method chaining
        """
        if self.points is None:
            raise ValueError("Must call draw_points() first")
        families = self.families
        checks = self.scenario.run.checks
        rows = []
        for index, point in enumerate(self.points):
            context = PointContext(
                self.metric,
                self.immersion,
                point,
                index,
                self.scenario.run.seed,
                self.scenario.immersion.normal_delta,
            )
            for family in families:
                try:
                    produced = FAMILIES[family](context)
                except DomainError as e:
                    logger.warning(f"Point {index}: {family} checks hit {type(e).__name__}: {e}")
                    produced = [error_row(f"{family}.domain_error", e, "evaluation domain")]
                except Exception as e:
                    logger.error(f"Point {index}: {family} checks failed: {e}", exc_info=True)
                    raise
                rows.extend(
                    row.at_point(index)
                    for row in produced
                    if checks is None
                    or row.mode is RowMode.ERROR
                    or any(matches(row.identity, check) for check in checks)
                )
            logger.debug(f"Point {index} done, {len(rows)} rows so far")
        self.rows = [self._apply_tolerance(row) for row in rows]
        return self

    def _apply_tolerance(self, row: ComparisonRow) -> ComparisonRow:
        if row.mode is RowMode.ERROR:
            return row
        override = tolerance_override(row.identity, self.scenario.tolerances)
        return row if override is None else row.with_tolerance(override)

    def build(self) -> RunReport:
        """
        Assemble the report.

        Raises:
            ValueError: If called before all steps
        """
        if self.rows is None:
            raise ValueError(
                "Must complete all steps before build(): "
                "build_models() → draw_points() → evaluate_checks()"
            )
        rows = sorted(self.rows, key=lambda row: (row.point, row.identity))
        summary = summarize(rows)
        elapsed = time.perf_counter() - self._started
        logger.info(
            f"Scenario {self.scenario.name!r}: {summary.verdict.upper()} "
            f"({summary.asserted} asserted, {summary.failed} failed, {summary.errors} errors) "
            f"in {elapsed:.2f}s"
        )
        return RunReport(
            engine_version=get_settings().BASE.VERSION,
            scenario=self.scenario,
            rows=rows,
            summary=summary,
            wall_time_s=elapsed,
        )


def run_scenario(scenario: Scenario) -> RunReport:
    """
    Evaluate every selected identity at every sample point.

    Raises:
        ScenarioError: If the scenario cannot be run as configured
    """
    return ScenarioRunner(scenario).build_models().draw_points().evaluate_checks().build()
