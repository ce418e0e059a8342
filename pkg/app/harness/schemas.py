"""
Pydantic schemas for scenarios and run reports.

A Scenario is the validated form of a scenario file; a RunReport is what a
run of the harness produces, before it is rendered by `emit_report`.
"""

import math
import re
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.compare import ComparisonRow, RowMode
from app.config import get_settings

NORMAL_DELTAS = ("induced", "intrinsic")

_BOX_KEY = re.compile(r"^([a-z])(\d+)$")


def _check_box(box: dict[str, tuple[float, float]], letter: str, dim: int) -> None:
    for key, (low, high) in box.items():
        match = _BOX_KEY.match(key)
        if not match or match.group(1) != letter or not 1 <= int(match.group(2)) <= dim:
            raise ValueError(f"box key {key!r} must be one of {letter}1..{letter}{dim}")
        if not low < high:
            raise ValueError(f"box {key} is empty: ({low}, {high})")


def box_rows(
    box: dict[str, tuple[float, float]], default, letter: str
) -> list[tuple[float, float]]:
    """Default chart box with the scenario's per-coordinate overrides applied."""
    rows = [tuple(float(c) for c in row) for row in default]
    for key, bounds in box.items():
        rows[int(key[len(letter) :]) - 1] = (float(bounds[0]), float(bounds[1]))
    return rows


class MetricSpec(BaseModel):
    """
    Ambient metric of a scenario.

    Attributes:
        kind: Built-in metric kind (euclidean, riemannian-chart, randers, custom)
        n: Ambient dimension
        p: Lift constant; defaults to ENGINE_LIFT_P
        params: Kind-specific parameters
        box: Per-coordinate overrides of the chart box, keyed x1..xn
    """

    kind: str = Field(..., description="Metric kind", examples=["euclidean", "randers"])
    n: int = Field(..., ge=2, description="Ambient dimension", examples=[3])
    p: float | None = Field(default=None, gt=0, description="Lift constant p")
    params: dict[str, Any] = Field(default_factory=dict)
    box: dict[str, tuple[float, float]] = Field(default_factory=dict)

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def validate_box(self):
        _check_box(self.box, "x", self.n)
        return self


class ImmersionSpec(BaseModel):
    """
    Immersion of a scenario.

    `params.normal_delta` is a harness switch, not an immersion parameter: it
    selects whether the normal and tangent blocks are also evaluated with the
    intrinsic nonlinear connection.
    """

    kind: str = Field(..., description="Immersion kind", examples=["plane", "sphere"])
    m: int = Field(..., ge=2, description="Submanifold dimension", examples=[2])
    params: dict[str, Any] = Field(default_factory=dict)
    box: dict[str, tuple[float, float]] = Field(default_factory=dict)

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def validate_box(self):
        _check_box(self.box, "u", self.m)
        if self.normal_delta not in NORMAL_DELTAS:
            raise ValueError(f"params.normal_delta must be one of {NORMAL_DELTAS}")
        return self

    @property
    def normal_delta(self) -> str:
        return self.params.get("normal_delta", "induced")

    @property
    def immersion_params(self) -> dict[str, Any]:
        return {key: value for key, value in self.params.items() if key != "normal_delta"}


class RunSpec(BaseModel):
    """
    Sampling and check selection.

    Attributes:
        points: Number of sample points
        seed: Seed of the point sampler and of the test functions
        checks: Check families or identity prefixes to evaluate; None selects all
    """

    points: int = Field(
        default_factory=lambda: get_settings().HARNESS.DEFAULT_POINTS, ge=1, le=1000
    )
    seed: int = Field(default_factory=lambda: get_settings().HARNESS.DEFAULT_SEED, ge=0)
    checks: tuple[str, ...] | None = None

    model_config = ConfigDict(extra="forbid")

    @field_validator("checks", mode="before")
    @classmethod
    def split_checks(cls, value):
        if isinstance(value, str):
            return tuple(part.strip() for part in value.split(",") if part.strip())
        return value


class Scenario(BaseModel):
    """
    A validated scenario.

    Validation:
        - the submanifold dimension is below the ambient one
        - box keys name existing coordinates and boxes are nonempty
        - tolerance overrides are non-negative
    """

    name: str = Field(default="scenario", description="Scenario name", examples=["euclidean-plane"])
    metric: MetricSpec
    immersion: ImmersionSpec
    run: RunSpec = Field(default_factory=RunSpec)
    tolerances: dict[str, float] = Field(default_factory=dict)

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {
                "name": "euclidean-plane",
                "metric": {"kind": "euclidean", "n": 3},
                "immersion": {"kind": "plane", "m": 2},
                "run": {"points": 10, "seed": 0xF175},
            }
        },
    )

    @model_validator(mode="after")
    def validate_dimensions(self):
        if not self.immersion.m < self.metric.n:
            raise ValueError(
                f"immersion.m = {self.immersion.m} must be below metric.n = {self.metric.n}"
            )
        negative = [key for key, value in self.tolerances.items() if value < 0]
        if negative:
            raise ValueError(f"tolerances must be non-negative: {negative}")
        return self

    def with_overrides(
        self,
        points: int | None = None,
        seed: int | None = None,
        checks: tuple[str, ...] | None = None,
    ) -> "Scenario":
        """Copy with run settings replaced, as the CLI options do."""
        update = {}
        if points is not None:
            update["points"] = points
        if seed is not None:
            update["seed"] = seed
        if checks is not None:
            update["checks"] = tuple(checks)
        if not update:
            return self
        run = RunSpec.model_validate({**self.run.model_dump(), **update})
        return self.model_copy(update={"run": run})


class IdentitySummary(BaseModel):
    """
    Aggregate of one identity over all sample points.

    Attributes:
        identity: Dotted identity name
        mode: Asserted, informational or error
        reference: Topic of the identity
        rows: Number of rows
        max_rel_residual: Largest relative residual, None for error rows
        tolerance: Largest tolerance applied
        failed: Rows above tolerance
        passed: For asserted identities, whether every row passed
    """

    identity: str
    mode: RowMode
    reference: str = ""
    rows: int = Field(..., ge=0)
    max_rel_residual: float | None = None
    tolerance: float | None = None
    failed: int = Field(default=0, ge=0)
    passed: bool | None = None


class RunSummary(BaseModel):
    verdict: str = Field(..., description="pass or fail", examples=["pass"])
    asserted: int = Field(default=0, ge=0)
    failed: int = Field(default=0, ge=0)
    informational: int = Field(default=0, ge=0)
    errors: int = Field(default=0, ge=0)
    identities: list[IdentitySummary] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


class RunReport(BaseModel):
    """
    Result of one scenario run.

    Attributes:
        schema_version: Version of the machine report layout
        engine_version: APP_VERSION of the engine that produced the report
        scenario: The scenario as run
        rows: Residual rows sorted by (point, identity)
        summary: Per-identity aggregates and the verdict
        wall_time_s: Run time in seconds, the only field that varies between runs
    """

    schema_version: int = 1
    engine_version: str
    scenario: Scenario
    rows: list[ComparisonRow] = Field(default_factory=list)
    summary: RunSummary
    wall_time_s: float = Field(default=0.0, ge=0)


def _worst(residuals: list[float]) -> float | None:
    """Largest residual, NaN counting as the worst."""
    if not residuals:
        return None
    return max(residuals, key=lambda r: (math.isnan(r), r))


def summarize(rows: list[ComparisonRow]) -> RunSummary:
    """
    Group rows by identity and decide the verdict.

    The verdict fails if an asserted row fails, or if domain errors left no
    asserted row at all.
    """
    grouped: dict[str, list[ComparisonRow]] = {}
    for row in rows:
        grouped.setdefault(row.identity, []).append(row)

    identities = []
    for identity in sorted(grouped):
        group = grouped[identity]
        residuals = [row.rel_residual for row in group if row.rel_residual is not None]
        tolerances = [row.tolerance for row in group if row.tolerance is not None]
        failed = sum(1 for row in group if row.passed is False)
        mode = group[0].mode
        identities.append(
            IdentitySummary(
                identity=identity,
                mode=mode,
                reference=group[0].reference,
                rows=len(group),
                max_rel_residual=_worst(residuals),
                tolerance=max(tolerances, default=None),
                failed=failed,
                passed=(failed == 0) if mode is RowMode.ASSERTED else None,
            )
        )

    asserted = [row for row in rows if row.mode is RowMode.ASSERTED]
    failed = sum(1 for row in asserted if not row.passed)
    errors = sum(1 for row in rows if row.mode is RowMode.ERROR)
    return RunSummary(
        verdict="fail" if failed or (errors and not asserted) else "pass",
        asserted=len(asserted),
        failed=failed,
        informational=sum(1 for row in rows if row.mode is RowMode.INFORMATIONAL),
        errors=errors,
        identities=identities,
    )
