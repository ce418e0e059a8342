"""
Residual rows shared by every comparison and by the run report.
"""

import enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class RowMode(str, enum.Enum):
    ASSERTED = "asserted"
    INFORMATIONAL = "informational"
    ERROR = "error"


class ComparisonRow(BaseModel):
    """
    One identity evaluated at one sample point.

    Attributes:
        identity: Dotted identity name, e.g. "ambient.metricity.h_g"
        point: Sample point index
        reference: Topic of the identity
        mode: Asserted rows decide the verdict; informational rows are data only
        lhs_norm: Max-abs of the left-hand side
        rhs_norm: Max-abs of the right-hand side
        abs_residual: Max-abs of LHS − RHS
        rel_residual: abs_residual / (1 + max(lhs_norm, rhs_norm))
        tolerance: Threshold for rel_residual
        passed: rel_residual <= tolerance
        message: Free-form note, e.g. the error text of a domain-error row
    """

    identity: str = Field(..., description="Dotted identity name")
    point: int = Field(default=0, ge=0)
    reference: str = Field(default="", description="Topic of the identity")
    mode: RowMode = RowMode.ASSERTED
    lhs_norm: float | None = None
    rhs_norm: float | None = None
    abs_residual: float | None = None
    rel_residual: float | None = None
    tolerance: float | None = Field(default=None, ge=0)
    passed: bool | None = None
    message: str = ""

    model_config = ConfigDict(frozen=True, use_enum_values=False)

    def with_tolerance(self, tolerance: float) -> "ComparisonRow":
        passed = None if self.rel_residual is None else bool(self.rel_residual <= tolerance)
        return self.model_copy(update={"tolerance": tolerance, "passed": passed})

    def at_point(self, point: int) -> "ComparisonRow":
        return self.model_copy(update={"point": point})


def max_abs(value) -> float:
    array = np.asarray(value, dtype=float)
    return float(np.max(np.abs(array))) if array.size else 0.0


def residual_row(
    identity: str,
    lhs,
    rhs,
    tolerance: float,
    reference: str = "",
    mode: RowMode = RowMode.ASSERTED,
    message: str = "",
) -> ComparisonRow:
    """
    Compare two coefficient arrays.

    Non-finite entries make the residual NaN, which never passes.
    """
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    if lhs.shape != rhs.shape:
        raise ValueError(f"{identity}: shapes {lhs.shape} and {rhs.shape} differ")
    lhs_norm, rhs_norm = max_abs(lhs), max_abs(rhs)
    difference = max_abs(lhs - rhs)
    relative = difference / (1.0 + max(lhs_norm, rhs_norm))
    return ComparisonRow(
        identity=identity,
        reference=reference,
        mode=mode,
        lhs_norm=lhs_norm,
        rhs_norm=rhs_norm,
        abs_residual=difference,
        rel_residual=relative,
        tolerance=tolerance,
        passed=bool(relative <= tolerance),
        message=message,
    )


def error_row(identity: str, error: Exception, reference: str = "") -> ComparisonRow:
    return ComparisonRow(
        identity=identity,
        reference=reference,
        mode=RowMode.ERROR,
        message=f"{type(error).__name__}: {error}",
    )


class _Arrays(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


class DeformationDeltasAtPoint(_Arrays):
    """
    Attributes:
        H00: L̊00 − L00 of the induced tangent connection
        V10: L̊10 − L10
        H00_literal: Printed closed form of H00
        V10_literal: Printed closed form of V10
        D10_literal: Frame part of the printed V10
    """

    H00: np.ndarray
    V10: np.ndarray
    H00_literal: np.ndarray
    V10_literal: np.ndarray
    D10_literal: np.ndarray


class DeformationAtPoint(_Arrays):
    H00: np.ndarray
    V00: np.ndarray
    H10: np.ndarray
    V10: np.ndarray
