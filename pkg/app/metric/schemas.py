"""
Pydantic schemas for points of the slit bundle and metric data at a point.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class AmbientPoint(BaseModel):
    """
    A point (x, y) of the tangent bundle in chart coordinates.

    Attributes:
        x: Base coordinates, n entries
        y: Fiber coordinates, n entries

    Validation:
        - x and y have the same nonzero length
        - all entries are finite
    """

    x: tuple[float, ...] = Field(..., description="Chart coordinates x^a", examples=[(0.5, 1.0)])
    y: tuple[float, ...] = Field(..., description="Fiber coordinates y^a", examples=[(3.0, 4.0)])

    model_config = ConfigDict(frozen=True, extra="forbid")

    @field_validator("x", "y", mode="before")
    @classmethod
    def to_tuple(cls, value):
        return tuple(float(v) for v in np.asarray(value, dtype=float).ravel())

    @model_validator(mode="after")
    def check_dimensions(self):
        if len(self.x) == 0 or len(self.x) != len(self.y):
            raise ValueError(
                f"x and y need the same positive length, got {len(self.x)}, {len(self.y)}"
            )
        if not np.all(np.isfinite(self.x + self.y)):
            raise ValueError("point coordinates must be finite")
        return self

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def x_array(self) -> np.ndarray:
        return np.array(self.x)

    @property
    def y_array(self) -> np.ndarray:
        return np.array(self.y)


class MetricAtPoint(BaseModel):
    """
    Fundamental tensor, its inverse and the vertical block of the homogeneous lift.

    Attributes:
        g: Fundamental tensor g_ab
        g_inv: Inverse g^ab
        h: Vertical lift block (p²/‖y‖²) g_ab
        norm_sq: ‖y‖² = g_ab y^a y^b
    """

    g: np.ndarray
    g_inv: np.ndarray
    h: np.ndarray
    norm_sq: float = Field(..., gt=0)

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)
