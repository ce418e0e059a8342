"""
Pydantic schemas for points of the sub-bundle and the moving frame.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class SubPoint(BaseModel):
    """
    A point (u, v) of the submanifold's tangent bundle.

    Attributes:
        u: Submanifold chart coordinates, m entries
        v: Fiber coordinates, m entries
    """

    u: tuple[float, ...] = Field(..., description="Chart coordinates u^α", examples=[(0.5, 1.0)])
    v: tuple[float, ...] = Field(..., description="Fiber coordinates v^α", examples=[(1.0, 2.0)])

    model_config = ConfigDict(frozen=True, extra="forbid")

    @field_validator("u", "v", mode="before")
    @classmethod
    def to_tuple(cls, value):
        return tuple(float(c) for c in np.asarray(value, dtype=float).ravel())

    @model_validator(mode="after")
    def check_dimensions(self):
        if len(self.u) == 0 or len(self.u) != len(self.v):
            raise ValueError(
                f"u and v need the same positive length, got {len(self.u)}, {len(self.v)}"
            )
        return self

    @property
    def m(self) -> int:
        return len(self.u)

    @property
    def u_array(self) -> np.ndarray:
        return np.array(self.u)

    @property
    def v_array(self) -> np.ndarray:
        return np.array(self.v)


class FrameAtPoint(BaseModel):
    """
    Moving frame of the submanifold at one point.

    Attributes:
        B: Tangent vectors B^a_α, n×m
        B2: Second derivatives B^a_αβ, n×m×m
        Bbar: Normal vectors B^a_ᾱ, n×(n−m)
        Bdual: Tangent covectors B^α_a, m×n
        Bbardual: Normal covectors B^ᾱ_a, (n−m)×n
        K: K^ᾱ_β, (n−m)×m
    """

    B: np.ndarray
    B2: np.ndarray
    Bbar: np.ndarray
    Bdual: np.ndarray
    Bbardual: np.ndarray
    K: np.ndarray

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    def duality_pairs(self) -> dict[str, tuple[np.ndarray, np.ndarray]]:
        """Both sides of each duality condition and of completeness."""
        m, codim = self.B.shape[1], self.Bbar.shape[1]
        n = self.B.shape[0]
        return {
            "tangent_tangent": (self.Bdual @ self.B, np.eye(m)),
            "normal_tangent": (self.Bbardual @ self.B, np.zeros((codim, m))),
            "tangent_normal": (self.Bdual @ self.Bbar, np.zeros((m, codim))),
            "normal_normal": (self.Bbardual @ self.Bbar, np.eye(codim)),
            "completeness": (self.B @ self.Bdual + self.Bbar @ self.Bbardual, np.eye(n)),
        }

    def duality_residuals(self) -> dict[str, float]:
        """Max-abs residual of each duality condition and of completeness."""
        return {
            name: float(np.max(np.abs(lhs - rhs)))
            for name, (lhs, rhs) in self.duality_pairs().items()
        }
