"""
Pydantic containers for coefficient blocks of ambient objects at one point.

All blocks are dense numpy arrays; index storage is [upper][lower...],
derivative indices last, curvature blocks [b][a][c][d].
"""

import numpy as np
from pydantic import BaseModel, ConfigDict


class _Blocks(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    def blocks(self) -> dict[str, np.ndarray]:
        return {name: getattr(self, name) for name in type(self).model_fields}


class NonlinearConnAtPoint(_Blocks):
    """
    Attributes:
        N: N^a_b
        dN_dy: ∂̇_c N^a_b stored [a, b, c]
        dN_dx: ∂N^a_b/∂x^c stored [a, b, c]
    """

    N: np.ndarray
    dN_dy: np.ndarray
    dN_dx: np.ndarray


class DConnAtPoint(_Blocks):
    L00: np.ndarray
    L10: np.ndarray
    C01: np.ndarray
    C11: np.ndarray


class TorsionAtPoint(_Blocks):
    T00: np.ndarray
    R01: np.ndarray
    P10: np.ndarray
    P11: np.ndarray
    S11: np.ndarray


class CurvatureAtPoint(_Blocks):
    RH: np.ndarray
    PH: np.ndarray
    SH: np.ndarray
    RV: np.ndarray
    PV: np.ndarray
    SV: np.ndarray
