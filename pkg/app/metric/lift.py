"""
Point operations of the metric: fundamental tensor, norm and homogeneous lift.
"""

import numpy as np

from app.config import get_settings
from app.errors import DegenerateMetricError, NullSectionError
from app.jets import Jet, get_space, seed

from .models import MetricModel
from .schemas import AmbientPoint, MetricAtPoint


def _check_point(model: MetricModel, point: AmbientPoint) -> None:
    if point.n != model.n:
        raise ValueError(f"Point has dimension {point.n}, metric expects {model.n}")


def fundamental_tensor(model: MetricModel, point: AmbientPoint) -> np.ndarray:
    """
    g_ab = ½ ∂²F²/∂y^a∂y^b at the point.

    Raises:
        DegenerateMetricError: If |det g| is below ENGINE_DEGENERACY_THRESHOLD
    """
    _check_point(model, point)
    space = get_space(model.n, 2)
    f2 = model.f2(point.x_array, seed(point.y_array, space))
    if not isinstance(f2, Jet):
        raise DegenerateMetricError("F² does not depend on y")
    slots = range(model.n)
    hessian = f2.gradient(slots).gradient(slots).value
    g = 0.25 * (hessian + hessian.T)
    if abs(np.linalg.det(g)) < get_settings().ENGINE.DEGENERACY_THRESHOLD:
        raise DegenerateMetricError(f"Fundamental tensor is singular at {point}")
    return g


def norm_sq(model: MetricModel, point: AmbientPoint) -> float:
    g = fundamental_tensor(model, point)
    y = point.y_array
    return float(y @ g @ y)


def homogeneous_lift(model: MetricModel, point: AmbientPoint) -> MetricAtPoint:
    """
    Horizontal and vertical blocks of the homogeneous lift at the point.

    Raises:
        NullSectionError: If ‖y‖² is below ENGINE_EPS_NULL
    """
    g = fundamental_tensor(model, point)
    y = point.y_array
    size = float(y @ g @ y)
    if size < get_settings().ENGINE.EPS_NULL:
        raise NullSectionError(f"‖y‖² = {size:.3g} is too close to the null section")
    return MetricAtPoint(g=g, g_inv=np.linalg.inv(g), h=(model.p**2 / size) * g, norm_sq=size)
