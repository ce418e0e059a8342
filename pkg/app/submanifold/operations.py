"""
Point operations on an immersed submanifold.
"""

import numpy as np

from app.ambient import DConnAtPoint
from app.metric import MetricModel

from .geometry import SubmanifoldJets
from .immersion import Immersion
from .schemas import FrameAtPoint, SubPoint


def expand(
    model: MetricModel, immersion: Immersion, point: SubPoint, order: int | None = None
) -> SubmanifoldJets:
    if point.m != immersion.m:
        raise ValueError(f"Point has dimension {point.m}, immersion expects {immersion.m}")
    return SubmanifoldJets(model, immersion, point.u_array, point.v_array, order=order)


def build_frame(model: MetricModel, immersion: Immersion, point: SubPoint) -> FrameAtPoint:
    return expand(model, immersion, point, order=4).frame()


def induced_metric(model: MetricModel, immersion: Immersion, point: SubPoint) -> np.ndarray:
    return expand(model, immersion, point, order=2).induced_metric.value


def induced_nonlinear_connection(
    model: MetricModel, immersion: Immersion, point: SubPoint
) -> np.ndarray:
    return expand(model, immersion, point, order=4).induced_nonlinear.value


def coupling_coefficients(
    model: MetricModel, immersion: Immersion, point: SubPoint
) -> DConnAtPoint:
    coupling = expand(model, immersion, point, order=4).coupling
    return DConnAtPoint(**{name: block.value for name, block in coupling._asdict().items()})


def tangent_connection(model: MetricModel, immersion: Immersion, point: SubPoint) -> DConnAtPoint:
    tangent = expand(model, immersion, point, order=4).tangent
    return DConnAtPoint(
        L00=tangent.L00.value, L10=tangent.L10.value, C01=tangent.C01.value, C11=tangent.C11.value
    )


def normal_connection(model: MetricModel, immersion: Immersion, point: SubPoint) -> DConnAtPoint:
    normal = expand(model, immersion, point, order=5).normal
    return DConnAtPoint(**{name: block.value for name, block in normal._asdict().items()})
