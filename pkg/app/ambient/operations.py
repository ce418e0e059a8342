"""
Point operations on the ambient Finsler space.

Each operation expands the Cartan geometry of a metric model at one point of
the slit bundle and returns plain coefficient arrays.
"""

from typing import Callable, Sequence

import numpy as np

from app.metric import AmbientPoint, MetricModel

from .bundle import AmbientJets
from .oracle import commutator_curvature_oracle as _oracle
from .schemas import CurvatureAtPoint, DConnAtPoint, NonlinearConnAtPoint, TorsionAtPoint

TensorField = Callable[[object, object], object]


def expand(model: MetricModel, point: AmbientPoint, order: int | None = None) -> AmbientJets:
    if point.n != model.n:
        raise ValueError(f"Point has dimension {point.n}, metric expects {model.n}")
    return AmbientJets(model, point.x_array, point.y_array, order=order)


def christoffel(model: MetricModel, point: AmbientPoint) -> np.ndarray:
    """γ^a_bc from plain x-partials of g."""
    return expand(model, point, order=3).christoffel.value


def spray(model: MetricModel, point: AmbientPoint) -> np.ndarray:
    return expand(model, point, order=3).spray.value


def cartan_nonlinear_connection(model: MetricModel, point: AmbientPoint) -> NonlinearConnAtPoint:
    jets = expand(model, point, order=5)
    N = jets.nonlinear
    return NonlinearConnAtPoint(
        N=N.value,
        dN_dy=N.gradient(jets.y_slots).value,
        dN_dx=N.gradient(jets.x_slots).value,
    )


def delta_derivative(model: MetricModel, point: AmbientPoint, f: TensorField) -> np.ndarray:
    """δ_a f = ∂f/∂x^a − N^b_a ∂f/∂y^b at the point."""
    jets = expand(model, point, order=4)
    return jets.adapted.delta(f(jets.xs, jets.ys)).value


def cartan_metrical_connection(model: MetricModel, point: AmbientPoint) -> DConnAtPoint:
    connection = expand(model, point, order=4).connection
    return DConnAtPoint(
        L00=connection.L00.value,
        L10=connection.L10.value,
        C01=connection.C01.value,
        C11=connection.C11.value,
    )


def covariant_derivative_h(
    model: MetricModel, point: AmbientPoint, tensor: TensorField, slots: Sequence[tuple[str, str]]
) -> np.ndarray:
    """
    Horizontal covariant derivative T_{...|0c} of a d-tensor field.

    Args:
        tensor: Callable of (x, y) jets returning the coefficient array as a jet
        slots: Per index, (variance "up"/"down", kind "H"/"V")
    """
    jets = expand(model, point, order=5)
    return jets.connection.covariant_derivative(tensor(jets.xs, jets.ys), slots, "h").value


def covariant_derivative_v(
    model: MetricModel, point: AmbientPoint, tensor: TensorField, slots: Sequence[tuple[str, str]]
) -> np.ndarray:
    jets = expand(model, point, order=5)
    return jets.connection.covariant_derivative(tensor(jets.xs, jets.ys), slots, "v").value


def bracket_coefficients(model: MetricModel, point: AmbientPoint) -> tuple[np.ndarray, np.ndarray]:
    brackets = expand(model, point, order=5).adapted.brackets()
    return brackets.R.value, brackets.B.value


def torsion_tensors(model: MetricModel, point: AmbientPoint) -> TorsionAtPoint:
    torsion = expand(model, point, order=5).connection.torsion()
    return TorsionAtPoint(**{name: block.value for name, block in torsion._asdict().items()})


def curvature_tensors(model: MetricModel, point: AmbientPoint) -> CurvatureAtPoint:
    connection = expand(model, point).connection.truncate(2)
    curvature = connection.curvature()
    return CurvatureAtPoint(**{name: block.value for name, block in curvature._asdict().items()})


def commutator_curvature_oracle(model: MetricModel, point: AmbientPoint, block: str) -> np.ndarray:
    return _oracle(expand(model, point).connection, block)
