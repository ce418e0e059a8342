"""
Intrinsic Finsler structure of an immersed submanifold.

The induced fundamental function F̌²(u, v) = F²(x(u), B(u)v) is itself a
metric model of dimension m, so the intrinsic Cartan objects come from the
ambient machinery instantiated at dimension m.
"""

import numpy as np

from app.ambient import AmbientJets, DConnAtPoint
from app.jets import einsum
from app.metric import MetricKind, MetricModel
from app.submanifold import Immersion, SubPoint


class IntrinsicModel(MetricModel):
    """
    F̌² on the submanifold's bundle chart, with the ambient lift constant p.

    Args:
        ambient: Ambient metric model
        immersion: Immersion into the ambient chart
    """

    kind = MetricKind.CUSTOM

    def __init__(self, ambient: MetricModel, immersion: Immersion):
        if ambient.n != immersion.n:
            raise ValueError(f"Immersion targets dimension {immersion.n}, metric has {ambient.n}")
        self.ambient = ambient
        self.immersion = immersion
        self.is_riemannian = ambient.is_riemannian
        super().__init__(immersion.m, p=ambient.p, box=immersion.box)

    def __repr__(self):
        return f"<{type(self).__name__}(ambient={self.ambient!r}, immersion={self.immersion!r})>"

    def f2(self, u, v):
        y = einsum("ai,i->a", self.immersion.jacobian(u), v)
        return self.ambient.f2(self.immersion.position(u), y)


def expand_intrinsic(
    model: IntrinsicModel, point: SubPoint, order: int | None = None
) -> AmbientJets:
    return AmbientJets(model, point.u_array, point.v_array, order=order)


def intrinsic_nonlinear_connection(model: IntrinsicModel, point: SubPoint) -> np.ndarray:
    return expand_intrinsic(model, point, order=4).nonlinear.value


def intrinsic_metrical_connection(model: IntrinsicModel, point: SubPoint) -> DConnAtPoint:
    connection = expand_intrinsic(model, point, order=4).connection
    return DConnAtPoint(
        L00=connection.L00.value,
        L10=connection.L10.value,
        C01=connection.C01.value,
        C11=connection.C11.value,
    )
