from .frame import gram_schmidt, normal_pivots
from .geometry import CouplingBlocks, NormalBlocks, SubmanifoldJets
from .immersion import (
    CylinderImmersion,
    GraphImmersion,
    Immersion,
    ImmersionKind,
    LinearImmersion,
    PlaneImmersion,
    SphereImmersion,
    build_immersion,
    check_rank,
    lift_point,
)
from .operations import (
    build_frame,
    coupling_coefficients,
    expand,
    induced_metric,
    induced_nonlinear_connection,
    normal_connection,
    tangent_connection,
)
from .relative import AMBIENT, NORMAL, TANGENT, relative_covariant_derivative
from .schemas import FrameAtPoint, SubPoint

__all__ = [
    "AMBIENT",
    "CouplingBlocks",
    "CylinderImmersion",
    "FrameAtPoint",
    "GraphImmersion",
    "Immersion",
    "ImmersionKind",
    "LinearImmersion",
    "NORMAL",
    "NormalBlocks",
    "PlaneImmersion",
    "SphereImmersion",
    "SubPoint",
    "SubmanifoldJets",
    "TANGENT",
    "build_frame",
    "build_immersion",
    "check_rank",
    "coupling_coefficients",
    "expand",
    "gram_schmidt",
    "induced_metric",
    "induced_nonlinear_connection",
    "lift_point",
    "normal_connection",
    "normal_pivots",
    "relative_covariant_derivative",
    "tangent_connection",
]
