from .bundle import AmbientJets
from .connection import (
    DOWN,
    HORIZONTAL,
    UP,
    VERTICAL,
    Brackets,
    ConnectionField,
    CurvatureBlocks,
    TorsionBlocks,
    christoffel_forms,
    contract_last,
    covariant_terms,
    metricity_pairs,
)
from .operations import (
    bracket_coefficients,
    cartan_metrical_connection,
    cartan_nonlinear_connection,
    christoffel,
    commutator_curvature_oracle,
    covariant_derivative_h,
    covariant_derivative_v,
    curvature_tensors,
    delta_derivative,
    expand,
    spray,
    torsion_tensors,
)
from .oracle import BLOCKS, fd_christoffel, oracle_blocks
from .schemas import CurvatureAtPoint, DConnAtPoint, NonlinearConnAtPoint, TorsionAtPoint

__all__ = [
    "AmbientJets",
    "BLOCKS",
    "Brackets",
    "ConnectionField",
    "CurvatureAtPoint",
    "CurvatureBlocks",
    "DConnAtPoint",
    "DOWN",
    "HORIZONTAL",
    "NonlinearConnAtPoint",
    "TorsionAtPoint",
    "TorsionBlocks",
    "UP",
    "VERTICAL",
    "bracket_coefficients",
    "cartan_metrical_connection",
    "cartan_nonlinear_connection",
    "christoffel",
    "christoffel_forms",
    "commutator_curvature_oracle",
    "contract_last",
    "covariant_derivative_h",
    "covariant_derivative_v",
    "covariant_terms",
    "curvature_tensors",
    "delta_derivative",
    "expand",
    "fd_christoffel",
    "metricity_pairs",
    "oracle_blocks",
    "spray",
    "torsion_tensors",
]
