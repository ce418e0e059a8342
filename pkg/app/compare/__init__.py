from .comparison import CURVATURE_DIFFERENCES, DeformationBlocks, Deltas, SubmanifoldComparison
from .intrinsic import (
    IntrinsicModel,
    expand_intrinsic,
    intrinsic_metrical_connection,
    intrinsic_nonlinear_connection,
)
from .operations import (
    adapted_basis_relation_check,
    bracket_difference_tensors,
    bracket_rows,
    commutator_rows,
    comparison_rows,
    connection_difference,
    connection_rows,
    curvature_comparison,
    curvature_rows,
    deformation_deltas,
    deformation_rows,
    deformation_tensor_components,
    expand,
    sample_functions,
    submanifold_brackets,
    torsion_comparison,
    torsion_rows,
    vanishing_rows,
)
from .schemas import (
    ComparisonRow,
    DeformationAtPoint,
    DeformationDeltasAtPoint,
    RowMode,
    error_row,
    max_abs,
    residual_row,
)

__all__ = [
    "CURVATURE_DIFFERENCES",
    "ComparisonRow",
    "DeformationAtPoint",
    "DeformationBlocks",
    "DeformationDeltasAtPoint",
    "Deltas",
    "IntrinsicModel",
    "RowMode",
    "SubmanifoldComparison",
    "adapted_basis_relation_check",
    "bracket_difference_tensors",
    "bracket_rows",
    "commutator_rows",
    "comparison_rows",
    "connection_difference",
    "connection_rows",
    "curvature_comparison",
    "curvature_rows",
    "deformation_deltas",
    "deformation_rows",
    "deformation_tensor_components",
    "error_row",
    "expand",
    "expand_intrinsic",
    "intrinsic_metrical_connection",
    "intrinsic_nonlinear_connection",
    "max_abs",
    "residual_row",
    "sample_functions",
    "submanifold_brackets",
    "torsion_comparison",
    "torsion_rows",
    "vanishing_rows",
]
