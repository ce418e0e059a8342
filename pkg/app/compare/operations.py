"""
Point operations comparing the intrinsic and the induced tangent geometry.

The `*_rows` functions turn one SubmanifoldComparison into residual rows; the
remaining operations expand a comparison at a point and return plain arrays.
"""

from typing import Callable, Sequence

import numpy as np

from app.ambient import ConnectionField
from app.config import get_settings
from app.jets import Jet, as_jet, get_space, polynomial, seed
from app.metric import MetricModel
from app.submanifold import Immersion, SubPoint

from .comparison import CURVATURE_DIFFERENCES, SubmanifoldComparison
from .schemas import (
    ComparisonRow,
    DeformationAtPoint,
    DeformationDeltasAtPoint,
    RowMode,
    residual_row,
)

NonlinearField = Callable[[Jet, Jet], object]

TEST_FUNCTION_DEGREE = 3
INFORMATIONAL = RowMode.INFORMATIONAL

# Both rows are oriented intrinsic − induced; R01 = −R reverses the sign of the R row.
BRACKET_DIFFERENCE_REFERENCES = {
    "r": "D100 against R01 intrinsic − induced (= R induced − R intrinsic)",
    "b": "D101 against B intrinsic − induced",
}


def expand(
    model: MetricModel, immersion: Immersion, point: SubPoint, order: int | None = None
) -> SubmanifoldComparison:
    if point.m != immersion.m:
        raise ValueError(f"Point has dimension {point.m}, immersion expects {immersion.m}")
    return SubmanifoldComparison(model, immersion, point.u_array, point.v_array, order=order)


def sample_functions(
    space, count: int | None = None, seed: int | Sequence[int] | None = None
) -> list[Jet]:
    """Random cubic polynomials on the jet variables, reproducible from `seed`."""
    settings = get_settings().HARNESS
    count = settings.TEST_FUNCTIONS if count is None else count
    rng = np.random.default_rng(settings.DEFAULT_SEED if seed is None else seed)
    return [polynomial(space, TEST_FUNCTION_DEGREE, rng) for _ in range(count)]


# plain operations


def submanifold_brackets(
    nonlinear: NonlinearField, point: SubPoint, order: int = 5
) -> tuple[np.ndarray, np.ndarray]:
    """
    Bracket coefficients of the adapted frame of a nonlinear connection on (u, v).

    Args:
        nonlinear: Callable of (u, v) jets returning N^α_β
        point: Expansion point
        order: Jet order; first derivatives of N must stay exact

    Returns:
        (R, B) with R^σ_αβ = δ_α N^σ_β − δ_β N^σ_α and B^σ_αβ = ∂̇_β N^σ_α
    """
    m = point.m
    space = get_space(2 * m, order)
    coordinates = seed(np.concatenate([point.u_array, point.v_array]), space)
    N = as_jet(nonlinear(coordinates[:m], coordinates[m:]), space)
    if N.shape != (m, m):
        raise ValueError(f"Nonlinear connection must be {m}x{m}, got {N.shape}")
    brackets = ConnectionField(m, range(m), range(m, 2 * m), N).brackets()
    return brackets.R.value, brackets.B.value


def connection_difference(model: MetricModel, immersion: Immersion, point: SubPoint) -> np.ndarray:
    return expand(model, immersion, point, order=4).D.value


def adapted_basis_relation_check(
    model: MetricModel,
    immersion: Immersion,
    point: SubPoint,
    functions: Sequence[Jet] | None = None,
) -> float:
    """Max residual of δ̊_α f = δ_α f − D^β_α ∂̇_β f over random test functions."""
    comparison = expand(model, immersion, point, order=4)
    functions = functions or sample_functions(comparison.sub.space)
    residual = 0.0
    for f in functions:
        lhs, rhs = comparison.adapted_basis_sides(f)
        residual = max(residual, float(np.max(np.abs(lhs - rhs))))
    return residual


def bracket_difference_tensors(
    model: MetricModel, immersion: Immersion, point: SubPoint
) -> tuple[np.ndarray, np.ndarray]:
    comparison = expand(model, immersion, point, order=5)
    return comparison.D100.value, comparison.D101.value


def deformation_deltas(
    model: MetricModel, immersion: Immersion, point: SubPoint
) -> DeformationDeltasAtPoint:
    comparison = expand(model, immersion, point, order=5)
    return DeformationDeltasAtPoint(
        H00=comparison.deltas.H00,
        V10=comparison.deltas.V10,
        H00_literal=comparison.delta_h00_literal(),
        V10_literal=comparison.delta_v10_literal(),
        D10_literal=comparison.delta_10_literal(),
    )


def deformation_tensor_components(
    model: MetricModel, immersion: Immersion, point: SubPoint
) -> DeformationAtPoint:
    """Printed components of the deformation tensor, evaluated on the oracle deltas."""
    comparison = expand(model, immersion, point, order=5)
    return DeformationAtPoint(**comparison.deformation_printed()._asdict())


def torsion_comparison(
    model: MetricModel, immersion: Immersion, point: SubPoint
) -> list[ComparisonRow]:
    return torsion_rows(expand(model, immersion, point, order=5))


def curvature_comparison(
    model: MetricModel, immersion: Immersion, point: SubPoint
) -> list[ComparisonRow]:
    return curvature_rows(expand(model, immersion, point))


# rows


def commutator_rows(
    field: ConnectionField,
    prefix: str,
    functions: Sequence[Jet],
    reference: str = "adapted frame brackets",
) -> list[ComparisonRow]:
    """Commutators of the adapted vector fields on test functions against bracket coefficients."""
    tolerance = get_settings().HARNESS.ASSERTED_TOLERANCE
    actual = [field.commutators(f) for f in functions]
    expected = [field.bracket_action(f) for f in functions]
    return [
        residual_row(
            f"{prefix}.{name.lower()}",
            np.stack([getattr(item, name).value for item in actual]),
            np.stack([getattr(item, name).value for item in expected]),
            tolerance,
            reference,
        )
        for name in ("R", "B")
    ]


def bracket_rows(
    comparison: SubmanifoldComparison, functions: Sequence[Jet]
) -> list[ComparisonRow]:
    settings = get_settings().HARNESS
    rows = commutator_rows(comparison.intrinsic.adapted, "compare.brackets.intrinsic", functions)
    rows += commutator_rows(comparison.sub.induced, "compare.brackets.induced", functions)

    sides = [comparison.adapted_basis_sides(f) for f in functions]
    rows.append(
        residual_row(
            "compare.adapted_basis",
            np.stack([lhs for lhs, _ in sides]),
            np.stack([rhs for _, rhs in sides]),
            settings.DEFINITIONAL_TOLERANCE,
            "intrinsic adapted basis in the induced frame",
        )
    )
    for name, (closed, oracle) in comparison.bracket_differences().items():
        rows.append(
            residual_row(
                f"compare.bracket_difference.{name}",
                closed,
                oracle,
                settings.ORACLE_TOLERANCE,
                BRACKET_DIFFERENCE_REFERENCES[name],
            )
        )
    return rows


def connection_rows(comparison: SubmanifoldComparison) -> list[ComparisonRow]:
    settings = get_settings().HARNESS
    rows = [
        residual_row(
            "compare.connection_difference_literal",
            comparison.connection_difference_literal,
            comparison.D.value,
            settings.ORACLE_TOLERANCE,
            "nonlinear connection difference closed form",
            INFORMATIONAL,
        )
    ]
    for name, (intrinsic, tangent) in comparison.c_blocks().items():
        rows.append(
            residual_row(
                f"compare.c_blocks.{name}",
                intrinsic,
                tangent,
                settings.ASSERTED_TOLERANCE,
                "vertical blocks of intrinsic and induced tangent connections",
            )
        )

    deltas = comparison.deltas
    literal = {
        "h00": (comparison.delta_h00_literal(), deltas.H00),
        "v10": (comparison.delta_v10_literal(), deltas.V10),
        "d10": (comparison.delta_10_literal(), deltas.V10 - comparison.delta_v10_lift_terms()),
    }
    for name, (closed, oracle) in literal.items():
        rows.append(
            residual_row(
                f"compare.deltas_literal.{name}",
                closed,
                oracle,
                settings.ORACLE_TOLERANCE,
                "horizontal block differences closed form",
                INFORMATIONAL,
            )
        )

    intrinsic = comparison.intrinsic
    for name, (lhs, rhs) in intrinsic.connection.metricity(intrinsic.g, intrinsic.h).items():
        rows.append(
            residual_row(
                f"compare.intrinsic.metricity.{name}",
                lhs.value,
                rhs.value,
                settings.DEFINITIONAL_TOLERANCE,
                "metricity of the intrinsic connection",
            )
        )
    return rows + vanishing_rows(comparison)


def vanishing_rows(comparison: SubmanifoldComparison) -> list[ComparisonRow]:
    """
    Difference tensors that vanish identically for Riemannian ambients.

    L̊10 − L10 also involves C11 along the normal part K, so it is only
    expected to vanish when K does.
    """
    sub = comparison.sub
    if not sub.model.is_riemannian:
        return []
    tolerance = get_settings().HARNESS.VANISHING_TOLERANCE
    tensors = {
        "d": comparison.D.value,
        "d100": comparison.D100.value,
        "d101": comparison.D101.value,
        "h00": comparison.deltas.H00,
    }
    if float(np.max(np.abs(sub.K.value))) < tolerance:
        tensors["v10"] = comparison.deltas.V10
    return [
        residual_row(
            f"compare.vanishing.{name}",
            tensor,
            np.zeros_like(tensor),
            tolerance,
            "difference tensors of Riemannian ambients",
        )
        for name, tensor in tensors.items()
    ]


def deformation_rows(comparison: SubmanifoldComparison) -> list[ComparisonRow]:
    tolerance = get_settings().HARNESS.ASSERTED_TOLERANCE
    oracle = comparison.deformation
    printed = comparison.deformation_printed()
    rows = [
        residual_row(
            "compare.deformation.h10",
            oracle.H10,
            np.zeros_like(oracle.H10),
            0.0,
            "deformation tensor components",
            message="structural zero",
        )
    ]
    for name in ("H00", "V00", "V10"):
        rows.append(
            residual_row(
                f"compare.deformation.{name.lower()}",
                getattr(printed, name),
                getattr(oracle, name),
                tolerance,
                "deformation tensor components",
            )
        )
    rows.append(
        residual_row(
            "compare.deformation.v10_literal",
            comparison.deformation_v10_literal(),
            oracle.V10,
            tolerance,
            "deformation tensor components",
            INFORMATIONAL,
            "printed with the horizontal Cartan block",
        )
    )
    return rows


def torsion_rows(comparison: SubmanifoldComparison) -> list[ComparisonRow]:
    tolerance = get_settings().HARNESS.ASSERTED_TOLERANCE
    reference = "intrinsic and induced tangent torsion"
    rows = [
        residual_row(f"compare.torsion.{name}", lhs, rhs, tolerance, reference)
        for name, (lhs, rhs) in comparison.torsion_pairs().items()
    ]
    t00 = comparison.tangent_t00()
    rows.append(
        residual_row(
            "compare.torsion.t00_tangent",
            t00,
            np.zeros_like(t00),
            tolerance,
            reference,
            INFORMATIONAL,
        )
    )
    intrinsic_p11 = comparison.intrinsic.connection.torsion().P11.value
    rows.append(
        residual_row(
            "compare.torsion.p11_literal",
            comparison.p11_literal(),
            intrinsic_p11,
            tolerance,
            reference,
            INFORMATIONAL,
            "closed-form horizontal block difference",
        )
    )
    return rows


def curvature_rows(comparison: SubmanifoldComparison) -> list[ComparisonRow]:
    settings = get_settings().HARNESS
    reference = "intrinsic and induced tangent curvature"
    curvatures = comparison.curvatures
    intrinsic, tangent = curvatures["intrinsic"], curvatures["tangent"]
    closed = comparison.curvature_differences()

    rows = []
    for block, name in CURVATURE_DIFFERENCES.items():
        difference = getattr(intrinsic, block).value - getattr(tangent, block).value
        rows.append(
            residual_row(
                f"compare.curvature.{block.lower()}",
                difference,
                closed[name],
                settings.ORACLE_TOLERANCE,
                reference,
                INFORMATIONAL,
                "closed-form difference on oracle deltas",
            )
        )
    for block in ("SH", "SV"):
        rows.append(
            residual_row(
                f"compare.curvature.{block.lower()}",
                getattr(intrinsic, block).value,
                getattr(tangent, block).value,
                settings.ASSERTED_TOLERANCE,
                reference,
            )
        )
    for block, adapted in curvatures["intrinsic_adapted"]._asdict().items():
        rows.append(
            residual_row(
                f"compare.curvature.intrinsic_adapted.{block.lower()}",
                adapted.value,
                getattr(intrinsic, block).value,
                settings.ORACLE_TOLERANCE,
                reference,
                INFORMATIONAL,
                "induced tangent blocks with intrinsic adapted derivatives",
            )
        )
    return rows


def comparison_rows(
    comparison: SubmanifoldComparison, functions: Sequence[Jet]
) -> list[ComparisonRow]:
    return (
        bracket_rows(comparison, functions)
        + connection_rows(comparison)
        + deformation_rows(comparison)
        + torsion_rows(comparison)
        + curvature_rows(comparison)
    )
