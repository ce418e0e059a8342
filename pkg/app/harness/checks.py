"""
Check families evaluated by the harness at one sample point.

Each family is a function of a PointContext returning residual rows. The
context expands the submanifold and its comparison lazily, so a family that
is not selected costs nothing and a DomainError surfaces in the family that
first needs the failing object.
"""

import itertools
from functools import cached_property
from typing import Callable

import numpy as np

from app.ambient import (
    DOWN,
    HORIZONTAL,
    UP,
    AmbientJets,
    ConnectionField,
    fd_christoffel,
    metricity_pairs,
    oracle_blocks,
)
from app.compare import (
    ComparisonRow,
    RowMode,
    SubmanifoldComparison,
    commutator_rows,
    comparison_rows,
    residual_row,
    sample_functions,
)
from app.config import get_settings
from app.jets import einsum, fd_partial, fd_tolerance, partial
from app.metric import MetricModel
from app.submanifold import (
    AMBIENT,
    NORMAL,
    TANGENT,
    Immersion,
    SubPoint,
    relative_covariant_derivative,
)

INFORMATIONAL = RowMode.INFORMATIONAL

HOMOGENEITY_FACTORS = (0.5, 2.0, 3.0)
# name -> degree of homogeneity in y
HOMOGENEITY_DEGREES = {"f2": 2, "h": -2, "nonlinear": 1, "spray": 2, "c01": -1}

METRICITY = ("h_g", "v_g", "h_h", "v_h")
DUALITY = ("tangent_tangent", "normal_tangent", "tangent_normal", "normal_normal", "completeness")
CURVATURE = ("rh", "ph", "sh", "rv", "pv", "sv")


class PointContext:
    """
    Lazily expanded geometry at one sample point.

    Args:
        metric: Ambient metric model
        immersion: Immersion into the metric's chart
        point: Sample point (u, v)
        index: Sample point index
        seed: Run seed; test functions and directions are seeded by (seed, index)
        normal_delta: "intrinsic" adds rows evaluated with the intrinsic nonlinear connection
    """

    def __init__(
        self,
        metric: MetricModel,
        immersion: Immersion,
        point: SubPoint,
        index: int,
        seed: int,
        normal_delta: str = "induced",
    ):
        self.metric = metric
        self.immersion = immersion
        self.point = point
        self.index = index
        self.seed = seed
        self.normal_delta = normal_delta

    def __repr__(self):
        return f"<{type(self).__name__}(index={self.index}, point={self.point!r})>"

    @property
    def entropy(self) -> list[int]:
        return [self.seed, self.index]

    @cached_property
    def comparison(self) -> SubmanifoldComparison:
        return SubmanifoldComparison(
            self.metric, self.immersion, self.point.u_array, self.point.v_array
        )

    @property
    def sub(self):
        return self.comparison.sub

    @property
    def ambient(self) -> AmbientJets:
        return self.sub.ambient

    def functions(self, space):
        return sample_functions(space, seed=self.entropy)


def _zero_row(
    identity: str, value, tolerance: float, reference: str, mode=RowMode.ASSERTED
) -> ComparisonRow:
    value = np.asarray(value, dtype=float)
    return residual_row(identity, value, np.zeros_like(value), tolerance, reference, mode)


def _metricity_rows(
    prefix: str, pairs: dict, tolerance: float, reference: str, mode=RowMode.ASSERTED
):
    return [
        residual_row(f"{prefix}.{name}", lhs.value, rhs.value, tolerance, reference, mode)
        for name, (lhs, rhs) in pairs.items()
    ]


def check_jets(ctx: PointContext) -> list[ComparisonRow]:
    """Exact partials of F² at the lifted point against central differences."""
    point = ctx.sub.point
    x, y = point.x_array, point.y_array
    slots = 2 * ctx.metric.n
    indices = {
        1: [tuple(int(k == s) for k in range(slots)) for s in range(slots)],
        2: [
            tuple((k == s) + (k == t) for k in range(slots))
            for s, t in itertools.combinations_with_replacement(range(slots), 2)
        ],
    }
    rows = []
    for order, multi_indices in indices.items():
        exact = [partial(ctx.metric.f2, x, y, multi) for multi in multi_indices]
        approx = [fd_partial(ctx.metric.f2, x, y, multi) for multi in multi_indices]
        rows.append(
            residual_row(
                f"jets.partial.order{order}",
                exact,
                approx,
                fd_tolerance(order),
                "exact partials against finite differences",
            )
        )
    return rows


def check_metric(ctx: PointContext) -> list[ComparisonRow]:
    """Euler relation, Cartan tensor symmetry and fiber homogeneity."""
    settings = get_settings().HARNESS
    ambient = ctx.ambient
    dg = ambient.adapted.ydot(ambient.g).value
    rows = [
        residual_row(
            "metric.euler",
            ambient.norm_sq.value,
            ambient.f2.value,
            settings.ASSERTED_TOLERANCE,
            "fundamental function and tensor",
        ),
        residual_row(
            "metric.cartan_symmetry",
            dg,
            dg.transpose(0, 2, 1),
            settings.ASSERTED_TOLERANCE,
            "fundamental function and tensor",
        ),
        _zero_row(
            "metric.cartan_contraction",
            np.einsum("abc,c->ab", dg, ambient.y),
            settings.ASSERTED_TOLERANCE,
            "fundamental function and tensor",
        ),
        residual_row(
            "metric.lift_contraction",
            np.einsum("ab,a,b->", ambient.h.value, ambient.y, ambient.y),
            ctx.metric.p**2,
            settings.ASSERTED_TOLERANCE,
            "homogeneous lift",
        ),
    ]

    def objects(jets: AmbientJets) -> dict[str, np.ndarray]:
        return {
            "f2": jets.f2.value,
            "h": jets.h.value,
            "nonlinear": jets.nonlinear.value,
            "spray": jets.spray.value,
            "c01": jets.connection.C01.value,
        }

    base = objects(ambient)
    scaled = [
        objects(AmbientJets(ctx.metric, ambient.x, factor * ambient.y, order=4))
        for factor in HOMOGENEITY_FACTORS
    ]
    for name, degree in HOMOGENEITY_DEGREES.items():
        rows.append(
            residual_row(
                f"metric.homogeneity.{name}",
                np.stack([values[name] for values in scaled]),
                np.stack([factor**degree * base[name] for factor in HOMOGENEITY_FACTORS]),
                settings.VANISHING_TOLERANCE,
                "homogeneity in the fiber coordinates",
            )
        )
    return rows


def check_ambient(ctx: PointContext) -> list[ComparisonRow]:
    """Cartan connection: metricity, torsion, brackets, curvature against the oracle."""
    settings = get_settings().HARNESS
    ambient = ctx.ambient
    connection = ambient.connection
    rows = _metricity_rows(
        "ambient.metricity",
        connection.metricity(ambient.g, ambient.h),
        settings.DEFINITIONAL_TOLERANCE,
        "metrical connection of the homogeneous lift",
    )

    torsion = connection.torsion()
    for name in ("T00", "S11"):
        rows.append(
            _zero_row(
                f"ambient.torsion.{name.lower()}",
                getattr(torsion, name).value,
                settings.ASSERTED_TOLERANCE,
                "torsion of the metrical connection",
            )
        )
    rows += commutator_rows(ambient.adapted, "ambient.brackets", ctx.functions(ambient.space))

    curvature = connection.truncate(2).curvature()
    oracle = oracle_blocks(connection)
    for name in CURVATURE:
        rows.append(
            residual_row(
                f"ambient.curvature.oracle.{name}",
                getattr(curvature, name.upper()).value,
                oracle[name.upper()],
                settings.ORACLE_TOLERANCE,
                "curvature blocks against the commutator of covariant derivatives",
            )
        )

    if ctx.metric.is_riemannian:
        rows += _riemannian_rows(ctx, torsion, curvature)
    return rows


def _riemannian_rows(ctx: PointContext, torsion, curvature) -> list[ComparisonRow]:
    settings = get_settings().HARNESS
    ambient = ctx.ambient
    connection = ambient.connection
    reference = "Riemannian reduction"
    RH = curvature.RH.value
    rows = [
        _zero_row(
            "ambient.riemannian.c01",
            connection.C01.value,
            settings.VANISHING_TOLERANCE,
            reference,
        ),
        residual_row(
            "ambient.riemannian.levi_civita",
            connection.L00.value,
            fd_christoffel(ctx.metric, ambient.x),
            settings.ORACLE_TOLERANCE,
            "Riemannian reduction against finite-difference Christoffel symbols",
        ),
        residual_row(
            "ambient.riemannian.r01",
            torsion.R01.value,
            einsum("e,eabc->abc", ambient.y, RH),
            settings.ASSERTED_TOLERANCE,
            reference,
        ),
    ]
    curvature_constant = ctx.metric.sectional_curvature
    if curvature_constant is not None:
        g = ambient.g.value
        identity = np.eye(ctx.metric.n)
        expected = curvature_constant * (
            np.einsum("cb,ad->bacd", g, identity) - np.einsum("db,ac->bacd", g, identity)
        )
        rows.append(
            residual_row(
                "ambient.riemannian.sectional",
                RH,
                expected,
                settings.ASSERTED_TOLERANCE,
                reference,
                message=f"K = {curvature_constant:g}",
            )
        )
    return rows


def check_frame(ctx: PointContext) -> list[ComparisonRow]:
    """Duality of the moving frame and the restriction of the adapted cobasis."""
    settings = get_settings().HARNESS
    sub = ctx.sub
    frame = sub.frame()
    rows = [
        residual_row(
            f"frame.duality.{name}", lhs, rhs, settings.VANISHING_TOLERANCE, "moving frame duality"
        )
        for name, (lhs, rhs) in frame.duality_pairs().items()
    ]
    rows.append(
        _zero_row(
            "frame.normal_orthogonality",
            np.einsum("ab,ai,bk->ik", sub.g.value, frame.B, frame.Bbar),
            settings.VANISHING_TOLERANCE,
            "moving frame duality",
        )
    )

    # δy^a = dy^a + N^a_b dx^b restricted to the submanifold against B δv + B̄ K du
    m = sub.m
    rng = np.random.default_rng(ctx.entropy)
    directions = rng.standard_normal((settings.COBASIS_DIRECTIONS, 2 * m))
    du, dv = directions[:, :m], directions[:, m:]
    dy = sub.y.gradient(range(2 * m)).value
    N, B, Nsub = sub.N.value, frame.B, sub.induced_nonlinear.value
    lhs = directions @ dy.T + (du @ B.T) @ N.T
    rhs = (dv + du @ Nsub.T) @ B.T + (du @ frame.K.T) @ frame.Bbar.T
    rows.append(
        residual_row(
            "frame.cobasis",
            lhs,
            rhs,
            settings.DEFINITIONAL_TOLERANCE,
            "restriction of the adapted cobasis",
        )
    )
    return rows


def check_induced(ctx: PointContext) -> list[ComparisonRow]:
    settings = get_settings().HARNESS
    sub = ctx.sub
    return [
        residual_row(
            "induced.metric",
            sub.induced_metric.value,
            ctx.comparison.intrinsic.g.value,
            settings.VANISHING_TOLERANCE,
            "induced fundamental function",
        ),
        _zero_row(
            "induced.nonlinear_euler",
            sub.induced.ydot(sub.induced_nonlinear).value @ sub.v - sub.induced_nonlinear.value,
            settings.ASSERTED_TOLERANCE,
            "induced nonlinear connection",
        ),
    ]


def check_tangent(ctx: PointContext) -> list[ComparisonRow]:
    settings = get_settings().HARNESS
    sub = ctx.sub
    tangent = sub.tangent
    rows = _metricity_rows(
        "tangent.metricity",
        tangent.metricity(sub.induced_metric, sub.induced_h),
        settings.DEFINITIONAL_TOLERANCE,
        "induced tangent connection",
    )
    if ctx.metric.is_riemannian:
        rows.append(
            residual_row(
                "tangent.gauss",
                tangent.L00.value,
                ctx.comparison.intrinsic.connection.L00.value,
                settings.ASSERTED_TOLERANCE,
                "induced tangent connection",
            )
        )
    if ctx.normal_delta == "intrinsic":
        adapted = ConnectionField(
            sub.m, sub.u_slots, sub.v_slots, ctx.comparison.intrinsic.nonlinear, *_blocks(tangent)
        )
        rows += _metricity_rows(
            "tangent.intrinsic_delta.metricity",
            adapted.metricity(sub.induced_metric, sub.induced_h),
            settings.DEFINITIONAL_TOLERANCE,
            "induced tangent connection",
            INFORMATIONAL,
        )
    return rows


def _blocks(connection) -> tuple:
    return connection.L00, connection.L10, connection.C01, connection.C11


def check_normal(ctx: PointContext) -> list[ComparisonRow]:
    settings = get_settings().HARNESS
    sub = ctx.sub
    gn = sub.normal_metric
    hn = gn * sub.lift_factor
    rows = _metricity_rows(
        "normal.metricity",
        metricity_pairs(sub.induced, tuple(sub.normal), gn, hn),
        settings.DEFINITIONAL_TOLERANCE,
        "induced normal connection",
    )
    if ctx.normal_delta == "intrinsic":
        nonlinear = ctx.comparison.intrinsic.nonlinear
        adapted = ConnectionField(sub.m, sub.u_slots, sub.v_slots, nonlinear)
        rows += _metricity_rows(
            "normal.intrinsic_delta.metricity",
            metricity_pairs(adapted, tuple(sub.normal_blocks(nonlinear)), gn, hn),
            settings.DEFINITIONAL_TOLERANCE,
            "induced normal connection",
            INFORMATIONAL,
        )
    return rows


def check_relative(ctx: PointContext) -> list[ComparisonRow]:
    """Parallel induced metrics and the tangential part of the Gauss formula."""
    tolerance = get_settings().HARNESS.DEFINITIONAL_TOLERANCE
    sub = ctx.sub
    reference = "relative covariant derivative"
    metrics = {
        "induced_metric": (sub.induced_metric, TANGENT),
        "normal_metric": (sub.normal_metric, NORMAL),
    }
    rows = []
    for name, (metric, family) in metrics.items():
        slots = [(DOWN, family, HORIZONTAL)] * 2
        for direction in ("h", "v"):
            derivative = relative_covariant_derivative(sub, metric, slots, direction)
            identity = f"relative.{name}.{direction}"
            rows.append(_zero_row(identity, derivative.value, tolerance, reference))

    B_h = relative_covariant_derivative(
        sub, sub.B, [(UP, AMBIENT, HORIZONTAL), (DOWN, TANGENT, HORIZONTAL)], "h"
    )
    rows.append(
        _zero_row(
            "relative.gauss_formula",
            einsum("ia,ajb->ijb", sub.B_dual, B_h).value,
            tolerance,
            reference,
        )
    )
    return rows


def check_compare(ctx: PointContext) -> list[ComparisonRow]:
    comparison = ctx.comparison
    return comparison_rows(comparison, ctx.functions(comparison.sub.space))


Family = Callable[[PointContext], list[ComparisonRow]]

FAMILIES: dict[str, Family] = {
    "jets": check_jets,
    "metric": check_metric,
    "ambient": check_ambient,
    "frame": check_frame,
    "induced": check_induced,
    "tangent": check_tangent,
    "normal": check_normal,
    "relative": check_relative,
    "compare": check_compare,
}


def _names(prefix: str, names) -> list[str]:
    return [f"{prefix}.{name}" for name in names]


# Identities each family can emit; riemannian, sectional and intrinsic_delta
# rows depend on the scenario.
CATALOG: dict[str, list[str]] = {
    "jets": ["jets.partial.order1", "jets.partial.order2"],
    "metric": [
        "metric.euler",
        "metric.cartan_symmetry",
        "metric.cartan_contraction",
        "metric.lift_contraction",
    ]
    + _names("metric.homogeneity", HOMOGENEITY_DEGREES),
    "ambient": _names("ambient.metricity", METRICITY)
    + ["ambient.torsion.t00", "ambient.torsion.s11", "ambient.brackets.r", "ambient.brackets.b"]
    + _names("ambient.curvature.oracle", CURVATURE)
    + _names("ambient.riemannian", ("c01", "levi_civita", "r01", "sectional")),
    "frame": _names("frame.duality", DUALITY) + ["frame.normal_orthogonality", "frame.cobasis"],
    "induced": ["induced.metric", "induced.nonlinear_euler"],
    "tangent": _names("tangent.metricity", METRICITY)
    + ["tangent.gauss"]
    + _names("tangent.intrinsic_delta.metricity", METRICITY),
    "normal": _names("normal.metricity", METRICITY)
    + _names("normal.intrinsic_delta.metricity", METRICITY),
    "relative": [
        "relative.induced_metric.h",
        "relative.induced_metric.v",
        "relative.normal_metric.h",
        "relative.normal_metric.v",
        "relative.gauss_formula",
    ],
    "compare": _names("compare.brackets.intrinsic", ("r", "b"))
    + _names("compare.brackets.induced", ("r", "b"))
    + ["compare.adapted_basis"]
    + _names("compare.bracket_difference", ("r", "b"))
    + ["compare.connection_difference_literal"]
    + _names("compare.c_blocks", ("c01", "c11"))
    + _names("compare.deltas_literal", ("h00", "v10", "d10"))
    + _names("compare.intrinsic.metricity", METRICITY)
    + _names("compare.vanishing", ("d", "d100", "d101", "h00", "v10"))
    + _names("compare.deformation", ("h10", "h00", "v00", "v10", "v10_literal"))
    + _names(
        "compare.torsion",
        ("t00_intrinsic", "s11_intrinsic", "s11_tangent", "p10", "r01", "p11"),
    )
    + ["compare.torsion.t00_tangent", "compare.torsion.p11_literal"]
    + _names("compare.curvature", CURVATURE)
    + _names("compare.curvature.intrinsic_adapted", CURVATURE),
}
