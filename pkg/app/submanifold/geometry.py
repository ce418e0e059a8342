"""
Induced geometry of an immersed submanifold as jets over its bundle chart (u, v).

SubmanifoldJets expands the ambient Cartan geometry at the lifted point
(x(u), B(u)v) and composes every ambient jet with the lift, so that all
ambient objects become fields on the 2m coordinates (u, v). On top of that
it builds the moving frame, the induced metric and nonlinear connection, the
coupling of the ambient connection and the induced tangent and normal
connections.
"""

import logging
from functools import cached_property
from typing import NamedTuple

import numpy as np

from app.ambient import AmbientJets, ConnectionField
from app.config import get_settings
from app.errors import DegenerateMetricError
from app.jets import (
    Jet,
    as_jet,
    compose,
    concatenate,
    constant,
    einsum,
    get_space,
    inv,
    seed,
    stack,
)
from app.metric import AmbientPoint, MetricModel

from .frame import gram_schmidt, normal_pivots
from .immersion import Immersion, check_rank
from .schemas import FrameAtPoint

logger = logging.getLogger("ENGINE")


class CouplingBlocks(NamedTuple):
    """Ambient connection along submanifold directions, each n×n×m."""

    L00: Jet
    L10: Jet
    C01: Jet
    C11: Jet


class NormalBlocks(NamedTuple):
    """Normal connection coefficients, each (n−m)×(n−m)×m."""

    L00: Jet
    L10: Jet
    C01: Jet
    C11: Jet


class SubmanifoldJets:
    """
    Jets of the induced geometry of `immersion` in `model` at (u, v).

    Args:
        model: Ambient metric of dimension n
        immersion: Immersion of dimension m into the same chart
        u: Submanifold point
        v: Fiber point
        order: Jet order; defaults to ENGINE_JET_ORDER

    Raises:
        RankDeficiencyError: If the jacobian loses rank at u
        DomainError: If the lifted point is degenerate or on the null section
    """

    def __init__(self, model: MetricModel, immersion: Immersion, u, v, order: int | None = None):
        if model.n != immersion.n:
            raise ValueError(f"Immersion targets dimension {immersion.n}, metric has {model.n}")
        settings = get_settings().ENGINE
        self.model = model
        self.immersion = immersion
        self.m, self.n = immersion.m, immersion.n
        self.u = np.asarray(u, dtype=float)
        self.v = np.asarray(v, dtype=float)
        self.order = settings.JET_ORDER if order is None else order
        self.space = get_space(2 * self.m, self.order)
        self.u_slots = tuple(range(self.m))
        self.v_slots = tuple(range(self.m, 2 * self.m))
        self.pivot_threshold = settings.FRAME_PIVOT_THRESHOLD
        self.degeneracy_threshold = settings.DEGENERACY_THRESHOLD

    def __repr__(self):
        return f"<{type(self).__name__}(model={self.model!r}, immersion={self.immersion!r})>"

    # lift

    @cached_property
    def coordinates(self) -> Jet:
        return seed(np.concatenate([self.u, self.v]), self.space)

    @property
    def us(self) -> Jet:
        return self.coordinates[: self.m]

    @property
    def vs(self) -> Jet:
        return self.coordinates[self.m :]

    @cached_property
    def position(self) -> Jet:
        return as_jet(self.immersion.position(self.us), self.space)

    @cached_property
    def B(self) -> Jet:
        B = as_jet(self.immersion.jacobian(self.us), self.space)
        check_rank(B.value)
        return B

    @cached_property
    def B2(self) -> Jet:
        """B2[a, α, β] = ∂²x^a/∂u^α∂u^β."""
        return self.B.gradient(self.u_slots)

    @cached_property
    def y(self) -> Jet:
        return einsum("ai,i->a", self.B, self.vs)

    @cached_property
    def point(self) -> AmbientPoint:
        return AmbientPoint(x=self.position.value, y=self.y.value)

    @cached_property
    def ambient(self) -> AmbientJets:
        return AmbientJets(self.model, self.point.x_array, self.point.y_array, order=self.order)

    @cached_property
    def lift(self) -> Jet:
        return concatenate([self.position, self.y])

    def pull(self, jet: Jet) -> Jet:
        """Ambient jet composed with the lift (u, v) ↦ (x(u), B(u)v)."""
        return compose(jet, self.lift)

    # ambient objects along the submanifold

    @cached_property
    def g(self) -> Jet:
        return self.pull(self.ambient.g)

    @cached_property
    def g_inv(self) -> Jet:
        return self.pull(self.ambient.g_inv)

    @cached_property
    def g_dy(self) -> Jet:
        """∂̇_c g_ab stored [a, b, c]."""
        return self.pull(self.ambient.g.gradient(self.ambient.y_slots))

    @cached_property
    def lift_factor(self) -> Jet:
        return self.pull(self.ambient.lift_factor)

    @cached_property
    def lift_factor_dy(self) -> Jet:
        return self.pull(self.ambient.lift_factor.gradient(self.ambient.y_slots))

    @cached_property
    def N(self) -> Jet:
        return self.pull(self.ambient.nonlinear)

    @cached_property
    def ambient_blocks(self) -> CouplingBlocks:
        connection = self.ambient.connection
        blocks = (connection.L00, connection.L10, connection.C01, connection.C11)
        return CouplingBlocks(*(self.pull(block) for block in blocks))

    # induced metric and frame

    @cached_property
    def induced_metric(self) -> Jet:
        metric = einsum("ab,ai,bj->ij", self.g, self.B, self.B)
        if abs(np.linalg.det(metric.value)) < self.degeneracy_threshold:
            raise DegenerateMetricError(f"Induced metric is singular at u={self.u}")
        return metric

    @cached_property
    def induced_inverse(self) -> Jet:
        return inv(self.induced_metric)

    @cached_property
    def induced_h(self) -> Jet:
        return self.induced_metric * self.lift_factor

    @cached_property
    def B_dual(self) -> Jet:
        """B^α_a = g^αβ B^b_β g_ba."""
        return einsum("ij,bj,ba->ia", self.induced_inverse, self.B, self.g)

    @cached_property
    def B_bar(self) -> Jet:
        rejections = constant(self.space, np.eye(self.n)) - einsum("ai,ib->ab", self.B, self.B_dual)
        pivots = normal_pivots(
            rejections.value, self.g.value, self.n - self.m, self.pivot_threshold
        )
        logger.debug(f"Normal frame pivots {pivots} at u={self.u}")
        basis = gram_schmidt([rejections[:, k] for k in pivots], self.g, self.pivot_threshold)
        return stack(basis, axis=1)

    @cached_property
    def B_bar_dual(self) -> Jet:
        return einsum("ak,ab->kb", self.B_bar, self.g)

    @cached_property
    def B0(self) -> Jet:
        """B0[a, β] = B^a_αβ v^α."""
        return einsum("aib,i->ab", self.B2, self.vs)

    @cached_property
    def transport(self) -> Jet:
        """B^a_0β + N^a_b B^b_β."""
        return self.B0 + einsum("ab,bj->aj", self.N, self.B)

    @cached_property
    def K(self) -> Jet:
        return einsum("ka,aj->kj", self.B_bar_dual, self.transport)

    @cached_property
    def induced_nonlinear(self) -> Jet:
        return einsum("ia,aj->ij", self.B_dual, self.transport)

    @cached_property
    def induced(self) -> ConnectionField:
        """Adapted derivatives of the induced nonlinear connection on (u, v)."""
        return ConnectionField(self.m, self.u_slots, self.v_slots, self.induced_nonlinear)

    def frame(self) -> FrameAtPoint:
        return FrameAtPoint(
            B=self.B.value,
            B2=self.B2.value,
            Bbar=self.B_bar.value,
            Bdual=self.B_dual.value,
            Bbardual=self.B_bar_dual.value,
            K=self.K.value,
        )

    # induced connections

    @cached_property
    def coupling(self) -> CouplingBlocks:
        L00, L10, C01, C11 = self.ambient_blocks
        normal_part = einsum("dk,kj->dj", self.B_bar, self.K)
        return CouplingBlocks(
            L00=einsum("abd,dj->abj", L00, self.B) + einsum("abd,dj->abj", C01, normal_part),
            L10=einsum("abd,dj->abj", L10, self.B) + einsum("abd,dj->abj", C11, normal_part),
            C01=einsum("abd,dj->abj", C01, self.B),
            C11=einsum("abd,dj->abj", C11, self.B),
        )

    def _tangent_h(self, coupled: Jet) -> Jet:
        return einsum("ia,abj->ibj", self.B_dual, self.B2 + einsum("fb,afj->abj", self.B, coupled))

    def _tangent_v(self, coupled: Jet) -> Jet:
        return einsum("ia,fb,afj->ibj", self.B_dual, self.B, coupled)

    @cached_property
    def tangent(self) -> ConnectionField:
        coupling = self.coupling
        return self.induced.with_blocks(
            L00=self._tangent_h(coupling.L00),
            L10=self._tangent_h(coupling.L10),
            C01=self._tangent_v(coupling.C01),
            C11=self._tangent_v(coupling.C11),
        )

    def normal_blocks(self, nonlinear: Jet | None = None) -> NormalBlocks:
        """
        Normal connection coefficients.

        Args:
            nonlinear: Nonlinear connection on (u, v) defining δ B_β̄/δu^δ;
                defaults to the induced one
        """
        if nonlinear is None:
            return self.normal
        return self._normal_blocks(ConnectionField(self.m, self.u_slots, self.v_slots, nonlinear))

    @cached_property
    def normal(self) -> NormalBlocks:
        return self._normal_blocks(self.induced)

    def _normal_blocks(self, adapted: ConnectionField) -> NormalBlocks:
        coupling = self.coupling
        moved_h = adapted.delta(self.B_bar)
        moved_v = adapted.ydot(self.B_bar)

        def project(moved: Jet, coupled: Jet) -> Jet:
            return einsum(
                "ka,alj->klj", self.B_bar_dual, moved + einsum("fl,afj->alj", self.B_bar, coupled)
            )

        return NormalBlocks(
            L00=project(moved_h, coupling.L00),
            L10=project(moved_h, coupling.L10),
            C01=project(moved_v, coupling.C01),
            C11=project(moved_v, coupling.C11),
        )

    @cached_property
    def normal_metric(self) -> Jet:
        return einsum("ab,ak,bl->kl", self.g, self.B_bar, self.B_bar)
