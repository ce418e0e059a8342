"""
Cartan geometry of a metric model as jets at one point of the slit bundle.

AmbientJets expands F² in all 2n bundle coordinates around (x, y) and derives,
lazily and once each, the fundamental tensor, the homogeneous lift, the
spray, the Cartan nonlinear connection and the four blocks of the Cartan
metrical N-linear connection. Every derivation consumes jet order:

    F² (order k) -> g (k-2) -> spray (k-3) -> N, δg, L (k-4) -> curvature (k-5)

so the default order 6 keeps first derivatives of the curvature inputs exact.
"""

import logging
from functools import cached_property

import numpy as np

from app.config import get_settings
from app.errors import DegenerateMetricError, NullSectionError
from app.jets import Jet, as_jet, einsum, get_space, inv, seed
from app.metric import MetricModel

from .connection import ConnectionField, christoffel_forms

logger = logging.getLogger("ENGINE")


class AmbientJets:
    """
    Jets of every Cartan object of `model` at (x, y).

    Args:
        model: Metric model of dimension n
        x: Base point
        y: Fiber point, off the null section
        order: Jet order; defaults to ENGINE_JET_ORDER

    Raises:
        DegenerateMetricError: If g is singular at the point
        NullSectionError: If ‖y‖² is below ENGINE_EPS_NULL
    """

    def __init__(self, model: MetricModel, x, y, order: int | None = None):
        settings = get_settings().ENGINE
        self.model = model
        self.n = model.n
        self.x = np.asarray(x, dtype=float)
        self.y = np.asarray(y, dtype=float)
        if self.x.shape != (self.n,) or self.y.shape != (self.n,):
            raise ValueError(f"Point does not match metric dimension {self.n}")
        self.order = settings.JET_ORDER if order is None else order
        self.space = get_space(2 * self.n, self.order)
        self.x_slots = tuple(range(self.n))
        self.y_slots = tuple(range(self.n, 2 * self.n))
        self.degeneracy_threshold = settings.DEGENERACY_THRESHOLD
        self.eps_null = settings.EPS_NULL

    def __repr__(self):
        return f"<{type(self).__name__}(model={self.model!r}, order={self.order})>"

    @cached_property
    def coordinates(self) -> Jet:
        return seed(np.concatenate([self.x, self.y]), self.space)

    @property
    def xs(self) -> Jet:
        return self.coordinates[: self.n]

    @property
    def ys(self) -> Jet:
        return self.coordinates[self.n :]

    @cached_property
    def f2(self) -> Jet:
        return as_jet(self.model.f2(self.xs, self.ys), self.space)

    @cached_property
    def g(self) -> Jet:
        hessian = self.f2.gradient(self.y_slots).gradient(self.y_slots)
        g = (hessian + hessian.transpose(1, 0)) * 0.25
        if abs(np.linalg.det(g.value)) < self.degeneracy_threshold:
            raise DegenerateMetricError(f"Fundamental tensor is singular at x={self.x}, y={self.y}")
        return g

    @cached_property
    def g_inv(self) -> Jet:
        return inv(self.g)

    @cached_property
    def norm_sq(self) -> Jet:
        size = einsum("ab,a,b->", self.g, self.ys, self.ys)
        if size.value < self.eps_null:
            raise NullSectionError(
                f"‖y‖² = {float(size.value):.3g} is too close to the null section"
            )
        return size

    @cached_property
    def lift_factor(self) -> Jet:
        """p²/‖y‖²"""
        return self.model.p**2 / self.norm_sq

    @cached_property
    def h(self) -> Jet:
        return self.g * self.lift_factor

    @cached_property
    def h_inv(self) -> Jet:
        return self.g_inv * (self.norm_sq / self.model.p**2)

    @cached_property
    def christoffel(self) -> Jet:
        return christoffel_forms(self.g_inv, self.g.gradient(self.x_slots))

    @cached_property
    def spray(self) -> Jet:
        return einsum("abc,b,c->a", self.christoffel, self.ys, self.ys) * 0.5

    @cached_property
    def nonlinear(self) -> Jet:
        return self.spray.gradient(self.y_slots)

    @cached_property
    def adapted(self) -> ConnectionField:
        """Adapted derivatives of the Cartan nonlinear connection, without blocks."""
        return ConnectionField(self.n, self.x_slots, self.y_slots, self.nonlinear)

    @cached_property
    def connection(self) -> ConnectionField:
        delta, ydot = self.adapted.delta, self.adapted.ydot
        logger.debug(f"Building Cartan connection at x={self.x}, y={self.y}")
        return self.adapted.with_blocks(
            L00=christoffel_forms(self.g_inv, delta(self.g)),
            L10=christoffel_forms(self.h_inv, delta(self.h)),
            C01=christoffel_forms(self.g_inv, ydot(self.g)),
            C11=christoffel_forms(self.h_inv, ydot(self.h)),
        )
