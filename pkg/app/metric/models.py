"""
Finsler metric models.

A model is an evaluable F²(x, y) on a chart box. Every model accepts float
arrays or jet vectors for x and y, so the same code serves plain evaluation,
exact differentiation and finite differences.
"""

import enum
import logging
from abc import ABC, abstractmethod
from typing import Any, Callable

import numpy as np

from app.config import get_settings
from app.jets import einsum, sin, sqrt, stack

from .expression import MetricExpression

logger = logging.getLogger("ENGINE")


class MetricKind(str, enum.Enum):
    EUCLIDEAN = "euclidean"
    RIEMANNIAN_CHART = "riemannian-chart"
    RANDERS = "randers"
    CUSTOM = "custom"


class MetricModel(ABC):
    """
    Fundamental function F² of a Finsler space on one chart.

    Args:
        n: Manifold dimension
        p: Positive constant of the homogeneous lift; defaults to ENGINE_LIFT_P
        box: Chart box as n (low, high) pairs; defaults to the model's own box

    Attributes:
        is_riemannian: True when F² is quadratic in y
        sectional_curvature: Known constant sectional curvature, if any
    """

    kind: MetricKind
    is_riemannian: bool = False
    sectional_curvature: float | None = None

    def __init__(self, n: int, p: float | None = None, box=None):
        if n < 2:
            raise ValueError(f"Manifold dimension must be at least 2, got {n}")
        self.n = int(n)
        self.p = get_settings().ENGINE.LIFT_P if p is None else float(p)
        if self.p <= 0:
            raise ValueError(f"Lift constant p must be positive, got {self.p}")
        self.box = np.asarray(self.default_box() if box is None else box, dtype=float)
        if self.box.shape != (self.n, 2) or np.any(self.box[:, 0] >= self.box[:, 1]):
            raise ValueError(f"Chart box must hold {self.n} nonempty (low, high) pairs")

    def __repr__(self):
        return f"<{type(self).__name__}(n={self.n}, p={self.p})>"

    def default_box(self) -> list[tuple[float, float]]:
        return [(-2.0, 2.0)] * self.n

    @abstractmethod
    def f2(self, x, y):
        """F²(x, y) for float arrays or jet vectors."""

    def __call__(self, x, y):
        return self.f2(x, y)

    def contains(self, x, margin: float = 0.0) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x > self.box[:, 0] + margin) and np.all(x < self.box[:, 1] - margin))


class EuclideanMetric(MetricModel):
    kind = MetricKind.EUCLIDEAN
    is_riemannian = True
    sectional_curvature = 0.0

    def f2(self, x, y):
        return einsum("a,a->", y, y)


class RiemannianChartMetric(MetricModel):
    """
    F² = g_ij(x) y^i y^j for a chart matrix g_ij(x).

    The hyperspherical chart gives the unit sphere,
    g = diag(1, sin²x1, sin²x1 sin²x2, ...); the constant chart uses a fixed
    symmetric positive-definite matrix.
    """

    kind = MetricKind.RIEMANNIAN_CHART
    is_riemannian = True

    CHARTS = ("hyperspherical", "constant")

    def __init__(self, n: int, chart: str = "hyperspherical", matrix=None, p=None, box=None):
        if chart not in self.CHARTS:
            raise ValueError(f"Unknown chart {chart!r}, expected one of {self.CHARTS}")
        self.chart = chart
        if chart == "constant":
            matrix = np.eye(n) if matrix is None else np.asarray(matrix, dtype=float)
            if matrix.shape != (n, n) or not np.allclose(matrix, matrix.T):
                raise ValueError(f"Chart matrix must be symmetric {n}x{n}")
            np.linalg.cholesky(matrix)
            self.matrix = matrix
            self.sectional_curvature = 0.0
        else:
            self.matrix = None
            self.sectional_curvature = 1.0
        super().__init__(n, p=p, box=box)

    def default_box(self) -> list[tuple[float, float]]:
        if self.chart == "constant":
            return [(-2.0, 2.0)] * self.n
        return [(0.3, 2.8)] * (self.n - 1) + [(-3.0, 3.0)]

    def metric_matrix(self, x):
        """Chart matrix g_ij(x) as an array or jet."""
        if self.chart == "constant":
            return self.matrix
        factors = [1.0]
        for k in range(1, self.n):
            s = sin(x[k - 1])
            factors.append(factors[-1] * s * s)
        rows = [[factors[i] if i == j else 0.0 for j in range(self.n)] for i in range(self.n)]
        return stack([stack(row) for row in rows])

    def f2(self, x, y):
        return einsum("ab,a,b->", self.metric_matrix(x), y, y)


class RandersMetric(MetricModel):
    """F = sqrt(a_ij y^i y^j) + b_i y^i with constant a and ‖b‖_a < 1."""

    kind = MetricKind.RANDERS

    def __init__(self, n: int, a=None, b=None, p=None, box=None):
        self.a = np.eye(n) if a is None else np.asarray(a, dtype=float)
        self.b = np.zeros(n) if b is None else np.asarray(b, dtype=float)
        if self.a.shape != (n, n) or not np.allclose(self.a, self.a.T):
            raise ValueError(f"Randers a must be symmetric {n}x{n}")
        if self.b.shape != (n,):
            raise ValueError(f"Randers b must have {n} entries")
        try:
            np.linalg.cholesky(self.a)
        except np.linalg.LinAlgError as e:
            raise ValueError("Randers a must be positive definite") from e
        strength = float(np.sqrt(self.b @ np.linalg.solve(self.a, self.b)))
        if strength >= 1.0:
            raise ValueError(f"Randers b must satisfy |b|_a < 1, got {strength:.6g}")
        self.strength = strength
        self.is_riemannian = strength == 0.0
        super().__init__(n, p=p, box=box)

    def f2(self, x, y):
        f = sqrt(einsum("ab,a,b->", self.a, y, y)) + einsum("a,a->", self.b, y)
        return f * f


class CustomMetric(MetricModel):
    """
    User-supplied F², either an expression string over x1..xn, y1..yn or a callable.

    The caller is responsible for 2-homogeneity in y; the harness checks it.
    """

    kind = MetricKind.CUSTOM

    def __init__(self, n: int, expression: str | Callable | None = None, p=None, box=None):
        if expression is None:
            raise ValueError("Custom metrics need an expression")
        if isinstance(expression, str):
            expression = MetricExpression(expression, n)
        self.function = expression
        super().__init__(n, p=p, box=box)

    def f2(self, x, y):
        return self.function(x, y)


def build_metric(
    kind: str, n: int, p: float | None = None, params: dict[str, Any] | None = None, box=None
) -> MetricModel:
    """
    Construct a built-in metric model from its kind tag and parameters.

    Raises:
        ValueError: On unknown kind, unknown parameter or invalid parameter value
    """
    params = dict(params or {})
    try:
        kind = MetricKind(kind)
    except ValueError as e:
        raise ValueError(f"Unknown metric kind {kind!r}") from e

    if kind is MetricKind.EUCLIDEAN:
        allowed, factory = set(), EuclideanMetric
    elif kind is MetricKind.RIEMANNIAN_CHART:
        allowed, factory = {"chart", "matrix"}, RiemannianChartMetric
    elif kind is MetricKind.RANDERS:
        allowed, factory = {"a", "b"}, RandersMetric
    else:
        allowed, factory = {"expression"}, CustomMetric

    unknown = set(params) - allowed
    if unknown:
        raise ValueError(f"Unknown {kind.value} parameters: {sorted(unknown)}")
    model = factory(n, p=p, box=box, **params)
    logger.debug(f"Built metric {model!r}")
    return model
