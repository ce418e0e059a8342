"""
Immersions u ↦ x(u) of an m-dimensional chart into the n-dimensional ambient chart.

Every immersion gives its position and its jacobian B^a_α = ∂x^a/∂u^α in
closed form, both for float arrays and for jet vectors. Keeping B analytic
means composing with jets loses no order.
"""

import enum
import logging
from abc import ABC, abstractmethod
from typing import Any

import numpy as np

from app.errors import RankDeficiencyError
from app.jets import cos, sin, stack
from app.metric import AmbientPoint

from .schemas import SubPoint

logger = logging.getLogger("ENGINE")

RANK_TOLERANCE = 1e-10


class ImmersionKind(str, enum.Enum):
    PLANE = "plane"
    SPHERE = "sphere"
    GRAPH = "graph"
    CYLINDER = "cylinder"
    LINEAR = "linear"


class Immersion(ABC):
    """
    Parametrized submanifold of dimension m in an n-dimensional chart.

    Args:
        m: Submanifold dimension, 1 < m < n
        n: Ambient dimension
        box: Chart box for u as m (low, high) pairs
    """

    kind: ImmersionKind

    def __init__(self, m: int, n: int, box=None):
        if not 1 < m < n:
            raise ValueError(f"Immersion dimensions need 1 < m < n, got m={m}, n={n}")
        self.m, self.n = int(m), int(n)
        self.box = np.asarray(self.default_box() if box is None else box, dtype=float)
        if self.box.shape != (self.m, 2) or np.any(self.box[:, 0] >= self.box[:, 1]):
            raise ValueError(f"Immersion box must hold {self.m} nonempty (low, high) pairs")

    def __repr__(self):
        return f"<{type(self).__name__}(m={self.m}, n={self.n})>"

    def default_box(self) -> list[tuple[float, float]]:
        return [(-1.0, 1.0)] * self.m

    @abstractmethod
    def position(self, u):
        """x(u) as a length-n array or jet."""

    @abstractmethod
    def jacobian(self, u):
        """B[a, α] = ∂x^a/∂u^α as an n×m array or jet."""

    def contains(self, u, margin: float = 0.0) -> bool:
        u = np.asarray(u, dtype=float)
        return bool(np.all(u > self.box[:, 0] + margin) and np.all(u < self.box[:, 1] - margin))


def _matrix(rows):
    return stack([stack(row) for row in rows])


class PlaneImmersion(Immersion):
    """Coordinate plane x = (u, 0, ..., 0)."""

    kind = ImmersionKind.PLANE

    def position(self, u):
        return stack([u[i] if i < self.m else 0.0 for i in range(self.n)])

    def jacobian(self, u):
        return np.eye(self.n, self.m)


class SphereImmersion(Immersion):
    """Round sphere of radius r in R³, x = r(sin u1 cos u2, sin u1 sin u2, cos u1)."""

    kind = ImmersionKind.SPHERE

    def __init__(self, m: int, n: int, radius: float = 1.0, box=None):
        if (m, n) != (2, 3):
            raise ValueError("The sphere immersion maps a 2-chart into R³")
        if radius <= 0:
            raise ValueError(f"Sphere radius must be positive, got {radius}")
        self.radius = float(radius)
        super().__init__(m, n, box=box)

    def default_box(self):
        return [(0.3, 2.8), (-3.0, 3.0)]

    def position(self, u):
        r = self.radius
        s1, c1, s2, c2 = sin(u[0]), cos(u[0]), sin(u[1]), cos(u[1])
        return stack([s1 * c2 * r, s1 * s2 * r, c1 * r])

    def jacobian(self, u):
        r = self.radius
        s1, c1, s2, c2 = sin(u[0]), cos(u[0]), sin(u[1]), cos(u[1])
        return _matrix(
            [
                [c1 * c2 * r, -s1 * s2 * r],
                [c1 * s2 * r, s1 * c2 * r],
                [-s1 * r, 0.0],
            ]
        )


class GraphImmersion(Immersion):
    """Saddle graph x = (u1, u2, c u1 u2) in R³."""

    kind = ImmersionKind.GRAPH

    def __init__(self, m: int, n: int, coefficient: float = 1.0, box=None):
        if (m, n) != (2, 3):
            raise ValueError("The graph immersion maps a 2-chart into R³")
        self.coefficient = float(coefficient)
        super().__init__(m, n, box=box)

    def position(self, u):
        return stack([u[0], u[1], u[0] * u[1] * self.coefficient])

    def jacobian(self, u):
        c = self.coefficient
        return _matrix([[1.0, 0.0], [0.0, 1.0], [u[1] * c, u[0] * c]])


class CylinderImmersion(Immersion):
    """Circular cylinder x = (r cos u1, r sin u1, u2) in R³."""

    kind = ImmersionKind.CYLINDER

    def __init__(self, m: int, n: int, radius: float = 1.0, box=None):
        if (m, n) != (2, 3):
            raise ValueError("The cylinder immersion maps a 2-chart into R³")
        if radius <= 0:
            raise ValueError(f"Cylinder radius must be positive, got {radius}")
        self.radius = float(radius)
        super().__init__(m, n, box=box)

    def default_box(self):
        return [(-3.0, 3.0), (-1.0, 1.0)]

    def position(self, u):
        r = self.radius
        return stack([cos(u[0]) * r, sin(u[0]) * r, u[1]])

    def jacobian(self, u):
        r = self.radius
        return _matrix([[-sin(u[0]) * r, 0.0], [cos(u[0]) * r, 0.0], [0.0, 1.0]])


class LinearImmersion(Immersion):
    """Affine subspace x = A u + c."""

    kind = ImmersionKind.LINEAR

    def __init__(self, m: int, n: int, matrix=None, offset=None, box=None):
        self.matrix = np.eye(n, m) if matrix is None else np.asarray(matrix, dtype=float)
        self.offset = np.zeros(n) if offset is None else np.asarray(offset, dtype=float)
        if self.matrix.shape != (n, m):
            raise ValueError(f"Linear immersion matrix must be {n}x{m}")
        if self.offset.shape != (n,):
            raise ValueError(f"Linear immersion offset must have {n} entries")
        super().__init__(m, n, box=box)

    def position(self, u):
        return stack(
            [
                sum((u[j] * self.matrix[i, j] for j in range(self.m)), self.offset[i])
                for i in range(self.n)
            ]
        )

    def jacobian(self, u):
        return self.matrix


_FACTORIES = {
    ImmersionKind.PLANE: (PlaneImmersion, set()),
    ImmersionKind.SPHERE: (SphereImmersion, {"radius"}),
    ImmersionKind.GRAPH: (GraphImmersion, {"coefficient"}),
    ImmersionKind.CYLINDER: (CylinderImmersion, {"radius"}),
    ImmersionKind.LINEAR: (LinearImmersion, {"matrix", "offset"}),
}


def build_immersion(
    kind: str, m: int, n: int, params: dict[str, Any] | None = None, box=None
) -> Immersion:
    """
    Construct a built-in immersion from its kind tag and parameters.

    Raises:
        ValueError: On unknown kind, unknown parameter or inconsistent dimensions
    """
    params = dict(params or {})
    try:
        kind = ImmersionKind(kind)
    except ValueError as e:
        raise ValueError(f"Unknown immersion kind {kind!r}") from e
    factory, allowed = _FACTORIES[kind]
    unknown = set(params) - allowed
    if unknown:
        raise ValueError(f"Unknown {kind.value} parameters: {sorted(unknown)}")
    immersion = factory(m, n, box=box, **params)
    logger.debug(f"Built immersion {immersion!r}")
    return immersion


def check_rank(B: np.ndarray) -> None:
    """
    Raises:
        RankDeficiencyError: If the jacobian's smallest singular value is relatively tiny
    """
    singular = np.linalg.svd(B, compute_uv=False)
    if singular[-1] <= RANK_TOLERANCE * max(singular[0], 1.0):
        raise RankDeficiencyError(f"Immersion jacobian has rank < {B.shape[1]}")


def lift_point(immersion: Immersion, point: SubPoint) -> AmbientPoint:
    """
    (x(u), B(u) v) on the ambient bundle.

    Raises:
        RankDeficiencyError: If rank B < m
    """
    if point.m != immersion.m:
        raise ValueError(f"Point has dimension {point.m}, immersion expects {immersion.m}")
    u, v = point.u_array, point.v_array
    B = np.asarray(immersion.jacobian(u), dtype=float)
    check_rank(B)
    x = np.asarray(immersion.position(u), dtype=float)
    return AmbientPoint(x=x, y=B @ v)
