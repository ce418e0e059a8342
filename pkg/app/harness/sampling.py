"""
Seeded sample points on the submanifold's tangent bundle.
"""

import logging

import numpy as np

from app.config import get_settings
from app.errors import ScenarioError
from app.metric import MetricModel
from app.submanifold import Immersion, SubPoint

logger = logging.getLogger("HARNESS")

FIBER_RANGE = (0.25, 2.0)


def draw_points(
    metric: MetricModel,
    immersion: Immersion,
    count: int,
    seed: int,
    margin: float | None = None,
    max_draws: int | None = None,
) -> list[SubPoint]:
    """
    Draw `count` points (u, v) with x(u) inside the metric's chart box.

    u is uniform in the immersion box shrunk by `margin`; every v component has
    a random sign and a magnitude uniform in FIBER_RANGE. A draw is rejected
    when x(u) is within `margin` of the ambient box boundary or when
    F²(x(u), B(u)v) is below ENGINE_EPS_NULL.

    Raises:
        ScenarioError: If a point cannot be drawn within `max_draws` attempts
    """
    settings = get_settings()
    margin = settings.HARNESS.BOUNDARY_MARGIN if margin is None else margin
    max_draws = settings.HARNESS.MAX_DRAWS if max_draws is None else max_draws
    eps_null = settings.ENGINE.EPS_NULL

    rng = np.random.default_rng(seed)
    low = immersion.box[:, 0] + margin
    high = immersion.box[:, 1] - margin
    if np.any(low >= high):
        raise ScenarioError(
            "immersion box is narrower than the boundary margin", key="immersion.box"
        )

    points, rejected = [], 0
    for index in range(count):
        for _ in range(max_draws):
            u = rng.uniform(low, high)
            signs = rng.choice([-1.0, 1.0], size=immersion.m)
            v = signs * rng.uniform(*FIBER_RANGE, size=immersion.m)
            x = np.asarray(immersion.position(u), dtype=float)
            if not metric.contains(x, margin):
                rejected += 1
                continue
            y = np.asarray(immersion.jacobian(u), dtype=float) @ v
            size = float(metric.f2(x, y))
            if not np.isfinite(size) or size < eps_null:
                rejected += 1
                continue
            points.append(SubPoint(u=u, v=v))
            break
        else:
            raise ScenarioError(
                f"could not draw sample point {index} in {max_draws} draws; "
                "the immersion box maps outside the metric box",
                key="immersion.box",
            )
    logger.debug(f"Drew {count} points with seed {seed:#x}, rejected {rejected}")
    return points
