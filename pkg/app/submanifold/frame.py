"""
Normal frame completion by Gram-Schmidt in the ambient metric g(x, y).
"""

import numpy as np

from app.config import get_settings
from app.errors import FrameSmoothnessError
from app.jets import Jet, einsum, sqrt


def normal_pivots(
    rejections: np.ndarray, g: np.ndarray, count: int, threshold: float | None = None
) -> list[int]:
    """
    Canonical basis vectors whose rejections from the tangent space are longest.

    Args:
        rejections: Column k is e_k minus its g-projection on the tangent space
        g: Ambient metric at the point
        count: Number of normal vectors, n − m
        threshold: Smallest relative gap between the last chosen pivot and the
            first rejected one; defaults to ENGINE_FRAME_PIVOT_THRESHOLD

    Returns:
        The `count` chosen indices in ascending order

    Raises:
        FrameSmoothnessError: If the choice is ambiguous, so that nearby points
            may pick another set of pivots
    """
    if threshold is None:
        threshold = get_settings().ENGINE.FRAME_PIVOT_THRESHOLD
    norms = np.sqrt(np.maximum(np.einsum("ak,ab,bk->k", rejections, g, rejections), 0.0))
    order = sorted(range(len(norms)), key=lambda k: (-float(norms[k]), k))
    if count < len(order):
        gap = float(norms[order[count - 1]] - norms[order[count]])
        if gap <= threshold * float(np.max(norms)):
            raise FrameSmoothnessError(
                f"Normal frame pivots {order[count - 1]} and {order[count]} are tied "
                f"(gap {gap:.3g})"
            )
    return sorted(order[:count])


def gram_schmidt(vectors: list[Jet], g: Jet, threshold: float) -> list[Jet]:
    """
    g-orthonormalize jet vector fields in order.

    Raises:
        FrameSmoothnessError: If a vector collapses below `threshold` relative to
            its own length before orthogonalization
    """
    basis = []
    for vector in vectors:
        length = np.sqrt(float(einsum("a,ab,b->", vector, g, vector).value))
        for e in basis:
            vector = vector - e * einsum("a,ab,b->", vector, g, e)
        square = einsum("a,ab,b->", vector, g, vector)
        size = np.sqrt(max(float(square.value), 0.0))
        if length == 0.0 or size < threshold * length:
            raise FrameSmoothnessError(f"Normal frame pivot collapsed to norm {size:.3g}")
        basis.append(vector / sqrt(square))
    return basis
