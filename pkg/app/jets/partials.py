"""
Exact and finite-difference partial derivatives of scalar fields on (x, y).

A scalar field is any callable f(x, y) that accepts either float arrays or
Jet vectors for both arguments and returns a scalar of the same kind.
"""

import itertools
import math
from typing import Callable, Sequence

import numpy as np

from app.config import get_settings
from app.errors import DomainError, OrderOverflowError

from .jet import Jet, get_space, seed

ScalarField = Callable[[object, object], object]


def _check_order(multi_index: Sequence[int]) -> int:
    if any(k < 0 for k in multi_index):
        raise ValueError(f"Negative entry in multi-index {tuple(multi_index)}")
    total = int(sum(multi_index))
    limit = get_settings().ENGINE.MAX_PARTIAL_ORDER
    if total > limit:
        raise OrderOverflowError(f"Derivative order {total} exceeds the supported {limit}")
    return total


def partial(f: ScalarField, x, y, multi_index: Sequence[int]) -> float:
    """
    Exact mixed partial of f at (x, y).

    Only the slots named by the multi-index become jet variables.

    Args:
        f: Scalar field on (x, y)
        x: Base coordinates
        y: Fiber coordinates
        multi_index: Derivative counts over the concatenated (x, y) slots

    Raises:
        OrderOverflowError: If the total order exceeds the supported maximum
        DomainError: If the field is not smooth at the point
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(x)
    if len(multi_index) != n + len(y):
        raise ValueError(f"Multi-index needs {n + len(y)} entries")
    total = _check_order(multi_index)
    active = [slot for slot, k in enumerate(multi_index) if k > 0]
    if not active:
        return float(f(x, y))
    space = get_space(len(active), total)
    coords = seed(np.concatenate([x, y]), space, active)
    result = f(coords[:n], coords[n:])
    if not isinstance(result, Jet):
        return 0.0
    value = float(result.derivative([multi_index[slot] for slot in active]))
    if not math.isfinite(value):
        raise DomainError(f"Non-finite derivative at x={x}, y={y}")
    return value


def default_step(order: int, coordinate: float) -> float:
    return np.finfo(float).eps ** (1.0 / (order + 2)) * (1.0 + abs(coordinate))


def fd_partial(f: ScalarField, x, y, multi_index: Sequence[int], step: float | None = None):
    """
    Central finite-difference estimate of the same partial as `partial`.

    Uses a product of central stencils, one per differentiated slot.
    """
    if step is not None and step <= 0:
        raise ValueError("step must be positive")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(x)
    point = np.concatenate([x, y])
    total = _check_order(multi_index)
    active = [slot for slot, k in enumerate(multi_index) if k > 0]
    if not active:
        return float(f(x, y))

    stencils = []
    for slot in active:
        k = multi_index[slot]
        h = step if step is not None else default_step(total, point[slot])
        offsets = [(k / 2 - j) * h for j in range(k + 1)]
        weights = [(-1) ** j * math.comb(k, j) / h**k for j in range(k + 1)]
        stencils.append(list(zip(offsets, weights)))

    estimate = 0.0
    for combination in itertools.product(*stencils):
        shifted = point.copy()
        weight = 1.0
        for slot, (offset, w) in zip(active, combination):
            shifted[slot] += offset
            weight *= w
        estimate += weight * float(f(shifted[:n], shifted[n:]))
    return estimate


def fd_tolerance(order: int) -> float:
    return {1: 1e-8, 2: 1e-6, 3: 1e-4, 4: 1e-3}.get(order, 1e-3)
