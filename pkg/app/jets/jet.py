"""
Truncated multivariate Taylor jets with tensor-valued coefficients.

A Jet stores, for every entry of a coefficient array, the Taylor coefficients
c_m = (1/m!) d^m f of a smooth function in the monomials of a JetSpace,
graded by total degree. Arithmetic, elementary functions, matrix inversion and
composition act on all entries at once and are exact up to the space order.

Example:
    space = get_space(nvars=2, order=4)
    x, y = seed([0.3, 1.5], space)
    f = sqrt(x * x + y * y)
    f.derivative((0, 1))   # d f / d y at (0.3, 1.5)
"""

import itertools
import math
import string
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from app.errors import DomainError


class JetSpace:
    """
    Monomial basis of all polynomials of total degree <= order in nvars variables.

    Monomials are ordered by degree first, so the basis of a lower order is a
    prefix of this one.

    Attributes:
        nvars: Number of active variables
        order: Maximal total degree kept
        exponents: Integer array (size, nvars) of monomial exponents
        size: Number of monomials
    """

    def __init__(self, nvars: int, order: int):
        if nvars < 1 or order < 0:
            raise ValueError(f"Invalid jet space: nvars={nvars}, order={order}")
        self.nvars = nvars
        self.order = order
        exponents = []
        for degree in range(order + 1):
            for combo in itertools.combinations_with_replacement(range(nvars), degree):
                exponent = [0] * nvars
                for var in combo:
                    exponent[var] += 1
                exponents.append(tuple(exponent))
        self.exponents = np.array(exponents, dtype=int).reshape(len(exponents), nvars)
        self.index = {exponent: i for i, exponent in enumerate(exponents)}
        self.degrees = self.exponents.sum(axis=1)
        self.size = len(exponents)

    def __repr__(self):
        return f"<{type(self).__name__}(nvars={self.nvars}, order={self.order})>"

    def size_at(self, order: int) -> int:
        return math.comb(self.nvars + order, order)

    def unit(self, var: int) -> int:
        """Index of the degree-one monomial of variable `var`."""
        return 1 + var

    @cached_property
    def factorials(self) -> np.ndarray:
        return np.array(
            [math.prod(math.factorial(int(e)) for e in row) for row in self.exponents],
            dtype=float,
        )

    @cached_property
    def products(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Pairs (i, j) of monomials whose product stays within the order.

        Returns:
            Index arrays I and J sorted by target monomial, and the start offset
            of every target, ready for np.add.reduceat.
        """
        targets, left, right = [], [], []
        for i, row in enumerate(self.exponents):
            limit = self.size_at(self.order - int(self.degrees[i]))
            for j in range(limit):
                targets.append(self.index[tuple(row + self.exponents[j])])
                left.append(i)
                right.append(j)
        targets = np.array(targets)
        ordering = np.argsort(targets, kind="stable")
        targets = targets[ordering]
        starts = np.flatnonzero(np.r_[True, targets[1:] != targets[:-1]])
        return np.array(left)[ordering], np.array(right)[ordering], starts

    @cached_property
    def shifts(self) -> list[tuple[np.ndarray, np.ndarray, np.ndarray]]:
        """Per variable: (target, source, factor) arrays of the derivative map."""
        tables = []
        for var in range(self.nvars):
            target, source, factor = [], [], []
            for i, row in enumerate(self.exponents):
                if self.degrees[i] == self.order:
                    continue
                raised = list(row)
                raised[var] += 1
                target.append(i)
                source.append(self.index[tuple(raised)])
                factor.append(raised[var])
            tables.append((np.array(target), np.array(source), np.array(factor, dtype=float)))
        return tables

    @cached_property
    def parents(self) -> list[tuple[np.ndarray, np.ndarray, np.ndarray]]:
        """Per degree >= 1: (monomial, parent monomial, variable) with m = parent * z_var."""
        levels = []
        for degree in range(1, self.order + 1):
            members = np.flatnonzero(self.degrees == degree)
            parent, variable = [], []
            for i in members:
                row = list(self.exponents[i])
                var = next(v for v, e in enumerate(row) if e > 0)
                row[var] -= 1
                parent.append(self.index[tuple(row)])
                variable.append(var)
            levels.append((members, np.array(parent), np.array(variable)))
        return levels


@lru_cache(maxsize=None)
def get_space(nvars: int, order: int) -> JetSpace:
    return JetSpace(nvars, order)


def _multiply(space: JetSpace, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    left, right, starts = space.products
    return np.add.reduceat(a[..., left] * b[..., right], starts, axis=-1)


class Jet:
    """
    Array of truncated Taylor series sharing one JetSpace.

    Args:
        space: Monomial basis of the series
        coeffs: Array of shape (*shape, space.size)
    """

    __slots__ = ("space", "coeffs")
    __array_ufunc__ = None

    def __init__(self, space: JetSpace, coeffs):
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.ndim == 0 or coeffs.shape[-1] != space.size:
            raise ValueError(f"Coefficient array {coeffs.shape} does not fit {space!r}")
        self.space = space
        self.coeffs = coeffs

    def __repr__(self):
        return f"<{type(self).__name__}(shape={self.shape}, space={self.space!r})>"

    @property
    def shape(self) -> tuple[int, ...]:
        return self.coeffs.shape[:-1]

    @property
    def ndim(self) -> int:
        return self.coeffs.ndim - 1

    @property
    def value(self) -> np.ndarray:
        return self.coeffs[..., 0]

    def __len__(self):
        return self.shape[0]

    def __getitem__(self, key) -> "Jet":
        if not isinstance(key, tuple):
            key = (key,)
        return Jet(self.space, self.coeffs[key + (slice(None),)])

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    # arithmetic

    def _lift(self, other) -> np.ndarray:
        if isinstance(other, Jet):
            if other.space is not self.space:
                raise ValueError("Jets live in different spaces")
            return other.coeffs
        other = np.asarray(other, dtype=float)
        lifted = np.zeros(other.shape + (self.space.size,))
        lifted[..., 0] = other
        return lifted

    def __add__(self, other) -> "Jet":
        return Jet(self.space, self.coeffs + self._lift(other))

    __radd__ = __add__

    def __sub__(self, other) -> "Jet":
        return Jet(self.space, self.coeffs - self._lift(other))

    def __rsub__(self, other) -> "Jet":
        return Jet(self.space, self._lift(other) - self.coeffs)

    def __neg__(self) -> "Jet":
        return Jet(self.space, -self.coeffs)

    def __mul__(self, other) -> "Jet":
        if isinstance(other, Jet):
            return Jet(self.space, _multiply(self.space, self.coeffs, self._lift(other)))
        other = np.asarray(other, dtype=float)
        return Jet(self.space, self.coeffs * other[..., None])

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Jet":
        if isinstance(other, Jet):
            return self * reciprocal(other)
        other = np.asarray(other, dtype=float)
        return Jet(self.space, self.coeffs / other[..., None])

    def __rtruediv__(self, other) -> "Jet":
        return reciprocal(self) * other

    def __pow__(self, exponent) -> "Jet":
        if isinstance(exponent, (int, np.integer)) and exponent >= 0:
            result = ones_like(self)
            base = self
            k = int(exponent)
            while k:
                if k & 1:
                    result = result * base
                base = base * base
                k >>= 1
            return result
        return power(self, float(exponent))

    # shape manipulation

    def _axis(self, axis: int) -> int:
        return axis + self.ndim if axis < 0 else axis

    def sum(self, axis=None) -> "Jet":
        if axis is None:
            axis = tuple(range(self.ndim))
        elif isinstance(axis, int):
            axis = (self._axis(axis),)
        else:
            axis = tuple(self._axis(a) for a in axis)
        return Jet(self.space, self.coeffs.sum(axis=axis))

    def transpose(self, *axes) -> "Jet":
        if not axes:
            axes = tuple(reversed(range(self.ndim)))
        return Jet(self.space, self.coeffs.transpose(*axes, self.ndim))

    def reshape(self, *shape) -> "Jet":
        if len(shape) == 1 and isinstance(shape[0], tuple):
            shape = shape[0]
        return Jet(self.space, self.coeffs.reshape(*shape, self.space.size))

    def moveaxis(self, source: int, destination: int) -> "Jet":
        return Jet(
            self.space,
            np.moveaxis(self.coeffs, self._axis(source), self._axis(destination)),
        )

    # calculus

    def diff(self, var: int) -> "Jet":
        """Partial derivative along one active variable; exact one degree lower."""
        target, source, factor = self.space.shifts[var]
        coeffs = np.zeros_like(self.coeffs)
        coeffs[..., target] = self.coeffs[..., source] * factor
        return Jet(self.space, coeffs)

    def gradient(self, variables: Iterable[int]) -> "Jet":
        """Stack of partial derivatives, derivative index appended last."""
        parts = [self.diff(var).coeffs for var in variables]
        return Jet(self.space, np.stack(parts, axis=-2))

    def derivative(self, multi_index: Sequence[int]) -> np.ndarray:
        """Mixed partial derivative at the expansion point."""
        i = self.space.index[tuple(int(k) for k in multi_index)]
        return self.coeffs[..., i] * self.space.factorials[i]

    def truncate(self, order: int) -> "Jet":
        """Same series in the lower-order space of the same variables."""
        space = get_space(self.space.nvars, order)
        return Jet(space, self.coeffs[..., : space.size])


# construction helpers


def constant(space: JetSpace, value) -> Jet:
    value = np.asarray(value, dtype=float)
    coeffs = np.zeros(value.shape + (space.size,))
    coeffs[..., 0] = value
    return Jet(space, coeffs)


def ones_like(jet: Jet) -> Jet:
    return constant(jet.space, np.ones(jet.shape))


def as_jet(value, space: JetSpace) -> Jet:
    if isinstance(value, Jet):
        return value
    return constant(space, value)


def seed(values, space: JetSpace, active: Sequence[int] | None = None) -> Jet:
    """
    Coordinate jets expanded at `values`.

    Args:
        values: Expansion point, one entry per coordinate
        space: Target jet space
        active: Coordinate positions that become jet variables, in variable order;
            defaults to the first `space.nvars` coordinates

    Returns:
        Jet of shape (len(values),); inactive coordinates are constants
    """
    values = np.asarray(values, dtype=float)
    if active is None:
        active = range(space.nvars)
    coeffs = np.zeros(values.shape + (space.size,))
    coeffs[..., 0] = values
    for var, position in enumerate(active):
        coeffs[position, space.unit(var)] = 1.0
    return Jet(space, coeffs)


def stack(items: Sequence, axis: int = 0) -> "Jet | np.ndarray":
    """Stack jets and numbers; numbers become constants when any item is a Jet."""
    space = next((item.space for item in items if isinstance(item, Jet)), None)
    if space is None:
        return np.stack([np.asarray(item, dtype=float) for item in items], axis=axis)
    parts = [as_jet(item, space).coeffs for item in items]
    ndim = parts[0].ndim - 1
    axis = axis + ndim + 1 if axis < 0 else axis
    return Jet(space, np.stack(parts, axis=axis))


def concatenate(items: Sequence[Jet], axis: int = 0) -> Jet:
    space = items[0].space
    ndim = items[0].ndim
    axis = axis + ndim if axis < 0 else axis
    return Jet(space, np.concatenate([as_jet(item, space).coeffs for item in items], axis=axis))


def value_of(item) -> np.ndarray:
    return item.value if isinstance(item, Jet) else np.asarray(item, dtype=float)


def polynomial(space: JetSpace, degree: int, rng: np.random.Generator) -> Jet:
    """Scalar polynomial of the given degree with standard normal coefficients."""
    if degree > space.order:
        raise ValueError(f"Degree {degree} exceeds the space order {space.order}")
    coeffs = np.zeros(space.size)
    count = space.size_at(degree)
    coeffs[:count] = rng.standard_normal(count)
    return Jet(space, coeffs)


# elementary functions


def _series(x: Jet, taylor: Sequence[np.ndarray]) -> Jet:
    """Evaluate sum_k taylor[k] * (x - x0)^k by Horner's rule."""
    shift = Jet(x.space, x.coeffs.copy())
    shift.coeffs[..., 0] = 0.0
    result = constant(x.space, taylor[-1])
    for coefficient in reversed(taylor[:-1]):
        result = result * shift + coefficient
    return result


def _require_positive(x0: np.ndarray, name: str) -> None:
    if np.any(~np.isfinite(x0)) or np.any(x0 <= 0.0):
        raise DomainError(f"{name} needs a positive argument, got {np.min(x0)}")


def _power_taylor(x0: np.ndarray, p: float, order: int) -> list[np.ndarray]:
    taylor, binomial = [], 1.0
    for k in range(order + 1):
        taylor.append(binomial * x0 ** (p - k))
        binomial *= (p - k) / (k + 1)
    return taylor


def power(x, p: float):
    if not isinstance(x, Jet):
        x = np.asarray(x, dtype=float)
        _require_positive(x, "power")
        return x**p
    _require_positive(x.value, "power")
    return _series(x, _power_taylor(x.value, p, x.space.order))


def sqrt(x):
    if not isinstance(x, Jet):
        x = np.asarray(x, dtype=float)
        _require_positive(x, "sqrt")
        return np.sqrt(x)
    _require_positive(x.value, "sqrt")
    return _series(x, _power_taylor(x.value, 0.5, x.space.order))


def reciprocal(x):
    if not isinstance(x, Jet):
        x = np.asarray(x, dtype=float)
        if np.any(x == 0.0):
            raise DomainError("division by zero")
        return 1.0 / x
    x0 = x.value
    if np.any(x0 == 0.0) or np.any(~np.isfinite(x0)):
        raise DomainError("division by a series with zero constant term")
    taylor = [(-1.0) ** k / x0 ** (k + 1) for k in range(x.space.order + 1)]
    return _series(x, taylor)


def exp(x):
    if not isinstance(x, Jet):
        return np.exp(np.asarray(x, dtype=float))
    base = np.exp(x.value)
    return _series(x, [base / math.factorial(k) for k in range(x.space.order + 1)])


def log(x):
    if not isinstance(x, Jet):
        x = np.asarray(x, dtype=float)
        _require_positive(x, "log")
        return np.log(x)
    x0 = x.value
    _require_positive(x0, "log")
    taylor = [np.log(x0)] + [
        (-1.0) ** (k + 1) / (k * x0**k) for k in range(1, x.space.order + 1)
    ]
    return _series(x, taylor)


def sin(x):
    if not isinstance(x, Jet):
        return np.sin(np.asarray(x, dtype=float))
    x0 = x.value
    taylor = [np.sin(x0 + k * np.pi / 2) / math.factorial(k) for k in range(x.space.order + 1)]
    return _series(x, taylor)


def cos(x):
    if not isinstance(x, Jet):
        return np.cos(np.asarray(x, dtype=float))
    x0 = x.value
    taylor = [np.cos(x0 + k * np.pi / 2) / math.factorial(k) for k in range(x.space.order + 1)]
    return _series(x, taylor)


# linear algebra


def _free_letter(used: str) -> str:
    return next(ch for ch in string.ascii_letters if ch not in used)


def _pair(sub_a: str, a, sub_b: str, b, keep: str):
    a_jet, b_jet = isinstance(a, Jet), isinstance(b, Jet)
    if not a_jet and not b_jet:
        return np.einsum(f"{sub_a},{sub_b}->{keep}", a, b)
    z = _free_letter(sub_a + sub_b)
    if a_jet and b_jet:
        if a.space is not b.space:
            raise ValueError("Jets live in different spaces")
        left, right, starts = a.space.products
        raw = np.einsum(
            f"{sub_a}{z},{sub_b}{z}->{keep}{z}", a.coeffs[..., left], b.coeffs[..., right]
        )
        return Jet(a.space, np.add.reduceat(raw, starts, axis=-1))
    if a_jet:
        return Jet(a.space, np.einsum(f"{sub_a}{z},{sub_b}->{keep}{z}", a.coeffs, b))
    return Jet(b.space, np.einsum(f"{sub_a},{sub_b}{z}->{keep}{z}", a, b.coeffs))


def _unary(sub: str, a, out: str):
    if sub == out:
        return a
    if not isinstance(a, Jet):
        return np.einsum(f"{sub}->{out}", a)
    z = _free_letter(sub)
    return Jet(a.space, np.einsum(f"{sub}{z}->{out}{z}", a.coeffs))


def einsum(subscripts: str, *operands):
    """
    Einstein summation over jets and plain arrays, contracted pairwise left to right.

    Subscripts use explicit output indices and no ellipsis.
    """
    inputs, output = subscripts.replace(" ", "").split("->")
    inputs = inputs.split(",")
    if len(inputs) != len(operands):
        raise ValueError(f"{subscripts!r} expects {len(inputs)} operands")
    current_sub, current = inputs[0], operands[0]
    for k in range(1, len(operands)):
        later = "".join(inputs[k + 1 :]) + output
        keep = "".join(ch for ch in dict.fromkeys(current_sub + inputs[k]) if ch in later)
        current = _pair(current_sub, current, inputs[k], operands[k], keep)
        current_sub = keep
    return _unary(current_sub, current, output)


def inv(matrix: Jet) -> Jet:
    """Inverse of a square jet matrix via the Neumann series around its value."""
    base = np.linalg.inv(matrix.value)
    step = einsum("ij,jk->ik", -base, matrix - matrix.value)
    result = constant(matrix.space, base)
    for _ in range(matrix.space.order):
        result = einsum("ij,jk->ik", step, result) + base
    return result


def det(matrix) -> np.ndarray:
    return np.linalg.det(value_of(matrix))


def compose(outer: Jet, inner: Jet) -> Jet:
    """
    Substitute the jet vector `inner` for the variables of `outer`.

    `outer` must be expanded at inner.value; the result lives in inner's space.
    """
    if inner.shape != (outer.space.nvars,):
        raise ValueError(f"Cannot compose {outer!r} with inner shape {inner.shape}")
    return Jet(inner.space, outer.coeffs @ _monomial_basis(outer.space, inner))


def _monomial_basis(outer_space: JetSpace, inner: Jet) -> np.ndarray:
    space = inner.space
    shift = inner.coeffs.copy()
    shift[:, 0] = 0.0
    basis = np.zeros((outer_space.size, space.size))
    basis[0, 0] = 1.0
    for members, parent, variable in outer_space.parents:
        basis[members] = _multiply(space, basis[parent], shift[variable])
    return basis
