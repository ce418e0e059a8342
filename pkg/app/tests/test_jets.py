import math

import numpy as np
import pytest

from app.errors import DomainError, OrderOverflowError
from app.jets import (
    JetSpace,
    compose,
    constant,
    cos,
    einsum,
    exp,
    fd_partial,
    get_space,
    inv,
    log,
    partial,
    polynomial,
    power,
    reciprocal,
    seed,
    sin,
    sqrt,
    stack,
)

from .conftest import assert_close


@pytest.mark.unit
@pytest.mark.jets
class TestJetArithmetic:
    """Tests for jet spaces, arithmetic and derivatives"""

    def test_space_size(self):
        """
        Test that a jet space holds every monomial up to its order.

        Two variables up to degree 3 give C(5, 2) = 10 monomials, and the
        degree-1 prefix has 3.
        """
        space = JetSpace(2, 3)

        assert space.size == 10
        assert space.size_at(1) == 3

    def test_polynomial_derivatives(self):
        """
        Test that products and powers give exact mixed partials.

        f = x y + x³ at (0.3, 1.5): f_x = y + 3x², f_xy = 1, f_xxx = 6.
        """
        x, y = seed([0.3, 1.5], get_space(2, 4))
        f = x * y + x**3

        assert f.derivative((1, 0)) == pytest.approx(1.5 + 3 * 0.09)
        assert f.derivative((1, 1)) == pytest.approx(1.0)
        assert f.derivative((3, 0)) == pytest.approx(6.0)
        assert f.derivative((0, 2)) == pytest.approx(0.0)

    def test_elementary_functions(self):
        """
        Test that elementary functions carry the right Taylor coefficients.

        Second derivatives at t = 0.3 are known in closed form.
        """
        (t,) = seed([0.3], get_space(1, 4))

        assert sin(t).derivative((2,)) == pytest.approx(-math.sin(0.3))
        assert cos(t).derivative((3,)) == pytest.approx(math.sin(0.3))
        assert exp(t).derivative((4,)) == pytest.approx(math.exp(0.3))
        assert log(t).derivative((2,)) == pytest.approx(-1 / 0.09)
        assert power(t, 1.5).derivative((1,)) == pytest.approx(1.5 * math.sqrt(0.3))
        assert reciprocal(t).derivative((1,)) == pytest.approx(-1 / 0.09)

    def test_sqrt_of_norm(self):
        """
        Test that the gradient of a Euclidean norm is the unit vector.

        At (3, 4) the norm is 5 and its gradient (0.6, 0.8).
        """
        x, y = seed([3.0, 4.0], get_space(2, 3))
        r = sqrt(x * x + y * y)

        assert r.value == pytest.approx(5.0)
        assert_close(r.gradient([0, 1]).value, [0.6, 0.8])

    def test_matrix_inverse(self):
        """
        Test that the inverse of a jet matrix is exact to the space order.

        M⁻¹ M must be the constant identity: value I and every higher
        coefficient zero.
        """
        a, b = seed([0.4, -0.7], get_space(2, 4))
        M = stack([stack([2.0 + a, b]), stack([b * a, 3.0 - a * a])])

        product = einsum("ij,jk->ik", inv(M), M)

        assert_close(product.coeffs[..., 0], np.eye(2))
        assert_close(product.coeffs[..., 1:], np.zeros((2, 2, product.space.size - 1)))

    def test_composition_chain_rule(self):
        """
        Test that composition substitutes one expansion into another.

        f(s) = s² expanded at s = sin(0.5), composed with s = sin(t), gives
        d/dt sin²t = sin 2t at t = 0.5.
        """
        (s,) = seed([math.sin(0.5)], get_space(1, 3))
        (t,) = seed([0.5], get_space(1, 3))

        composed = compose(s * s, stack([sin(t)]))

        assert composed.derivative((1,)) == pytest.approx(math.sin(1.0))

    def test_truncate(self):
        """
        Test that truncation keeps the low-order prefix of the series.

        The truncated jet lives in the lower-order space with the same value
        and first derivatives.
        """
        x, y = seed([0.3, 1.5], get_space(2, 4))
        f = exp(x * y)

        low = f.truncate(1)

        assert low.space.order == 1
        assert low.value == pytest.approx(f.value)
        assert_close(low.gradient([0, 1]).value, f.gradient([0, 1]).value)

    def test_stack_of_numbers_is_plain(self):
        """
        Test that stacking plain numbers stays a numpy array.

        Models evaluate on floats and on jets through the same code.
        """
        result = stack([1.0, 2.0, 3.0])

        assert isinstance(result, np.ndarray)
        assert_close(result, [1.0, 2.0, 3.0])

    def test_polynomial_is_reproducible(self):
        """
        Test that random test polynomials depend only on the generator seed.

        Coefficients above the requested degree stay zero.
        """
        space = get_space(2, 4)

        first = polynomial(space, 2, np.random.default_rng(7))
        second = polynomial(space, 2, np.random.default_rng(7))

        assert_close(first.coeffs, second.coeffs, tol=0.0)
        assert np.all(first.coeffs[space.size_at(2) :] == 0.0)
        with pytest.raises(ValueError):
            polynomial(space, 5, np.random.default_rng(7))


@pytest.mark.unit
@pytest.mark.jets
class TestJetDomain:
    """Tests for domain errors of jet functions"""

    def test_sqrt_of_negative(self):
        """
        Test that sqrt rejects a non-positive constant term.

        The square root is not smooth there.
        """
        (t,) = seed([-1.0], get_space(1, 2))

        with pytest.raises(DomainError):
            sqrt(t)

    def test_reciprocal_of_zero(self):
        """
        Test that division by a series with zero constant term fails.

        Both plain and jet arguments raise DomainError.
        """
        with pytest.raises(DomainError):
            reciprocal(constant(get_space(1, 2), 0.0))
        with pytest.raises(DomainError):
            reciprocal(0.0)

    def test_mixed_spaces(self):
        """
        Test that jets of different spaces do not combine.

        Adding jets of different orders is a programming error.
        """
        (a,) = seed([1.0], get_space(1, 2))
        (b,) = seed([1.0], get_space(1, 3))

        with pytest.raises(ValueError):
            a + b


@pytest.mark.unit
@pytest.mark.jets
class TestPartials:
    """Tests for exact and finite-difference partial derivatives"""

    @staticmethod
    def field(x, y):
        return sqrt(x[0] * x[0] + 1.0) * (y[0] * y[0] + 2.0 * y[1] * y[1])

    def test_exact_partial(self):
        """
        Test that exact partials match the closed form.

        For f = sqrt(x² + 1)(y1² + 2y2²), ∂²f/∂x∂y1 = 2 y1 x / sqrt(x² + 1).
        """
        value = partial(self.field, [0.5], [1.2, -0.3], (1, 1, 0))

        assert value == pytest.approx(2 * 1.2 * 0.5 / math.sqrt(1.25))

    def test_finite_difference_agrees(self):
        """
        Test that central differences agree with exact partials.

        Agreement is within the finite-difference tolerance of each order.
        """
        for multi in [(1, 0, 0), (0, 1, 1), (2, 0, 0)]:
            exact = partial(self.field, [0.5], [1.2, -0.3], multi)
            approx = fd_partial(self.field, [0.5], [1.2, -0.3], multi)

            assert abs(exact - approx) <= 1e-5 * (1.0 + abs(exact))

    def test_order_overflow(self):
        """
        Test that partials beyond the supported order are refused.

        The engine supports total order up to ENGINE_MAX_PARTIAL_ORDER = 4.
        """
        with pytest.raises(OrderOverflowError):
            partial(self.field, [0.5], [1.2, -0.3], (2, 2, 1))

    def test_negative_multi_index(self):
        """
        Test that a negative derivative count is rejected.

        Multi-indices count derivatives and cannot be negative.
        """
        with pytest.raises(ValueError):
            partial(self.field, [0.5], [1.2, -0.3], (1, -1, 0))
