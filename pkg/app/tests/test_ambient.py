import math

import numpy as np
import pytest

from app.ambient import (
    BLOCKS,
    bracket_coefficients,
    cartan_metrical_connection,
    cartan_nonlinear_connection,
    christoffel,
    commutator_curvature_oracle,
    covariant_derivative_h,
    curvature_tensors,
    delta_derivative,
    expand,
    fd_christoffel,
    oracle_blocks,
    spray,
    torsion_tensors,
)
from app.errors import VarianceMismatchError
from app.jets import einsum
from app.metric import AmbientPoint, RandersMetric

from .conftest import assert_close


def sphere_christoffel(x1: float) -> np.ndarray:
    """Levi-Civita symbols of diag(1, sin²x1), stored [a, b, c]."""
    gamma = np.zeros((2, 2, 2))
    gamma[0, 1, 1] = -math.sin(x1) * math.cos(x1)
    gamma[1, 0, 1] = gamma[1, 1, 0] = math.cos(x1) / math.sin(x1)
    return gamma


def constant_curvature(g: np.ndarray, K: float) -> np.ndarray:
    identity = np.eye(len(g))
    return K * (np.einsum("cb,ad->bacd", g, identity) - np.einsum("db,ac->bacd", g, identity))


@pytest.mark.unit
@pytest.mark.ambient
class TestCartanNonlinearConnection:
    """Tests for the spray and the nonlinear connection"""

    def test_euclidean_is_flat(self, euclidean, ambient_point):
        """
        Test that Euclidean space has vanishing spray and connection.

        Constant g has no Christoffel symbols.
        """
        nonlinear = cartan_nonlinear_connection(euclidean, ambient_point)

        assert_close(spray(euclidean, ambient_point), np.zeros(3))
        for block in nonlinear.blocks().values():
            assert_close(block, np.zeros_like(block))

    def test_sphere_chart_connection(self, sphere_chart, sphere_point):
        """
        Test that a Riemannian nonlinear connection is N^a_b = γ^a_bc y^c.

        The sphere chart's Christoffel symbols are known in closed form.
        """
        gamma = sphere_christoffel(0.9)
        y = sphere_point.y_array

        assert_close(christoffel(sphere_chart, sphere_point), gamma)
        assert_close(cartan_nonlinear_connection(sphere_chart, sphere_point).N, gamma @ y)
        assert_close(spray(sphere_chart, sphere_point), 0.5 * np.einsum("abc,b,c->a", gamma, y, y))

    def test_nonlinear_is_one_homogeneous(self, randers, ambient_point):
        """
        Test that the fiber derivative of N contracted with y returns N.

        N is 1-homogeneous in y, so ∂̇_c N^a_b y^c = N^a_b.
        """
        nonlinear = cartan_nonlinear_connection(randers, ambient_point)

        assert_close(np.einsum("abc,c->ab", nonlinear.dN_dy, ambient_point.y_array), nonlinear.N)

    def test_delta_of_euclidean(self, euclidean, ambient_point):
        """
        Test that δ reduces to ∂ when N vanishes.

        For f = x1 y2 the adapted horizontal derivative is (y2, 0, 0).
        """
        gradient = delta_derivative(euclidean, ambient_point, lambda x, y: x[0] * y[1])

        assert_close(gradient, [ambient_point.y[1], 0.0, 0.0])


@pytest.mark.unit
@pytest.mark.ambient
class TestCartanConnection:
    """Tests for the Cartan metrical N-linear connection"""

    def test_metricity(self, randers, ambient_point):
        """
        Test that the Cartan connection is metrical for g and the lift block.

        All four metricity identities hold to asserted tolerance.
        """
        jets = expand(randers, ambient_point)

        for lhs, rhs in jets.connection.metricity(jets.g, jets.h).values():
            assert_close(lhs.value, rhs.value, tol=1e-8)

    def test_riemannian_reduction(self, sphere_chart, sphere_point):
        """
        Test that a Riemannian metric gives Levi-Civita and no vertical coupling.

        L00 is the Christoffel form of g and C01 vanishes.
        """
        connection = cartan_metrical_connection(sphere_chart, sphere_point)

        assert_close(connection.L00, sphere_christoffel(0.9))
        assert_close(connection.C01, np.zeros((2, 2, 2)))

    @pytest.mark.parametrize("metric_name", ["sphere_chart", "sphere_chart3"])
    def test_levi_civita_against_finite_differences(self, request, metric_name, ambient_point):
        """
        Test that L00 of a Riemannian metric matches finite-difference Christoffel symbols.

        The reference recovers g by polarization of F² and never touches jets.
        """
        metric = request.getfixturevalue(metric_name)
        point = AmbientPoint(x=ambient_point.x[: metric.n], y=ambient_point.y[: metric.n])

        connection = cartan_metrical_connection(metric, point)

        assert_close(connection.L00, fd_christoffel(metric, point.x_array), tol=1e-7)

    def test_finite_difference_christoffel_closed_form(self, sphere_chart):
        """
        Test that the finite-difference reference reproduces the round sphere symbols.

        Only Riemannian metrics can be polarized.
        """
        assert_close(fd_christoffel(sphere_chart, [0.9, 0.4]), sphere_christoffel(0.9), tol=1e-8)
        with pytest.raises(ValueError):
            fd_christoffel(RandersMetric(3, b=(0.3, 0.1, 0.0)), [0.1, 0.2, 0.3])

    def test_covariant_derivative_of_metric(self, sphere_chart, sphere_point):
        """
        Test that the horizontal covariant derivative of the chart metric vanishes.

        Metricity written through the generic covariant derivative.
        """
        result = covariant_derivative_h(
            sphere_chart,
            sphere_point,
            lambda x, y: sphere_chart.metric_matrix(x),
            [("down", "H"), ("down", "H")],
        )

        assert_close(result, np.zeros((2, 2, 2)), tol=1e-8)

    def test_unknown_index_declaration(self, randers, ambient_point):
        """
        Test that an unknown variance tag raises VarianceMismatchError.

        Index slots are declared as ("up"|"down", "H"|"V").
        """
        with pytest.raises(VarianceMismatchError):
            covariant_derivative_h(randers, ambient_point, lambda x, y: x, [("sideways", "H")])


@pytest.mark.unit
@pytest.mark.ambient
class TestTorsionAndCurvature:
    """Tests for torsion, brackets and curvature blocks"""

    def test_horizontal_torsion_vanishes(self, randers, ambient_point):
        """
        Test that the Cartan connection has no hh-torsion and no vv-torsion.

        L00 and C11 are symmetric in their lower indices.
        """
        torsion = torsion_tensors(randers, ambient_point)

        assert_close(torsion.T00, np.zeros((3, 3, 3)))
        assert_close(torsion.S11, np.zeros((3, 3, 3)))

    def test_bracket_is_torsion(self, randers, ambient_point):
        """
        Test that the R01 torsion block is minus the bracket curvature.

        [δ_b, δ_c] = −R^a_bc ∂̇_a and R01 = −R.
        """
        R, _ = bracket_coefficients(randers, ambient_point)

        assert_close(torsion_tensors(randers, ambient_point).R01, -R)

    def test_sphere_sectional_curvature(self, sphere_chart, sphere_point):
        """
        Test that the unit sphere chart has constant curvature one.

        RH = g_cb δ_ad − g_db δ_ac and R01 = y^e RH_e.
        """
        curvature = curvature_tensors(sphere_chart, sphere_point)
        torsion = torsion_tensors(sphere_chart, sphere_point)
        g = np.diag([1.0, math.sin(0.9) ** 2])

        assert_close(curvature.RH, constant_curvature(g, 1.0), tol=1e-8)
        assert_close(
            torsion.R01, einsum("e,eabc->abc", sphere_point.y_array, curvature.RH), tol=1e-8
        )

    def test_curvature_matches_oracle(self, randers, ambient_point):
        """
        Test that every block formula agrees with the commutator oracle.

        The oracle evaluates R(E_D, E_C) E_B on the adapted frame directly.
        """
        curvature = curvature_tensors(randers, ambient_point).blocks()
        oracle = oracle_blocks(expand(randers, ambient_point).connection)

        for block in BLOCKS:
            assert_close(curvature[block], oracle[block], tol=1e-6)

    def test_oracle_single_block(self, sphere_chart3, ambient_point):
        """
        Test that the oracle returns a single block by name.

        The hyperspherical 3-sphere has constant curvature one.
        """
        g = expand(sphere_chart3, ambient_point).g.value

        RH = commutator_curvature_oracle(sphere_chart3, ambient_point, "RH")

        assert_close(RH, constant_curvature(g, 1.0), tol=1e-6)
        with pytest.raises(ValueError):
            commutator_curvature_oracle(sphere_chart3, ambient_point, "XX")
