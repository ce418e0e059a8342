import numpy as np
import pytest

from app.compare import (
    ComparisonRow,
    IntrinsicModel,
    RowMode,
    adapted_basis_relation_check,
    bracket_difference_tensors,
    bracket_rows,
    comparison_rows,
    connection_difference,
    deformation_deltas,
    deformation_tensor_components,
    error_row,
    expand,
    intrinsic_nonlinear_connection,
    residual_row,
    sample_functions,
    submanifold_brackets,
    torsion_comparison,
    vanishing_rows,
)
from app.errors import DegenerateMetricError
from app.jets import get_space, stack
from app.submanifold import induced_nonlinear_connection, lift_point

from .conftest import assert_close


@pytest.mark.unit
@pytest.mark.compare
class TestResidualRows:
    """Tests for residual rows and their pass rule"""

    def test_relative_residual(self):
        """
        Test that the relative residual is scaled by one plus the larger norm.

        |[1, 2] − [1, 2.5]| = 0.5 over 1 + 2.5.
        """
        row = residual_row("demo", [1.0, 2.0], [1.0, 2.5], 0.2)

        assert row.abs_residual == pytest.approx(0.5)
        assert row.rel_residual == pytest.approx(0.5 / 3.5)
        assert row.passed is True
        assert row.with_tolerance(0.1).passed is False

    def test_nan_never_passes(self):
        """
        Test that a non-finite entry fails the row.

        NaN comparisons are false, so rel_residual <= tol is false.
        """
        row = residual_row("demo", [np.nan], [0.0], 1.0)

        assert row.passed is False

    def test_shape_mismatch(self):
        """
        Test that arrays of different shapes cannot be compared.

        Silently broadcasting would hide index mistakes.
        """
        with pytest.raises(ValueError):
            residual_row("demo", np.zeros(3), np.zeros((3, 1)), 1.0)

    def test_error_row(self):
        """
        Test that an error row carries the exception text and no verdict.

        Error rows have no residual and no pass flag.
        """
        row = error_row("tangent.domain_error", DegenerateMetricError("singular"))

        assert row.mode is RowMode.ERROR
        assert row.passed is None
        assert row.message == "DegenerateMetricError: singular"
        assert isinstance(row.at_point(4), ComparisonRow)
        assert row.at_point(4).point == 4


@pytest.mark.unit
@pytest.mark.compare
class TestIntrinsicGeometry:
    """Tests for the intrinsic structure of a submanifold"""

    def test_intrinsic_fundamental_function(self, randers, saddle, sub_point):
        """
        Test that F̌²(u, v) equals F² at the lifted point.

        The intrinsic model is the pull-back of the ambient fundamental function.
        """
        model = IntrinsicModel(randers, saddle)
        lifted = lift_point(saddle, sub_point)

        assert float(model.f2(sub_point.u_array, sub_point.v_array)) == pytest.approx(
            float(randers.f2(lifted.x_array, lifted.y_array))
        )
        assert model.n == 2 and model.p == randers.p

    def test_riemannian_connections_agree(self, euclidean, unit_sphere, sub_point):
        """
        Test that the intrinsic and induced nonlinear connections agree for Riemannian ambients.

        The difference D vanishes identically.
        """
        model = IntrinsicModel(euclidean, unit_sphere)

        assert_close(
            intrinsic_nonlinear_connection(model, sub_point),
            induced_nonlinear_connection(euclidean, unit_sphere, sub_point),
            tol=1e-9,
        )
        assert_close(connection_difference(euclidean, unit_sphere, sub_point), np.zeros((2, 2)))

    def test_randers_connections_differ(self, randers, saddle, sub_point):
        """
        Test that a Randers ambient separates the two nonlinear connections.

        The saddle is curved, so the Cartan tensor term in D is nonzero.
        """
        D = connection_difference(randers, saddle, sub_point)

        assert float(np.max(np.abs(D))) > 1e-6


@pytest.mark.unit
@pytest.mark.compare
class TestDifferenceTensors:
    """Tests for the adapted-basis relation, brackets and deformation"""

    def test_adapted_basis_relation(self, randers, saddle, sub_point):
        """
        Test that δ̊_α f = δ_α f − D^β_α ∂̇_β f on random test functions.

        This is the definition of D in terms of the adapted frames.
        """
        assert adapted_basis_relation_check(randers, saddle, sub_point) < 1e-9

    def test_submanifold_brackets(self, sub_point):
        """
        Test that bracket coefficients follow from a given nonlinear connection.

        For N^1_2 = v^1 and all else zero, only B^1_21 = ∂̇_1 N^1_2 = 1 survives.
        """

        def nonlinear(u, v):
            return stack([stack([0.0, v[0]]), stack([0.0, 0.0])])

        R, B = submanifold_brackets(nonlinear, sub_point)

        expected = np.zeros((2, 2, 2))
        expected[0, 1, 0] = 1.0
        assert_close(R, np.zeros((2, 2, 2)))
        assert_close(B, expected)

    def test_submanifold_brackets_shape(self, sub_point):
        """
        Test that a nonlinear connection of the wrong shape is rejected.

        N must be m×m.
        """
        with pytest.raises(ValueError):
            submanifold_brackets(lambda u, v: stack([v[0], v[1]]), sub_point)

    def test_bracket_difference_orientation(self, randers, saddle, sub_point):
        """
        Test that bracket difference rows state their orientation and pass.

        R01 = −R, so the R row compares D100 with R induced − R intrinsic.
        """
        comparison = expand(randers, saddle, sub_point)
        functions = sample_functions(comparison.sub.space, count=1, seed=2)

        rows = {row.identity: row for row in bracket_rows(comparison, functions)}

        r_row = rows["compare.bracket_difference.r"]
        assert "R induced − R intrinsic" in r_row.reference
        assert "B intrinsic − induced" in rows["compare.bracket_difference.b"].reference
        assert r_row.passed and rows["compare.bracket_difference.b"].passed

    def test_euclidean_differences_vanish(self, euclidean, unit_sphere, sub_point):
        """
        Test that every difference tensor vanishes in a Riemannian ambient.

        D100, D101 and the horizontal block differences are zero.
        """
        D100, D101 = bracket_difference_tensors(euclidean, unit_sphere, sub_point)
        deltas = deformation_deltas(euclidean, unit_sphere, sub_point)

        for tensor in (D100, D101, deltas.H00):
            assert_close(tensor, np.zeros_like(tensor))

    def test_vanishing_rows_only_for_riemannian(self, euclidean, randers, saddle, sub_point):
        """
        Test that vanishing rows are emitted for Riemannian ambients only.

        The Euclidean rows pass and the Randers comparison emits none.
        """
        rows = vanishing_rows(expand(euclidean, saddle, sub_point))

        assert {row.identity for row in rows} >= {
            "compare.vanishing.d",
            "compare.vanishing.d100",
            "compare.vanishing.d101",
            "compare.vanishing.h00",
        }
        assert all(row.passed for row in rows)
        assert vanishing_rows(expand(randers, saddle, sub_point)) == []

    def test_deformation_h10_is_structural_zero(self, randers, saddle, sub_point):
        """
        Test that the H10 deformation component is zero.

        Both connections share the vertical frame, so this block is zero by
        construction.
        """
        deformation = deformation_tensor_components(randers, saddle, sub_point)

        assert_close(deformation.H10, np.zeros_like(deformation.H10), tol=0.0)

    def test_torsion_comparison(self, randers, saddle, sub_point):
        """
        Test that the asserted torsion comparisons pass.

        Informational rows are reported but not required to pass.
        """
        rows = torsion_comparison(randers, saddle, sub_point)

        asserted = [row for row in rows if row.mode is RowMode.ASSERTED]
        assert asserted
        assert all(row.passed for row in asserted), [r.identity for r in asserted if not r.passed]


@pytest.mark.unit
@pytest.mark.compare
class TestComparisonRows:
    """Tests for the full set of comparison rows at one point"""

    def test_sample_functions_reproducible(self):
        """
        Test that test functions depend only on the seed.

        The harness seeds each point with [seed, index].
        """
        space = get_space(4, 4)

        first = sample_functions(space, count=2, seed=[0xF175, 3])
        second = sample_functions(space, count=2, seed=[0xF175, 3])

        assert len(first) == 2
        for a, b in zip(first, second):
            assert_close(a.coeffs, b.coeffs, tol=0.0)

    @pytest.mark.slow
    def test_randers_rows_pass(self, randers, saddle, sub_point):
        """
        Test that every asserted comparison row passes for a Randers ambient.

        Informational rows carry closed forms and are excluded from the verdict.
        """
        comparison = expand(randers, saddle, sub_point)
        functions = sample_functions(comparison.sub.space, count=2, seed=1)

        rows = comparison_rows(comparison, functions)

        identities = {row.identity for row in rows}
        assert "compare.deformation.h10" in identities
        assert "compare.curvature.sh" in identities
        failed = [row.identity for row in rows if row.mode is RowMode.ASSERTED and not row.passed]
        assert failed == []
