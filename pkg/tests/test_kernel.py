"""Tests for the curve kernel: derivatives, arc length and the Frenet apparatus."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quatcurves.errors import (
    DegenerateRatioError,
    DomainError,
    GridRangeError,
    ParameterError,
    SingularParametrizationError,
    UndefinedFrameError,
)
from quatcurves.families import SalkowskiParams, circle, circular_helix, line, salkowski
from quatcurves.kernel import (
    Curve,
    SampledCurve,
    arc_length,
    cumulative_arc_length,
    derivative,
    fornberg_weights,
    frame_field,
    frame_table,
    frenet_at,
    frenet_residuals,
    ode35_residual,
    param_at_arclength,
    resolve_step,
    total_curvature,
)
from quatcurves.models import FrenetSample, Provenance


def cubic_curve() -> Curve:
    """t -> (t^3, 0, 0): its speed vanishes at t = 0."""
    return Curve(
        lambda t: np.stack([t**3, np.zeros_like(t), np.zeros_like(t)], axis=-1),
        (-1.0, 1.0),
        {1: lambda t: np.stack([3 * t**2, np.zeros_like(t), np.zeros_like(t)], axis=-1)},
        "cubic",
    )


class TestCurve:
    def test_rejects_empty_domain(self):
        with pytest.raises(ParameterError):
            Curve(lambda t: np.zeros((t.size, 3)), (1.0, 1.0))

    def test_rejects_unsupported_derivative_order(self):
        with pytest.raises(ParameterError):
            Curve(lambda t: np.zeros((t.size, 3)), (0.0, 1.0), {4: lambda t: np.zeros((t.size, 3))})

    def test_evaluation_outside_domain(self, salkowski_m1):
        with pytest.raises(DomainError):
            salkowski_m1(salkowski_m1.domain[1] + 0.1)

    def test_non_finite_values_rejected(self):
        c = Curve(lambda t: np.stack([1.0 / t, t, t], axis=-1), (0.0, 1.0))
        with pytest.raises(DomainError):
            c(0.0)

    def test_scalar_and_array_shapes(self, salkowski_m1):
        assert salkowski_m1(0.1).shape == (3,)
        assert salkowski_m1(np.zeros((4, 2))).shape == (4, 2, 3)

    def test_regular_intervals_remove_excluded(self, anti_salkowski_m1):
        p = SalkowskiParams.create(1.0)
        intervals = anti_salkowski_m1.regular_intervals()
        assert len(intervals) == 2
        assert intervals[0] == pytest.approx((p.domain[0], -p.margin))
        assert intervals[1] == pytest.approx((p.margin, p.domain[1]))

    def test_default_grid_needs_two_points(self, salkowski_m1):
        with pytest.raises(ParameterError):
            salkowski_m1.default_grid(1)

    def test_antipodal_keeps_curvature_and_flips_torsion(self, salkowski_m1, params_m1):
        grid = params_m1.grid(201)
        original = frame_field(salkowski_m1, grid)
        mirrored = frame_field(salkowski_m1.antipodal(), grid)
        np.testing.assert_allclose(mirrored.curvature, original.curvature, atol=1e-10)
        np.testing.assert_allclose(mirrored.torsion, -original.torsion, atol=1e-10)

    def test_rigid_motion_keeps_intrinsic_data(self, salkowski_m1, params_m1):
        angle = 0.7
        rotation = np.array([[np.cos(angle), -np.sin(angle), 0.0], [np.sin(angle), np.cos(angle), 0.0], [0.0, 0.0, 1.0]])
        moved = salkowski_m1.transformed(rotation, (1.0, -2.0, 3.0))
        grid = params_m1.grid(201)
        a, b = frame_field(salkowski_m1, grid), frame_field(moved, grid)
        np.testing.assert_allclose(b.curvature, a.curvature, atol=1e-10)
        np.testing.assert_allclose(b.torsion, a.torsion, atol=1e-9)
        np.testing.assert_allclose(b.tangent, a.tangent @ rotation.T, atol=1e-10)

    def test_improper_rotation_rejected(self, salkowski_m1):
        with pytest.raises(ParameterError):
            salkowski_m1.transformed(np.diag([1.0, 1.0, -1.0]))

    @given(scale=st.floats(min_value=0.5, max_value=3.0), shift=st.floats(min_value=-1.0, max_value=1.0))
    @settings(max_examples=15, deadline=None)
    def test_reparametrisation_keeps_curvature_and_torsion(self, scale, shift):
        c = salkowski(1.0)
        lo, hi = c.domain
        domain = ((lo - shift) / scale, (hi - shift) / scale)
        moved = c.reparametrized(lambda u: scale * u + shift, domain, dphi=lambda u: np.full_like(u, scale))
        u = np.linspace(domain[0], domain[1], 41)[5:-5]
        original = frame_field(c, scale * u + shift)
        reparam = frame_field(moved, u)
        np.testing.assert_allclose(reparam.curvature, original.curvature, atol=1e-6)
        np.testing.assert_allclose(reparam.torsion, original.torsion, atol=1e-5)

    def test_reparametrisation_must_increase(self, salkowski_m1):
        with pytest.raises(ParameterError):
            salkowski_m1.reparametrized(lambda u: -u, (-1.0, 1.0))


class TestDerivatives:
    @pytest.mark.parametrize("order, atol", [(1, 1e-9), (2, 1e-7), (3, 1e-4)])
    def test_finite_differences_match_analytic(self, salkowski_m1, params_m1, order, atol):
        t = params_m1.grid(57)[1:-1]
        numeric = derivative(salkowski_m1.without_derivatives(), t, order)
        exact = derivative(salkowski_m1, t, order)
        np.testing.assert_allclose(numeric, exact, atol=atol)

    def test_higher_orders_chain_from_attached_derivative(self, salkowski_m1, params_m1):
        first_only = Curve(salkowski_m1.map(0), salkowski_m1.domain, {1: salkowski_m1.analytic(1)})
        t = params_m1.grid(31)
        np.testing.assert_allclose(derivative(first_only, t, 2), derivative(salkowski_m1, t, 2), atol=1e-8)
        np.testing.assert_allclose(derivative(first_only, t, 3), derivative(salkowski_m1, t, 3), atol=1e-6)

    def test_domain_ends_use_one_sided_stencils(self, salkowski_m1):
        ends = np.array(salkowski_m1.domain)
        numeric = derivative(salkowski_m1.without_derivatives(), ends, 1)
        np.testing.assert_allclose(numeric, derivative(salkowski_m1, ends, 1), atol=1e-8)

    def test_rejects_bad_order(self, salkowski_m1):
        with pytest.raises(ParameterError):
            derivative(salkowski_m1, 0.0, 4)

    def test_degenerate_step(self, salkowski_m1):
        with pytest.raises(ParameterError):
            resolve_step(salkowski_m1, 0.0)
        assert resolve_step(salkowski_m1) == pytest.approx(1e-4 * salkowski_m1.span)

    def test_fornberg_central_weights(self):
        np.testing.assert_allclose(fornberg_weights(0.0, [-1, 0, 1], 1), [-0.5, 0.0, 0.5], atol=1e-15)
        np.testing.assert_allclose(fornberg_weights(0.0, [-1, 0, 1], 2), [1.0, -2.0, 1.0], atol=1e-15)

    def test_fornberg_weights_are_exact_on_polynomials(self):
        nodes = np.array([0.0, 0.3, 0.7, 1.2, 2.0])
        weights = fornberg_weights(0.5, nodes, 2)
        # second derivative of x^3 at 0.5 is 3
        assert weights @ nodes**3 == pytest.approx(3.0, abs=1e-10)

    def test_fornberg_needs_enough_nodes(self):
        with pytest.raises(ParameterError):
            fornberg_weights(0.0, [0.0, 1.0], 2)


class TestArcLength:
    def test_half_circle(self):
        assert arc_length(circle(2.0), 0.0, np.pi) == pytest.approx(2.0 * np.pi, rel=1e-10)

    def test_reversed_interval_is_negative(self):
        assert arc_length(circle(2.0), np.pi, 0.0) == pytest.approx(-2.0 * np.pi, rel=1e-10)

    def test_helix_length(self):
        assert arc_length(circular_helix(1.0, 1.0), 0.0, 2.0 * np.pi) == pytest.approx(2.0 * np.pi * np.sqrt(2.0), rel=1e-10)

    def test_cumulative_arc_length_of_salkowski(self, salkowski_m1, params_m1):
        grid = params_m1.grid(401)
        s = cumulative_arc_length(salkowski_m1, grid)
        expected = params_m1.arc_length(grid) - params_m1.arc_length(grid[0])
        np.testing.assert_allclose(s, expected, atol=1e-10)

    def test_param_at_arclength_inverts_arc_length(self):
        c = circle(1.0)
        assert param_at_arclength(c, 1.0) == pytest.approx(1.0, abs=1e-8)
        assert param_at_arclength(c, 0.0) == c.domain[0]

    def test_param_at_arclength_out_of_range(self):
        with pytest.raises(DomainError):
            param_at_arclength(circle(1.0), 10.0)

    def test_param_at_arclength_detects_singular_speed(self):
        with pytest.raises(SingularParametrizationError) as excinfo:
            param_at_arclength(cubic_curve(), 0.5)
        assert excinfo.value.t == pytest.approx(0.0, abs=1e-2)


class TestFrenet:
    def test_frenet_at_on_circle(self):
        sample = frenet_at(circle(2.0), 0.0)
        assert isinstance(sample, FrenetSample)
        assert sample.k == pytest.approx(0.5)
        assert sample.r == pytest.approx(0.0, abs=1e-12)
        np.testing.assert_allclose(sample.tangent.as_array(), [0.0, 1.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(sample.normal1.as_array(), [-1.0, 0.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(sample.normal2.as_array(), [0.0, 0.0, 1.0], atol=1e-12)

    def test_frenet_at_on_line(self):
        with pytest.raises(UndefinedFrameError):
            frenet_at(line(), 0.0)

    def test_frenet_at_singular_speed(self):
        with pytest.raises(SingularParametrizationError):
            frenet_at(cubic_curve(), 0.0)

    def test_helix_curvature_and_torsion(self, helix_field):
        np.testing.assert_allclose(helix_field.curvature, 0.5, atol=1e-12)
        np.testing.assert_allclose(helix_field.torsion, 0.5, atol=1e-12)
        assert helix_field.provenance is Provenance.ANALYTIC

    def test_finite_difference_provenance(self):
        c = circular_helix(1.0, 1.0).without_derivatives()
        field = frame_field(c, np.linspace(0.0, 1.0, 11))
        assert field.provenance is Provenance.FINITE_DIFFERENCE
        np.testing.assert_allclose(field.torsion, 0.5, atol=1e-4)

    def test_frame_field_reports_offending_index(self):
        with pytest.raises(UndefinedFrameError) as excinfo:
            frame_field(line(), np.linspace(-1.0, 1.0, 5))
        assert excinfo.value.index == 0

    def test_frame_field_needs_increasing_grid(self, salkowski_m1):
        with pytest.raises(ParameterError):
            frame_field(salkowski_m1, [0.2, 0.1, 0.3])

    def test_samples_are_orthonormal(self, salkowski_field):
        sample = salkowski_field.sample(100)
        frame = np.stack([sample.tangent.as_array(), sample.normal1.as_array(), sample.normal2.as_array()])
        np.testing.assert_allclose(frame @ frame.T, np.eye(3), atol=1e-10)

    def test_frame_table_flags_anti_salkowski_inflection(self, anti_salkowski_m1):
        grid = anti_salkowski_m1.default_grid(401)
        table = frame_table(anti_salkowski_m1, grid)
        assert not table.defined[200]
        assert table.defined[0] and table.defined[-1]
        assert table.field is not None
        assert len(table.field) == int(np.count_nonzero(table.defined))

    def test_frame_table_of_line_has_no_field(self):
        table = frame_table(line(), np.linspace(-1.0, 1.0, 11))
        assert not table.defined.any()
        assert table.field is None

    def test_frenet_equations_hold(self, salkowski_m1, params_m1):
        grid = np.linspace(-0.7, 0.7, 2001) * params_m1.half_width
        residuals = frenet_residuals(frame_field(salkowski_m1, grid), edge=1)
        assert set(residuals) == {"tangent", "normal1", "normal2"}
        assert max(residuals.values()) < 1e-3


class TestTotalCurvature:
    def test_circle_total_curvature(self):
        field = frame_field(circle(2.0), np.linspace(0.0, 2.0 * np.pi, 401))
        assert total_curvature(field, np.pi) == pytest.approx(np.pi, rel=1e-9)
        assert field.total_curvature_profile()[-1] == pytest.approx(2.0 * np.pi, rel=1e-9)

    def test_helix_total_torsion(self, helix_field):
        profile = helix_field.total_torsion_profile()
        assert profile[0] == 0.0
        # r = 1/2 along a helix of length 2 pi sqrt(2)
        np.testing.assert_allclose(profile, 0.5 * (helix_field.s - helix_field.s[0]), atol=1e-9)
        assert profile[-1] == pytest.approx(np.pi * np.sqrt(2.0), rel=1e-9)

    def test_outside_grid(self, unit_circle_field):
        with pytest.raises(GridRangeError):
            total_curvature(unit_circle_field, 7.0)


class TestOde35:
    def test_constant_ratio_helix(self, helix_field):
        assert ode35_residual(helix_field) < 1e-4

    def test_salkowski_residual_converges(self, salkowski_m1, params_m1):
        lo, hi = 0.2 * params_m1.half_width, 0.7 * params_m1.half_width
        coarse = ode35_residual(frame_field(salkowski_m1, np.linspace(lo, hi, 201)))
        fine = ode35_residual(frame_field(salkowski_m1, np.linspace(lo, hi, 401)))
        assert coarse / fine > 3.0
        assert ode35_residual(frame_field(salkowski_m1, np.linspace(lo, hi, 4001))) < 1e-3

    def test_plane_curve_has_degenerate_ratio(self, unit_circle_field):
        with pytest.raises(DegenerateRatioError):
            ode35_residual(unit_circle_field)


class TestSampledCurve:
    def test_interpolates_circle(self):
        grid = np.linspace(0.0, 2.0 * np.pi, 201)
        c = circle(1.0)
        sampled = SampledCurve(grid, c(grid), label="circle samples")
        t = 0.5 * (grid[1:] + grid[:-1])
        np.testing.assert_allclose(sampled(t), c(t), atol=1e-7)
        assert sampled.degree == 5
        assert sampled.is_analytic

    def test_degree_drops_for_short_tables(self):
        grid = np.linspace(0.0, 1.0, 4)
        sampled = SampledCurve(grid, np.column_stack([grid, grid**2, grid**3]))
        assert sampled.degree == 3

    def test_derivative_samples_drive_derivatives(self):
        grid = np.linspace(0.0, 2.0 * np.pi, 201)
        c = circular_helix(1.0, 1.0)
        sampled = SampledCurve(grid, c(grid), derivative_samples=derivative(c, grid, 1))
        t = 0.5 * (grid[1:] + grid[:-1])
        np.testing.assert_allclose(derivative(sampled, t, 2), derivative(c, t, 2), atol=1e-6)

    def test_rejects_unsorted_samples(self):
        with pytest.raises(ParameterError):
            SampledCurve([0.0, 2.0, 1.0], np.zeros((3, 3)))

    def test_rejects_wrong_shape(self):
        with pytest.raises(ParameterError):
            SampledCurve([0.0, 1.0, 2.0], np.zeros((3, 2)))


def test_anti_salkowski_is_defined_away_from_zero(anti_salkowski_m1):
    p = SalkowskiParams.create(1.0)
    field = frame_field(anti_salkowski_m1, p.positive_grid(101))
    assert np.all(field.curvature > 0)
