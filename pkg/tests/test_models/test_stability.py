"""Tests of the average stability of closed form solutions."""
import math

import numpy as np
import pytest
from core import models


def of_y(expression):
    return models.ExpressionField(expression, ("y",))


def of_x(expression):
    return models.ExpressionField(expression, ("x",))


@pytest.fixture
def window():
    """Small window; 8 times in [0.1, 2] and 16 quadrature nodes on [-1, 1]."""
    return models.AverageWindow.uniform(
        L=1.0, t_min=0.1, t_max=2.0, t_points=8, quadrature_points=16
    )


class TestAverageWindow:
    """Tests of the AverageWindow class."""

    def test_uniform_grid(self, window):
        assert len(window.t_grid) == 8
        assert window.t_grid[0] == pytest.approx(0.1)
        assert window.t_grid[-1] == pytest.approx(2.0)

    def test_nodes_integrate_polynomials(self, window):
        nodes, weights = window.nodes()
        assert weights.sum() == pytest.approx(2.0)
        assert weights @ nodes**2 == pytest.approx(2 / 3)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"L": 0.0},
            {"t_grid": ()},
            {"t_grid": (1.0, 0.5)},
            {"t_grid": (0.0, math.inf)},
            {"quadrature_points": models.MIN_QUADRATURE_POINTS - 1},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            models.AverageWindow(**kwargs)


class TestPerturbation:
    """Tests of the Perturbation class and its pointwise quantities."""

    def test_profiles_must_have_one_variable(self, constant_base):
        with pytest.raises(models.JetShapeError):
            models.Perturbation(models.ExpressionField("x * y", n=2), of_x("0"), constant_base)

    def test_xi(self, affine_base):
        """xi = (s(y) + r(x)) u."""
        pert = models.Perturbation(of_y("y^2"), of_x("sin(x)"), affine_base)
        x, y = 0.7, 1.3
        expected = (y * y + math.sin(x)) * (y + 1)
        assert models.xi_eval(pert, x, y) == pytest.approx(expected)

    def test_linearized_residual_vanishes(self, rng):
        """Every perturbation (s + r) u is tangent to the solution set."""
        base = models.ClosedFormSolution(0.5, 0.2, models.exponential_profile(0.3))
        pert = models.Perturbation(of_y("cos(y)"), of_x("x^3"), base)
        for point in rng.uniform(-1, 1, (10, 2)):
            assert abs(models.linearized_residual(pert, point)) < 1e-10

    def test_material_derivative(self, affine_base):
        """For xi = y u and u = y + 1, d xi/dt = (2 y + 1)(y + 1)."""
        pert = models.Perturbation(of_y("y"), of_x("0"), affine_base)
        assert models.material_derivative(pert, 0.4, 2.0) == pytest.approx(15.0)

    def test_operator_defect(self, affine_base):
        """2 u phi_y + u_y phi with u = y + 1 and phi = x y^2."""
        pert = models.Perturbation(of_y("1"), of_x("0"), affine_base)
        phi = models.ExpressionField("x * y^2", n=2)
        x, y = 0.5, 2.0
        expected = 2 * (y + 1) * (2 * x * y) + x * y * y
        assert models.operator_defect(pert, phi, x, y) == pytest.approx(expected)

    @pytest.mark.parametrize("seed", range(50))
    def test_operator_defect_random_phi(self, constant_base, seed):
        """2 u phi_y + u_y phi for phi = a sin(b x + c y) + d exp(e y)."""
        rng = np.random.default_rng(seed)
        a, b, c, d, e = (float(v) for v in rng.uniform(-2, 2, 5))
        phi = models.ExpressionField(
            f"({a!r}) * sin(({b!r}) * x + ({c!r}) * y) + ({d!r}) * exp(({e!r}) * y)",
            n=2,
        )
        curved = models.ClosedFormSolution(0.5, 0.2, models.exponential_profile(0.3))
        x, y = rng.uniform(-1, 1, 2)
        phi_value = a * math.sin(b * x + c * y) + d * math.exp(e * y)
        phi_y = a * c * math.cos(b * x + c * y) + d * e * math.exp(e * y)

        flat = models.Perturbation(of_y("1"), of_x("0"), constant_base)
        assert models.operator_defect(flat, phi, x, y) == pytest.approx(
            2 * phi_y, rel=1e-8, abs=1e-8
        )

        h = math.exp(0.3 * x)
        u = (0.1 * y * y + 0.5 * y + 1) * h
        u_y = (0.2 * y + 0.5) * h
        pert = models.Perturbation(of_y("1"), of_x("0"), curved)
        assert models.operator_defect(pert, phi, x, y) == pytest.approx(
            2 * u * phi_y + u_y * phi_value, rel=1e-8, abs=1e-8
        )

    def test_adjoint_defect(self, affine_base, constant_base, window):
        phi = models.ConstantField(1.0, 2)

        affine = models.Perturbation(of_y("1"), of_x("0"), affine_base)
        assert models.adjoint_defect(affine, phi, window, 0.5).pointwise_max == (
            pytest.approx(1.0)
        )

        constant = models.Perturbation(of_y("1"), of_x("0"), constant_base)
        defect = models.adjoint_defect(constant, phi, window, 0.5)
        assert defect.pointwise_max == pytest.approx(0.0, abs=1e-12)
        assert defect.pairing == pytest.approx(0.0, abs=1e-12)

    def test_adjoint_defect_requires_two_variables(self, affine_base, window):
        pert = models.Perturbation(of_y("1"), of_x("0"), affine_base)
        with pytest.raises(models.JetShapeError):
            models.adjoint_defect(pert, of_x("x"), window, 0.5)


class TestAveragePower:
    """Tests of average_power() and average_power_rate()."""

    def test_constant_perturbation(self, constant_base, window):
        """xi = u = 1 has p = 1/2 and p' = 0."""
        pert = models.Perturbation(of_y("1"), of_x("0"), constant_base)
        assert models.average_power(pert, window, 1.0) == pytest.approx(0.5)
        assert models.average_power_rate(pert, window, 1.0) == pytest.approx(
            0.0, abs=1e-14
        )

    def test_decaying_perturbation(self, constant_base, window):
        """xi = exp(-y) has p = exp(-2t)/2 and p' = -exp(-2t)."""
        pert = models.Perturbation(of_y("exp(-y)"), of_x("0"), constant_base)
        t = 0.8
        assert models.average_power(pert, window, t) == pytest.approx(
            math.exp(-2 * t) / 2
        )
        assert models.average_power_rate(pert, window, t) == pytest.approx(
            -math.exp(-2 * t)
        )

    @pytest.mark.parametrize("t", [0.3, 1.0, 1.7])
    def test_rate_matches_finite_difference(self, constant_base, window, t):
        """On u = 1, p' is the t-derivative of p."""
        pert = models.Perturbation(of_y("exp(-y) + y^2"), of_x("sin(x)"), constant_base)
        step = 1e-5
        difference = (
            models.average_power(pert, window, t + step)
            - models.average_power(pert, window, t - step)
        ) / (2 * step)
        assert models.average_power_rate(pert, window, t) == pytest.approx(
            difference, abs=1e-4
        )

    def test_quadrature_converges(self):
        """Doubling the quadrature size leaves p unchanged."""
        base = models.ClosedFormSolution(0.5, 0.2, models.exponential_profile(0.3))
        pert = models.Perturbation(of_y("cos(y)"), of_x("sin(x)"), base)
        coarse = models.AverageWindow.uniform(quadrature_points=64)
        fine = models.AverageWindow.uniform(quadrature_points=128)
        for t in (0.5, 2.0, 5.0):
            assert models.average_power(pert, fine, t) == pytest.approx(
                models.average_power(pert, coarse, t), rel=1e-8
            )

    def test_overflow(self, constant_base, window):
        pert = models.Perturbation(of_y("exp(y)"), of_x("0"), constant_base)
        with pytest.raises(models.JetDomainError):
            models.average_power(pert, window, 1e4)


class TestAssessSamples:
    """Tests of the assess_samples() function."""

    def test_exponential_decay(self):
        times = np.linspace(0, 5, 20)
        p = np.exp(-2 * times)
        report = models.assess_samples(times, p, -2 * p)

        assert report.verdict == models.AVERAGE_STABLE
        assert report.fitted_rate == pytest.approx(2.0)
        assert report.tau0 == pytest.approx(0.5)
        assert report.literal_c0 == pytest.approx(-2.0)

    def test_growth(self):
        times = np.linspace(0, 5, 20)
        report = models.assess_samples(times, np.exp(times))

        assert report.verdict == models.AVERAGE_UNSTABLE
        assert report.tau0 == math.inf
        assert math.isnan(report.literal_c0)

    def test_vanishing_sample(self):
        report = models.assess_samples([0.0, 1.0, 2.0], [1.0, 0.0, 1.0])
        assert report.verdict == models.INDETERMINATE


class TestStabilityVerdict:
    """Tests of the stability_verdict() function."""

    def test_scaling_perturbation_is_unstable(self, constant_base, window):
        """xi = u keeps p = 1/2 forever."""
        pert = models.Perturbation(of_y("1"), of_x("0"), constant_base)
        report = models.stability_verdict(pert, window)

        assert report.verdict == models.AVERAGE_UNSTABLE
        assert report.tau0 == math.inf
        assert all(p == pytest.approx(0.5) for _, p in report.p_samples)
        assert all(pdot == pytest.approx(0.0, abs=1e-14) for _, pdot in report.pdot_samples)

    def test_decaying_perturbation_is_stable(self, constant_base, window):
        pert = models.Perturbation(of_y("exp(-y)"), of_x("0"), constant_base)
        report = models.stability_verdict(pert, window)

        assert report.verdict == models.AVERAGE_STABLE
        assert report.fitted_rate == pytest.approx(2.0, rel=1e-6)
        assert report.literal_c0 == pytest.approx(-2.0, rel=1e-6)


class TestBoundedness:
    """Tests of the boundedness_probe() function."""

    @pytest.mark.parametrize(
        "s,expected",
        [
            ("0", models.BOUNDED),
            ("1", models.BOUNDED),
            ("sin(y)", models.BOUNDED),
            ("y", models.UNBOUNDED),
            ("y^2", models.UNBOUNDED),
            ("exp(y)", models.UNBOUNDED),
        ],
    )
    def test_growth_verdict(self, constant_base, s, expected):
        pert = models.Perturbation(of_y(s), of_x("0"), constant_base)
        assert models.boundedness_probe(pert, L=1.0) == expected

    def test_linear_base_is_unbounded(self, affine_base):
        """xi = u = y + 1 grows without limit."""
        pert = models.Perturbation(of_y("1"), of_x("0"), affine_base)
        assert models.boundedness_probe(pert, L=1.0) == models.UNBOUNDED

    def test_growth_measured_from_first_nonzero_sample(self, constant_base):
        """xi = (y - 1)^3 vanishes at y = 1 and grows afterwards."""
        pert = models.Perturbation(of_y("(y - 1)^3"), of_x("0"), constant_base)
        assert models.boundedness_probe(pert, y_max=1e4, L=1.0) == models.UNBOUNDED

    def test_short_range_is_bounded(self, constant_base):
        """Up to y = 8192 linear growth stays below the threshold."""
        pert = models.Perturbation(of_y("y"), of_x("0"), constant_base)
        assert models.boundedness_probe(pert, y_max=1e4, L=1.0) == models.BOUNDED
