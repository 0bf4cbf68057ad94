"""Tests of the d'Alembert residuals and structural constants."""
import math
from fractions import Fraction

import pytest
import sympy
from core import models


def random_factor(rng, n, skip):
    """Random positive expression independent of variable `skip`."""
    names = [v for i, v in enumerate(models.default_variables(n)) if i != skip]
    a, b = rng.uniform(-1, 1, 2)
    first, second = rng.choice(names, 2)
    return models.ExpressionField(
        f"exp({a:.4f} * {first}) * (2 + sin({b:.4f} * {second}))", n=n
    )


def random_product(rng, n):
    """Random product solution of (d'A)_n."""
    return models.ProductSolution([random_factor(rng, n, i) for i in range(n)])


class TestProductSolution:
    """Tests of the ProductSolution class."""

    def test_rejects_dependent_factor(self):
        """A factor depending on its own variable is rejected."""
        with pytest.raises(ValueError):
            models.ProductSolution(
                [models.ExpressionField("x", n=2), models.ExpressionField("x", n=2)]
            )

    def test_rejects_wrong_dimension(self):
        """Factors need one variable per factor."""
        with pytest.raises(models.JetShapeError):
            models.ProductSolution(
                [models.ExpressionField("y", n=2), models.ExpressionField("x", n=3)]
            )

    def test_check_independence(self):
        """Callable factors are checked on their jets."""
        solution = models.ProductSolution(
            [
                models.CallableField(lambda x, y: x * y + 2, 2),
                models.ExpressionField("x", n=2),
            ]
        )
        assert not solution.check_independence((1.0, 1.0))


class TestResidualLog:
    """Tests of the residual_log() function."""

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_product_solutions(self, n, rng):
        """Product solutions have a vanishing residual."""
        for _ in range(20):
            field = random_product(rng, n).field
            for point in rng.uniform(-1, 1, (100, n)):
                assert abs(models.residual_log(field, point)) < 1e-9

    def test_non_solution(self, exp_xy, rng):
        """exp(xy) has residual 1 everywhere."""
        for point in rng.uniform(-1, 1, (10, 2)):
            assert models.residual_log(exp_xy, point) == pytest.approx(1.0)

    def test_outside_regular_locus(self):
        """Non-positive values are outside the log form's domain."""
        field = models.ExpressionField("x * y", n=2)
        with pytest.raises(models.OutsideRegularLocus):
            models.residual_log(field, (-1.0, 1.0))

    def test_dimension_mismatch(self, separable_2d):
        """The field must have n variables."""
        with pytest.raises(models.JetShapeError):
            models.residual_log(separable_2d, (0.0, 0.0), n=3)

    def test_dalembert_problem(self, exp_xy):
        """DAlembertProblem dispatches on its form."""
        point = (0.5, 0.5)
        log_form = models.DAlembertProblem(2).residual(exp_xy, point)
        poly_form = models.DAlembertProblem(2, models.POLYNOMIAL_FORM).residual(
            exp_xy, point
        )
        assert poly_form == pytest.approx(exp_xy(point) ** 2 * log_form)
        with pytest.raises(models.UnsupportedDimension):
            models.DAlembertProblem(5, models.POLYNOMIAL_FORM)


class TestResidualPoly:
    """Tests of the residual_poly() function."""

    @pytest.mark.parametrize("n", [2, 3])
    def test_consistent_with_log_form(self, n, rng):
        """residual_poly = f^n residual_log."""
        variables = models.default_variables(n)
        product = " * ".join(variables)
        field = models.ExpressionField(f"exp({product}) + 2 + sin({variables[0]})", n=n)
        for point in rng.uniform(-1, 1, (200, n)):
            expected = field(point) ** n * models.residual_log(field, point)
            actual = models.residual_poly(field, point)
            assert actual == pytest.approx(expected, rel=1e-9, abs=1e-12)

    def test_exact_with_fractions(self):
        """Rational fields give exact residuals at rational points."""
        # f = x + y: f_xy f - f_x f_y = -1
        field = models.ExpressionField("x + y", n=2)
        assert models.residual_poly(field, (Fraction(1, 3), Fraction(1, 5))) == -1

    def test_defined_where_field_is_negative(self):
        """The polynomial form needs no positivity."""
        field = models.ExpressionField("-exp(x) * y", n=2)
        assert models.residual_poly(field, (0.3, 0.7)) == pytest.approx(0.0, abs=1e-12)

    def test_unsupported_dimension(self):
        """The polynomial form stops at n = 4."""
        field = models.ExpressionField("x1", n=5)
        with pytest.raises(models.UnsupportedDimension):
            models.residual_poly(field, (0.0,) * 5)


class TestPolynomialForm:
    """Tests of the polynomial_form() and format_polynomial() functions."""

    @pytest.mark.parametrize("n,count", [(2, 2), (3, 5), (4, 15)])
    def test_one_term_per_set_partition(self, n, count):
        """There is one term per set partition (Bell numbers)."""
        assert len(models.polynomial_form(n)) == count

    def test_leading_term(self):
        """The leading term is u_{1..n} u^(n-1)."""
        term = models.polynomial_form(4)[0]
        assert term.coefficient == 1
        assert term.power == 3
        assert term.blocks == ((0, 1, 2, 3),)

    def test_format_n2(self):
        assert models.format_polynomial(2) == "u_xy*u - u_x*u_y"

    def test_format_n3(self):
        """The n = 3 expansion has the exact coefficients."""
        assert models.format_polynomial(3) == (
            "u_xyz*u^2 - u_xy*u_z*u - u_xz*u_y*u - u_yz*u_x*u + 2*u_x*u_y*u_z"
        )

    def test_matches_symbolic_expansion(self):
        """F_3 equals f^3 d^3 log f for a generic symbolic f."""
        x, y, z = sympy.symbols("x y z")
        f = sympy.Function("f")(x, y, z)
        expected = sympy.expand(f**3 * sympy.diff(sympy.log(f), x, y, z))
        d = {
            block: sympy.diff(f, *[(x, y, z)[i] for i in block])
            for term in models.polynomial_form(3)
            for block in term.blocks
        }
        actual = sum(
            term.coefficient * f**term.power * sympy.Mul(*[d[b] for b in term.blocks])
            for term in models.polynomial_form(3)
        )
        assert sympy.expand(actual - expected) == 0


class TestDimensions:
    """Tests of the dimension counts."""

    @pytest.mark.parametrize("n,expected", [(2, 2), (3, 9), (8, 6434)])
    def test_symbol_dimension(self, n, expected):
        assert models.symbol_dimension(n) == expected

    def test_equation_dimension(self):
        """dim (d'A)_8 = 12877."""
        assert models.equation_dimension(8) == 12877

    def test_equation_dimension_formula(self):
        """equation_dimension(n) = n + (2n)!/(n!)^2 - 1."""
        for n in range(2, 12):
            expected = n + math.factorial(2 * n) // math.factorial(n) ** 2 - 1
            assert models.equation_dimension(n) == expected

    def test_overflow(self):
        """Dimensions above the 64-bit range raise DimensionOverflow."""
        with pytest.raises(models.DimensionOverflow):
            models.equation_dimension(40)
        with pytest.raises(models.DimensionOverflow):
            models.symbol_dimension(40)

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            models.symbol_dimension(1)

    def test_whitney_check(self):
        """Cauchy 7-manifolds embed in (d'A)_8."""
        check = models.whitney_check(8)
        assert check.embeddable
        assert check.required == 15
        assert check.dim_equation == 12877


class TestProlongations:
    """Tests of the first prolongation identities for n = 2."""

    def test_vanish_on_solutions(self, separable_2d, rng):
        """Both prolongation residuals vanish on a solution."""
        for point in rng.uniform(-1, 1, (20, 2)):
            r0, r1, r2 = models.prolongation_residuals_2d(separable_2d, point)
            dx, dy = models.log_prolongation_2d(separable_2d, point)
            assert max(abs(r0), abs(r1), abs(r2), abs(dx), abs(dy)) < 1e-8

    def test_relation_to_polynomial_residuals(self, rng):
        """f^3 d_x(d_x d_y log f) = r1 f - 2 r0 f_x."""
        field = models.ExpressionField("exp(x * y) + x^2 + 2", n=2)
        for point in rng.uniform(-1, 1, (20, 2)):
            r0, r1, r2 = models.prolongation_residuals_2d(field, point)
            dx, dy = models.log_prolongation_2d(field, point)
            jet = models.jet_eval(field, point, 1)
            f = jet.value
            f_x = models.extract_derivative(jet, (1, 0))
            f_y = models.extract_derivative(jet, (0, 1))
            assert f**3 * dx == pytest.approx(r1 * f - 2 * r0 * f_x, rel=1e-9, abs=1e-12)
            assert f**3 * dy == pytest.approx(r2 * f - 2 * r0 * f_y, rel=1e-9, abs=1e-12)


class TestFunctionalStability:
    """Tests of the functional stability statements."""

    def test_record(self):
        result = models.functional_stability(3)
        assert result.functionally_stable
        assert result.finite_order_symbol_dimension == 9
        assert result.infinite_prolongation_symbol_dimension == 0

    @pytest.mark.parametrize("n,expected", [(2, False), (7, False), (8, True)])
    def test_admits_exotic_cauchy_data(self, n, expected):
        """Exotic Cauchy spheres need n - 1 >= 7."""
        assert models.admits_exotic_cauchy_data(n) is expected


class TestVerifySolution:
    """Tests of the verify_solution() function."""

    def test_passes_on_solution(self, separable_2d, rng):
        result = models.verify_solution(separable_2d, rng.uniform(-1, 1, (20, 2)))
        assert result.passed
        assert result.max_residual_log < 1e-9

    def test_fails_on_non_solution(self, exp_xy):
        """exp(xy) is rejected with a residual of at least 0.5."""
        result = models.verify_solution(exp_xy, [(0.1, 0.2), (0.5, -0.5)])
        assert not result.passed
        assert result.max_residual_log >= 0.5
        assert all(p.status == "fail" for p in result.points)

    def test_outside_points(self):
        """Negative values are outside C_n but pass on the polynomial form."""
        field = models.ExpressionField("-exp(x) * (1 + y^2)", n=2)
        result = models.verify_solution(field, [(0.0, 0.0)])
        assert result.passed
        assert result.points[0].status == "outside-C_n"
        assert result.points[0].residual_log is None
