"""Tests of the jet arithmetic."""
import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from core import models
from tests.oracle import derivative, random_expression


@pytest.fixture
def sum_squared():
    """Jet of (x + y)^2 at (1, 2), truncated at order 2."""
    x = models.Jet.variable(0, (1.0, 2.0), 2)
    y = models.Jet.variable(1, (1.0, 2.0), 2)
    return (x + y) * (x + y)


class TestJet:
    """Tests of the Jet class."""

    def test_product_coefficients(self, sum_squared):
        """Multiplying jets gives the Taylor coefficients of the product."""
        assert sum_squared.value == 9.0
        assert sum_squared.coefficient((1, 0)) == 6.0
        assert sum_squared.coefficient((0, 1)) == 6.0
        assert sum_squared.coefficient((2, 0)) == 1.0
        assert sum_squared.coefficient((1, 1)) == 2.0
        assert sum_squared.coefficient((0, 2)) == 1.0

    def test_rejects_indices_above_order(self, sum_squared):
        """Requesting a coefficient above the truncation order raises."""
        with pytest.raises(models.OrderOverflowError):
            sum_squared.coefficient((2, 1))

    def test_rejects_mismatched_base_points(self):
        """Jets at different base points can't be combined."""
        a = models.Jet.variable(0, (0.0,), 2)
        b = models.Jet.variable(0, (1.0,), 2)
        with pytest.raises(models.JetShapeError):
            a + b

    def test_rejects_mismatched_orders(self):
        """Jets truncated at different orders can't be combined."""
        a = models.Jet.variable(0, (0.0,), 2)
        b = models.Jet.variable(0, (0.0,), 3)
        with pytest.raises(models.JetShapeError):
            a * b

    def test_number_operands(self):
        """Numbers combine with jets on either side."""
        x = models.Jet.variable(0, (2.0,), 1)
        result = 3 - x * 2 + 1
        assert result.value == 0.0
        assert result.coefficient((1,)) == -2.0

    def test_fractions_are_exact(self):
        """With Fraction coordinates, rational operations stay exact."""
        x = models.Jet.variable(0, (Fraction(1, 2),), 2)
        f = x / (1 + x)

        assert models.extract_derivative(f, (1,)) == Fraction(4, 9)
        assert models.extract_derivative(f, (2,)) == Fraction(-16, 27)

    def test_as_array_follows_multi_indices(self, sum_squared):
        """The dense view is ordered like multi_indices()."""
        indices = models.multi_indices(2, 2)
        array = sum_squared.as_array()

        assert len(array) == len(indices)
        for alpha, value in zip(indices, array):
            assert value == sum_squared.coefficient(alpha)


class TestExtractDerivative:
    """Tests of the extract_derivative() function."""

    def test_multiplies_by_index_factorial(self, sum_squared):
        """Derivatives are the coefficients times alpha!."""
        assert models.extract_derivative(sum_squared, (2, 0)) == 2.0
        assert models.extract_derivative(sum_squared, (1, 1)) == 2.0

    def test_overflow(self, sum_squared):
        """Derivatives above the truncation order raise."""
        with pytest.raises(models.OrderOverflowError):
            models.extract_derivative(sum_squared, (0, 3))


class TestJetFunctions:
    """Tests of the elementary functions on jets."""

    def test_log_inverts_exp(self):
        """log(exp(f)) has the coefficients of f."""
        x = models.Jet.variable(0, (0.3, -0.2), 4)
        y = models.Jet.variable(1, (0.3, -0.2), 4)
        f = x * y + 2 * x
        result = models.jet_log(models.jet_exp(f))

        for alpha in models.multi_indices(2, 4):
            assert result.coefficient(alpha) == pytest.approx(
                f.coefficient(alpha), abs=1e-12
            )

    def test_log_of_non_positive_value(self):
        """The logarithm of a jet with non-positive value raises."""
        x = models.Jet.variable(0, (-1.0,), 2)
        with pytest.raises(models.JetDomainError):
            models.jet_log(x)

    def test_sin_cos_identity(self):
        """sin^2 + cos^2 is the constant 1."""
        x = models.Jet.variable(0, (0.7,), 5)
        s, c = models.jet_sin(x), models.jet_cos(x)
        result = s * s + c * c

        assert result.value == pytest.approx(1.0)
        for k in range(1, 6):
            assert result.coefficient((k,)) == pytest.approx(0.0, abs=1e-12)

    def test_real_power(self):
        """Real powers follow the binomial series."""
        x = models.Jet.variable(0, (4.0,), 2)
        result = models.jet_pow(x, 0.5)

        assert result.value == pytest.approx(2.0)
        assert models.extract_derivative(result, (1,)) == pytest.approx(0.25)
        assert models.extract_derivative(result, (2,)) == pytest.approx(-1 / 32)

    def test_negative_integer_power(self):
        """Negative integer powers are reciprocals of positive ones."""
        x = models.Jet.variable(0, (Fraction(2),), 1)
        result = models.jet_pow(x, -2)

        assert result.value == Fraction(1, 4)
        assert models.extract_derivative(result, (1,)) == Fraction(-1, 4)

    def test_jet_arith(self):
        """jet_arith() dispatches on the operation name."""
        x = models.Jet.variable(0, (3.0,), 1)
        y = models.Jet.constant(2.0, (3.0,), 1)

        assert models.jet_arith(x, y, "div").value == 1.5
        with pytest.raises(ValueError):
            models.jet_arith(x, y, "pow")


class TestDifferentiate:
    """Tests of the differentiate() and truncate() functions."""

    def test_lowers_order(self):
        """The derivative jet is truncated one order lower."""
        x = models.Jet.variable(0, (1.0, 1.0), 3)
        y = models.Jet.variable(1, (1.0, 1.0), 3)
        f = x * x * y
        result = models.differentiate(f, 0)

        assert result.order == 2
        # d/dx (x^2 y) = 2 x y
        assert result.value == 2.0
        assert models.extract_derivative(result, (1, 1)) == 2.0

    def test_truncate(self, sum_squared):
        """Truncation drops the higher degrees."""
        result = models.truncate(sum_squared, 1)

        assert result.order == 1
        assert result.coefficient((1, 0)) == 6.0
        with pytest.raises(models.OrderOverflowError):
            models.truncate(sum_squared, 3)


def random_jet(rng, n, order, low=-3, high=3):
    """Jet with random rational coefficients and value in [1, 4]."""
    coeffs = {
        alpha: Fraction(int(rng.integers(low, high + 1)), int(rng.integers(1, 5)))
        for alpha in models.multi_indices(n, order)
    }
    coeffs[(0,) * n] = Fraction(int(rng.integers(1, 5)))
    return models.Jet(n, order, coeffs, (0.5,) * n)


def sub_indices(alpha):
    return itertools.product(*(range(a + 1) for a in alpha))


class TestJetProperties:
    """Algebraic identities of jets with random coefficients."""

    @pytest.mark.parametrize("seed", range(20))
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_leibniz(self, seed, n):
        """Derivatives of a product are the Leibniz sums, exactly."""
        rng = np.random.default_rng(seed)
        a, b = random_jet(rng, n, 4), random_jet(rng, n, 4)
        product = models.jet_arith(a, b, "mul")

        for alpha in models.multi_indices(n, 4):
            expected = sum(
                math.prod(math.comb(i, j) for i, j in zip(alpha, beta))
                * models.extract_derivative(a, beta)
                * models.extract_derivative(b, tuple(i - j for i, j in zip(alpha, beta)))
                for beta in sub_indices(alpha)
            )
            assert models.extract_derivative(product, alpha) == expected

    @pytest.mark.parametrize("seed", range(20))
    def test_log_derivative(self, seed):
        """d log f = df / f up to order K - 1."""
        rng = np.random.default_rng(seed)
        f = random_jet(rng, 2, 4)
        log_f = models.jet_log(f)

        for axis in range(2):
            left = models.differentiate(log_f, axis)
            right = models.differentiate(f, axis) / models.truncate(f, 3)
            for alpha in models.multi_indices(2, 3):
                assert left.coefficient(alpha) == pytest.approx(
                    float(right.coefficient(alpha)), rel=1e-10, abs=1e-10
                )

    @pytest.mark.parametrize("seed", range(20))
    def test_exp_inverts_log(self, seed):
        """exp(log f) has the coefficients of f."""
        rng = np.random.default_rng(seed)
        f = random_jet(rng, 2, 4)
        result = models.jet_exp(models.jet_log(f))

        for alpha in models.multi_indices(2, 4):
            assert result.coefficient(alpha) == pytest.approx(
                float(f.coefficient(alpha)), rel=1e-10, abs=1e-10
            )


class TestOracleEquivalence:
    """Jet evaluation of random expressions against symbolic derivatives."""

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(50))
    def test_random_expressions(self, seed):
        """All derivatives up to order 4 of trees up to depth 5 match."""
        rng = np.random.default_rng(seed)
        variables = ("x", "y")
        for _ in range(10):
            depth = int(rng.integers(1, 6))
            source = random_expression(rng, variables, depth=depth)
            point = tuple(rng.uniform(-1, 1, 2).tolist())
            jet = models.ExpressionField(source, variables).jet(point, 4)
            for alpha in models.multi_indices(2, 4):
                expected = derivative(source, variables, alpha, point)
                actual = float(models.extract_derivative(jet, alpha))
                assert abs(actual - expected) <= 1e-9 * max(1.0, abs(expected)), (
                    source,
                    alpha,
                )
