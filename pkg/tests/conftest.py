"""Global test fixtures."""
import numpy as np
import pytest
from core import models


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded random generator."""
    return np.random.default_rng(20240607)


@pytest.fixture
def separable_2d() -> models.ExpressionField:
    """Solution of (d'A)_2.

    f(x, y) = exp(x) * (1 + y^2)
    """
    return models.ExpressionField("exp(x) * (1 + y^2)", n=2)


@pytest.fixture
def exp_xy() -> models.ExpressionField:
    """Field that is not a solution of (d'A)_2.

    f(x, y) = exp(x * y); d_x d_y log f = 1 everywhere.
    """
    return models.ExpressionField("exp(x * y)", n=2)


@pytest.fixture
def affine_base() -> models.ClosedFormSolution:
    """Closed form solution u = y + 1 (alpha = 1, beta = 0, h = 1)."""
    return models.ClosedFormSolution(1.0, 0.0, models.ExpressionField("1", ("x",)))


@pytest.fixture
def constant_base() -> models.ClosedFormSolution:
    """Closed form solution u = 1 (alpha = beta = 0, h = 1)."""
    return models.ClosedFormSolution(0.0, 0.0, models.ExpressionField("1", ("x",)))
