"""Brieskorn spheres and the group of homotopy 7-spheres.

For ``1 <= kappa <= 28`` the intersection of the hypersurface

    Y_kappa: z1^2 + z2^2 + z3^2 + z4^3 + z5^(6 kappa - 1) = 0

in C^5 with the unit sphere ``X: sum |z_j|^2 = 1`` is a homotopy
7-sphere. Points of C^5 are handled as real vectors
``(Re z1, Im z1, ..., Re z5, Im z5)``; the variety is cut out by the
three real equations ``Re P = Im P = 0`` and ``|z|^2 - 1 = 0``, and
points are projected onto it with Gauss-Newton steps.

Diffeomorphism classes of homotopy 7-spheres form the cyclic group of
order 28 under connected sum; `kappa` is used as an opaque label and
no class is computed from a sampled sphere.
"""
import logging
import warnings
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import ProjectionError, SamplingError

__all__ = (
    "THETA7_ORDER",
    "DEFAULT_PROJECTION_TOLERANCE",
    "DEFAULT_MAX_ITERATIONS",
    "DEFAULT_RANK_THRESHOLD",
    "BrieskornPoint",
    "Theta7Class",
    "Projection",
    "SampleRecord",
    "JacobianReport",
    "SigmaSample",
    "brieskorn_residuals",
    "constraint_jacobian",
    "jacobian_rank",
    "project_to_sigma",
    "sample_sigma",
    "theta7_op",
    "smooth_cauchy_admissible",
    "bounds_smooth_solution",
)

logger = logging.getLogger(__name__)

THETA7_ORDER = 28
CONSTRAINTS = 3

DEFAULT_PROJECTION_TOLERANCE = 1e-10
DEFAULT_MAX_ITERATIONS = 100
DEFAULT_RANK_THRESHOLD = 1e-8
MIN_STEP = 2.0**-30


def _check_kappa(kappa: int) -> None:
    if not isinstance(kappa, (int, np.integer)) or not 1 <= kappa <= THETA7_ORDER:
        raise ValueError(f"kappa must be an integer in 1..{THETA7_ORDER}, got {kappa}.")


@dataclass(frozen=True)
class BrieskornPoint:
    """A point of C^5."""

    z: Tuple[complex, ...]

    def __post_init__(self):
        z = tuple(complex(c) for c in self.z)
        if len(z) != 5:
            raise ValueError(f"A point of C^5 needs 5 coordinates, got {len(z)}.")
        object.__setattr__(self, "z", z)

    @classmethod
    def from_real(cls, vector: Sequence[float]) -> "BrieskornPoint":
        """Point from ``(Re z1, Im z1, ..., Re z5, Im z5)``."""
        vector = np.asarray(vector, dtype=float)
        return cls(tuple(vector[0::2] + 1j * vector[1::2]))

    def as_real(self) -> np.ndarray:
        """``(Re z1, Im z1, ..., Re z5, Im z5)``."""
        z = np.array(self.z)
        vector = np.empty(10)
        vector[0::2] = z.real
        vector[1::2] = z.imag
        return vector


def _polynomial(z: np.ndarray, kappa: int) -> complex:
    return z[0] ** 2 + z[1] ** 2 + z[2] ** 2 + z[3] ** 3 + z[4] ** (6 * kappa - 1)


def brieskorn_residuals(p: BrieskornPoint, kappa: int) -> Tuple[complex, float]:
    """``(P(z), |z|^2 - 1)`` for the Brieskorn polynomial of `kappa`."""
    _check_kappa(kappa)
    z = np.array(p.z)
    return complex(_polynomial(z, kappa)), float(np.sum(np.abs(z) ** 2) - 1)


def _constraints(vector: np.ndarray, kappa: int) -> np.ndarray:
    z = vector[0::2] + 1j * vector[1::2]
    poly = _polynomial(z, kappa)
    return np.array([poly.real, poly.imag, vector @ vector - 1])


def constraint_jacobian(p: BrieskornPoint, kappa: int) -> np.ndarray:
    """The 3x10 Jacobian of ``(Re P, Im P, |z|^2 - 1)``.

    For holomorphic P, ``dP/d(Re z_j) = P_j`` and ``dP/d(Im z_j) = i P_j``.
    """
    _check_kappa(kappa)
    return _jacobian(p.as_real(), kappa)


def _jacobian(vector: np.ndarray, kappa: int) -> np.ndarray:
    z = vector[0::2] + 1j * vector[1::2]
    e = 6 * kappa - 1
    dp = np.array(
        [2 * z[0], 2 * z[1], 2 * z[2], 3 * z[3] ** 2, e * z[4] ** (e - 1)]
    )
    jacobian = np.empty((CONSTRAINTS, 10))
    jacobian[0, 0::2] = dp.real
    jacobian[0, 1::2] = -dp.imag
    jacobian[1, 0::2] = dp.imag
    jacobian[1, 1::2] = dp.real
    jacobian[2] = 2 * vector
    return jacobian


def jacobian_rank(
    p: BrieskornPoint, kappa: int, threshold: float = DEFAULT_RANK_THRESHOLD
) -> Tuple[int, float]:
    """Rank of the constraint Jacobian and its smallest singular value."""
    singular_values = np.linalg.svd(constraint_jacobian(p, kappa), compute_uv=False)
    return int(np.sum(singular_values > threshold)), float(singular_values[-1])


@dataclass(frozen=True)
class Projection:
    point: BrieskornPoint
    iterations: int
    residuals: Tuple[float, float]


def _residual_sizes(c: np.ndarray) -> Tuple[float, float]:
    return float(np.hypot(c[0], c[1])), float(abs(c[2]))


def project_to_sigma(
    z0: BrieskornPoint,
    kappa: int,
    tolerance: float = DEFAULT_PROJECTION_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> Projection:
    """Project `z0` onto ``Y_kappa`` intersected with the unit sphere.

    Each iteration takes the minimum norm least squares step of the
    linearized constraints and halves it until the residual norm
    decreases.

    Raises
    ------
    ProjectionError
        If `z0` is the origin, a step can't decrease the residual, or
        the residuals aren't below `tolerance` after `max_iterations`.
    """
    _check_kappa(kappa)
    x = z0.as_real()
    if not np.any(x):
        raise ProjectionError("The constraint Jacobian is degenerate at the origin.")

    c = _constraints(x, kappa)
    for iteration in range(max_iterations + 1):
        sizes = _residual_sizes(c)
        if max(sizes) < tolerance:
            return Projection(BrieskornPoint.from_real(x), iteration, sizes)
        if iteration == max_iterations:
            break
        step = np.linalg.lstsq(_jacobian(x, kappa), -c, rcond=None)[0]
        norm = np.linalg.norm(c)
        scale = 1.0
        while True:
            candidate = x + scale * step
            candidate_c = _constraints(candidate, kappa)
            if np.all(np.isfinite(candidate_c)) and np.linalg.norm(candidate_c) < norm:
                break
            scale /= 2
            if scale < MIN_STEP:
                raise ProjectionError(
                    "Line search failed to decrease the residuals.", sizes
                )
        x, c = candidate, candidate_c
    raise ProjectionError(
        f"No convergence after {max_iterations} iterations.", _residual_sizes(c)
    )


@dataclass(frozen=True)
class SampleRecord:
    point: BrieskornPoint
    residuals: Tuple[float, float]
    rank: int
    smallest_singular_value: float
    iterations: int


@dataclass(frozen=True)
class JacobianReport:
    """Ranks of the constraint Jacobian at the converged points."""

    ranks: Tuple[int, ...]
    threshold: float

    @property
    def all_full_rank(self) -> bool:
        """Whether the variety is a 7-manifold at every sample."""
        return all(rank == CONSTRAINTS for rank in self.ranks)

    @property
    def local_dimension(self) -> Optional[int]:
        """``10 - rank`` when it is the same at all samples."""
        ranks = set(self.ranks)
        return 10 - ranks.pop() if len(ranks) == 1 else None


@dataclass(frozen=True)
class SigmaSample:
    kappa: int
    seed: Optional[int]
    requested: int
    records: Tuple[SampleRecord, ...]
    jacobian: JacobianReport

    @property
    def converged(self) -> int:
        return len(self.records)

    @property
    def failures(self) -> int:
        return self.requested - self.converged


def sample_sigma(
    kappa: int,
    count: int,
    seed: Optional[int] = None,
    seeds: Optional[Sequence[BrieskornPoint]] = None,
    tolerance: float = DEFAULT_PROJECTION_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    rank_threshold: float = DEFAULT_RANK_THRESHOLD,
) -> SigmaSample:
    """Sample points of the Brieskorn sphere of `kappa`.

    Random unit vectors of C^5 drawn with `seed` (or the given `seeds`)
    are projected onto the sphere; the Jacobian rank is recorded at
    every converged point.

    Raises
    ------
    SamplingError
        If fewer than half of the projections converge.
    """
    _check_kappa(kappa)
    if count < 1:
        raise ValueError(f"At least one sample is needed, got {count}.")
    if seeds is None:
        rng = np.random.default_rng(seed)
        vectors = rng.standard_normal((count, 10))
        vectors /= np.linalg.norm(vectors, axis=1, keepdims=True)
        seeds = [BrieskornPoint.from_real(v) for v in vectors]
    elif len(seeds) != count:
        raise ValueError(f"Expected {count} seed points, got {len(seeds)}.")

    records: List[SampleRecord] = []
    for start in seeds:
        try:
            projection = project_to_sigma(start, kappa, tolerance, max_iterations)
        except ProjectionError as e:
            logger.debug("Projection failed: %s", e)
            continue
        rank, smallest = jacobian_rank(projection.point, kappa, rank_threshold)
        records.append(
            SampleRecord(
                projection.point,
                projection.residuals,
                rank,
                smallest,
                projection.iterations,
            )
        )

    if 2 * len(records) < count:
        raise SamplingError(
            f"Only {len(records)} of {count} projections converged for kappa = {kappa}."
        )
    if len(records) < count:
        warnings.warn(
            f"{count - len(records)} of {count} projections did not converge "
            f"for kappa = {kappa}."
        )
    report = JacobianReport(tuple(r.rank for r in records), rank_threshold)
    return SigmaSample(kappa, seed, count, tuple(records), report)


@dataclass(frozen=True)
class Theta7Class:
    """A diffeomorphism class of homotopy 7-spheres; 0 is the standard sphere."""

    value: int

    def __post_init__(self):
        if not isinstance(self.value, int) or not 0 <= self.value < THETA7_ORDER:
            raise ValueError(
                f"A class is an integer in 0..{THETA7_ORDER - 1}, got {self.value}."
            )

    @classmethod
    def of(cls, k: int) -> "Theta7Class":
        """The class of `k` modulo 28."""
        return cls(k % THETA7_ORDER)

    def __add__(self, other: "Theta7Class") -> "Theta7Class":
        return Theta7Class.of(self.value + other.value)

    def __neg__(self) -> "Theta7Class":
        return Theta7Class.of(-self.value)


def theta7_op(
    a: Theta7Class, b: Optional[Theta7Class] = None, op: str = "add"
) -> Theta7Class:
    """Connected sum (``add``) or inverse (``invert``, ignores `b`)."""
    if op == "add":
        if b is None:
            raise ValueError("Addition needs two classes.")
        return a + b
    if op == "invert":
        return -a
    raise ValueError(f"Unknown operation '{op}'.")


def smooth_cauchy_admissible(cls: Theta7Class) -> bool:
    """Whether a sphere of class `cls` can be a smooth Cauchy manifold.

    Inside the infinite prolongation of ``(d'A)_8`` only the standard
    sphere qualifies.
    """
    return cls.value == 0


def bounds_smooth_solution(a: Theta7Class, b: Theta7Class) -> bool:
    """Whether two admissible Cauchy spheres bound a smooth solution.

    Under the homotopy sphere full admissibility hypothesis any two
    bound a singular solution; a smooth one exists iff they are
    diffeomorphic.
    """
    return a == b
