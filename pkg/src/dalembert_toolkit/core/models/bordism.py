"""Integral bordism groups and crystal classification of (d'A)_n.

Every group in these computations is an elementary abelian 2-group
``(Z2)^k`` and is represented by its rank k. The integral bordism group
of ``(d'A)_n`` over a manifold M is

    Omega_p = sum_{r+s=p} H_r(M; Z2) (x) Omega_s,

so its rank is ``sum_{r+s=p} h_r * w_s`` where ``h_r`` are the Z2-Betti
numbers of M and ``w_s`` the ranks of the coefficient groups ``Omega_s``
(named `coefficient_omega` here, to tell them apart from the singular
bordism groups of the equation, `singular_omega`).

The default coefficient table is data. Only ``w_7 = 1`` (``Omega_7 =
Z2``) is stated outright; the other entries are chosen to reproduce
the torus and RP^3 groups and read as unoriented bordism ranks.
"""
import logging
from dataclasses import dataclass
from itertools import zip_longest
from typing import Dict, Optional, Sequence, Tuple

from .exceptions import BordismTableError, ExactnessError, UnsupportedDimension

__all__ = (
    "DEFAULT_COEFFICIENT_RANKS",
    "NO_HYPOTHESIS",
    "HOMOTOPY_SPHERE_FULL",
    "SPHERE_FULL",
    "HYPOTHESES",
    "SINGULAR_GLOBAL_ATTRACTOR",
    "SMOOTH_GLOBAL_ATTRACTOR",
    "NO_ATTRACTOR",
    "CRYSTAL_GROUPS",
    "PRESETS",
    "Z2Group",
    "HomologyTable",
    "BordismCoefficients",
    "ClassificationVerdict",
    "Preset",
    "integral_bordism",
    "default_coefficients",
    "short_exact_kernel",
    "apply_admissibility",
    "singular_omega",
    "classify",
    "attractor_verdict",
)

logger = logging.getLogger(__name__)

DEFAULT_COEFFICIENT_RANKS = (1, 0, 1, 0, 2, 1, 3, 1)

# Admissibility hypotheses
NO_HYPOTHESIS = "none"
HOMOTOPY_SPHERE_FULL = "homotopy-sphere-full"
SPHERE_FULL = "sphere-full"
HYPOTHESES = (NO_HYPOTHESIS, HOMOTOPY_SPHERE_FULL, SPHERE_FULL)

# Attractor verdicts
SINGULAR_GLOBAL_ATTRACTOR = "singular-global-attractor"
SMOOTH_GLOBAL_ATTRACTOR = "smooth-global-attractor"
NO_ATTRACTOR = "none"

# Known crystal groups and crystal dimensions
CRYSTAL_GROUPS: Dict[str, Tuple[str, int]] = {
    "torus-2d": ("p4m", 2),
    "rp3-3d": ("p4m", 2),
}


@dataclass(frozen=True, order=True)
class Z2Group:
    """The group ``(Z2)^rank``."""

    rank: int

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 0:
            raise ValueError(f"A rank must be a non-negative integer, got {self.rank}.")

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0

    def __add__(self, other: "Z2Group") -> "Z2Group":
        """Direct sum."""
        return Z2Group(self.rank + other.rank)

    def __mul__(self, other: "Z2Group") -> "Z2Group":
        """Tensor product over Z2."""
        return Z2Group(self.rank * other.rank)

    def __str__(self):
        return "0" if self.rank == 0 else f"Z2^{self.rank}"


def _check_ranks(ranks: Sequence[int], what: str) -> Tuple[int, ...]:
    ranks = tuple(ranks)
    if not ranks:
        raise BordismTableError(f"The {what} table is empty.")
    for degree, rank in enumerate(ranks):
        if not isinstance(rank, int) or rank < 0:
            raise BordismTableError(
                f"Invalid {what} rank {rank!r} in degree {degree}."
            )
    return ranks


@dataclass(frozen=True)
class HomologyTable:
    """Z2-Betti numbers ``h_r = rank H_r(M; Z2)`` of a manifold.

    The table lists every degree from 0 to its top degree; vanishing
    ranks below the top are listed as zeros.
    """

    name: str
    z2_ranks: Tuple[int, ...]

    def __post_init__(self):
        ranks = _check_ranks(self.z2_ranks, "homology")
        if ranks[0] < 1:
            raise BordismTableError("A non-empty manifold has h_0 >= 1.")
        object.__setattr__(self, "z2_ranks", ranks)

    @property
    def top_degree(self) -> int:
        return len(self.z2_ranks) - 1

    def rank(self, degree: int) -> int:
        """``h_degree``.

        Raises
        ------
        BordismTableError
            If `degree` lies above the top degree of the table.
        """
        if degree > self.top_degree:
            raise BordismTableError(
                f"The homology table of {self.name} has no entry for degree {degree}."
            )
        return self.z2_ranks[degree]

    def __add__(self, other: "HomologyTable") -> "HomologyTable":
        """Homology of the disjoint union."""
        ranks = tuple(a + b for a, b in zip_longest(self.z2_ranks, other.z2_ranks, fillvalue=0))
        return HomologyTable(f"{self.name} + {other.name}", ranks)


@dataclass(frozen=True)
class BordismCoefficients:
    """Ranks ``w_s`` of the coefficient bordism groups ``Omega_s``."""

    z2_ranks: Tuple[int, ...] = DEFAULT_COEFFICIENT_RANKS

    def __post_init__(self):
        ranks = _check_ranks(self.z2_ranks, "coefficient")
        if ranks[0] != 1:
            raise BordismTableError("The coefficient group in degree 0 must be Z2.")
        object.__setattr__(self, "z2_ranks", ranks)

    def coefficient_omega(self, degree: int) -> Z2Group:
        """``Omega_degree``.

        Raises
        ------
        BordismTableError
            If the table has no entry for `degree`.
        """
        if degree >= len(self.z2_ranks):
            raise BordismTableError(
                f"The coefficient table has no entry for degree {degree}."
            )
        return Z2Group(self.z2_ranks[degree])


@dataclass(frozen=True)
class Preset:
    """A shipped manifold with the dimension of its d'Alembert problem."""

    homology: HomologyTable
    n: int
    known_group: Optional[str] = None


PRESETS: Dict[str, Preset] = {
    "r2": Preset(HomologyTable("R^2", (1, 0)), 2),
    "r8": Preset(HomologyTable("R^8", (1, 0, 0, 0, 0, 0, 0, 0)), 8),
    "torus2": Preset(HomologyTable("T^2", (1, 2, 1)), 2, "torus-2d"),
    "rp3": Preset(HomologyTable("RP^3", (1, 1, 1, 1)), 3, "rp3-3d"),
}


def default_coefficients() -> BordismCoefficients:
    """The shipped coefficient table, ranks ``(1, 0, 1, 0, 2, 1, 3, 1)``."""
    return BordismCoefficients(DEFAULT_COEFFICIENT_RANKS)


def integral_bordism(
    p: int,
    homology: HomologyTable,
    coeffs: BordismCoefficients,
    n: Optional[int] = None,
) -> Z2Group:
    """The integral bordism group ``Omega_p`` of ``(d'A)_n`` over M.

    Parameters
    ----------
    p
        Degree; when `n` is given it must lie in 0..n-1.
    homology
        Z2-homology of M.
    coeffs
        Coefficient table.
    n
        Dimension of the problem, if the degree range is to be checked.

    Raises
    ------
    BordismTableError
        If the homology table stops below degree `p` or a coefficient
        needed for it is missing.
    """
    if p < 0:
        raise ValueError(f"The degree can't be negative, got {p}.")
    if n is not None and not p < n:
        raise ValueError(f"The degree must lie in 0..{n - 1} for n = {n}, got {p}.")
    group = Z2Group(0)
    for r in range(p + 1):
        h = homology.rank(r)
        if h == 0:
            continue
        group = group + Z2Group(h) * coeffs.coefficient_omega(p - r)
    logger.debug("Omega_%d over %s: %s", p, homology.name, group)
    return group


def short_exact_kernel(total: Z2Group, quotient: Z2Group) -> Z2Group:
    """The kernel K of ``0 -> K -> total -> quotient -> 0``.

    Raises
    ------
    ExactnessError
        If the quotient is larger than the total group.
    """
    if quotient.rank > total.rank:
        raise ExactnessError(
            f"{quotient} can't be a quotient of {total}."
        )
    return Z2Group(total.rank - quotient.rank)


def apply_admissibility(group: Z2Group, hypothesis: str) -> Z2Group:
    """The singular bordism group under an admissibility hypothesis.

    Under either full admissibility hypothesis all admissible Cauchy
    data belong to one singular bordism class, so the group vanishes.
    """
    if hypothesis not in HYPOTHESES:
        raise ValueError(f"Unknown hypothesis '{hypothesis}'.")
    if hypothesis == NO_HYPOTHESIS:
        return group
    return Z2Group(0)


def singular_omega(
    p: int,
    homology: HomologyTable,
    coeffs: BordismCoefficients,
    hypothesis: str = NO_HYPOTHESIS,
    n: Optional[int] = None,
) -> Z2Group:
    """The singular integral bordism group of degree `p` under `hypothesis`."""
    return apply_admissibility(integral_bordism(p, homology, coeffs, n), hypothesis)


@dataclass(frozen=True)
class ClassificationVerdict:
    extended_crystal: bool
    extended_0_crystal: bool
    zero_crystal: bool
    crystal_group_label: Optional[str] = None
    crystal_dimension: Optional[int] = None


def classify(
    n: int,
    bordism: Z2Group,
    obstruction_zero: bool,
    known_group: Optional[str] = None,
) -> ClassificationVerdict:
    """Crystal classification of ``(d'A)_n`` from its bordism group.

    The equation is an extended 0-crystal when its integral bordism
    group vanishes, and a 0-crystal when in addition its crystal
    obstruction vanishes. The crystal group is only known for the
    shipped instances in `CRYSTAL_GROUPS`.
    """
    if n < 2:
        raise ValueError(f"The d'Alembert equation needs n >= 2, got {n}.")
    extended_0 = bordism.is_trivial
    label, dimension = CRYSTAL_GROUPS.get(known_group, (None, None))
    return ClassificationVerdict(
        extended_crystal=True,
        extended_0_crystal=extended_0,
        zero_crystal=extended_0 and obstruction_zero,
        crystal_group_label=label,
        crystal_dimension=dimension,
    )


def attractor_verdict(hypothesis: str, n: int = 8) -> str:
    """Global attractor of ``(d'A)_8`` under an admissibility hypothesis."""
    if n != 8:
        raise UnsupportedDimension("Attractors are only classified for n = 8.")
    if hypothesis == HOMOTOPY_SPHERE_FULL:
        return SINGULAR_GLOBAL_ATTRACTOR
    if hypothesis == SPHERE_FULL:
        return SMOOTH_GLOBAL_ATTRACTOR
    if hypothesis == NO_HYPOTHESIS:
        return NO_ATTRACTOR
    raise ValueError(f"Unknown hypothesis '{hypothesis}'.")
