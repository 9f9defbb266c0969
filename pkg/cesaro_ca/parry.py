"""Parry (maximal-entropy) measure of a transitive shift space.

Perron roots are generally irrational, so this module works in floating point;
exact rationals are reserved for :mod:`cesaro_ca.measure`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from cesaro_ca.errors import NonTransitiveSpaceError
from cesaro_ca.shift_space import ShiftSpace, is_transitive
from cesaro_ca.symbolic import Word

logger = logging.getLogger(__name__)

POWER_TOL = 1e-13
POWER_MAX_ITER = 100_000
CONSISTENCY_TOL = 1e-10


def _perron_vector(matrix: np.ndarray) -> tuple[float, np.ndarray]:
    """Dominant eigenpair of a nonnegative irreducible matrix.

    Iterates on A + I, which is primitive whenever A is irreducible, so
    periodic graphs converge as well.
    """
    n = matrix.shape[0]
    shifted = matrix + np.eye(n)
    x = np.full(n, 1.0 / n)
    for _ in range(POWER_MAX_ITER):
        y = shifted @ x
        y /= y.sum()
        if np.abs(y - x).max() < POWER_TOL:
            x = y
            break
        x = y
    else:
        logger.warning("power iteration hit %d iterations without converging", POWER_MAX_ITER)
    eigenvalue = float((matrix @ x).sum() / x.sum())
    return eigenvalue, x


@dataclass(frozen=True, eq=False)
class ParryData:
    eigenvalue: float
    left_vector: np.ndarray = field(repr=False)
    right_vector: np.ndarray = field(repr=False)
    cylinder_rule: dict[str, np.ndarray] = field(repr=False)
    vertices: tuple = field(repr=False)

    @property
    def stationary(self) -> np.ndarray:
        return self.left_vector * self.right_vector

    def cylinder_prob(self, u: Word) -> float:
        """λ([u]) = l · Π_a (A_a / λ) · r over the letters of u."""
        row = self.left_vector.copy()
        for a in u:
            weights = self.cylinder_rule.get(a)
            if weights is None:
                return 0.0
            row = row @ weights
        return float(row @ self.right_vector)


def parry_measure(space: ShiftSpace) -> ParryData:
    if not is_transitive(space):
        raise NonTransitiveSpaceError(f"Parry measure needs a transitive space; got {space.describe()}")
    mats = space.transition_matrices()
    adjacency = sum(mats.values())
    eigenvalue, right = _perron_vector(adjacency)
    _, left = _perron_vector(adjacency.T)
    left = left / float(left @ right)
    if (left <= 0).any() or (right <= 0).any():
        raise ArithmeticError("Perron vectors are not strictly positive")
    data = ParryData(
        eigenvalue=eigenvalue,
        left_vector=left,
        right_vector=right,
        cylinder_rule={a: m / eigenvalue for a, m in mats.items()},
        vertices=space.vertices,
    )
    total = float(data.stationary.sum())
    if abs(total - 1.0) > CONSISTENCY_TOL:
        raise ArithmeticError(f"stationary vertex weights sum to {total}, not 1")
    logger.debug("Parry data: eigenvalue %.12f on %d vertices", eigenvalue, len(space.vertices))
    return data


def cylinder_prob(parry: ParryData, u: Word) -> float:
    return parry.cylinder_prob(u)
