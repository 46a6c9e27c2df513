"""Ordered nearest-BS distance distributions for a homogeneous PPP.

For a test user at the origin, the squared distance to the k-th nearest BS is
Gamma(k, rate pi*lambda).  The joint law of (r1, r2, r3) factorizes as the
marginal of r3 times the order statistics of two iid draws with density
2r/r3^2 on [0, r3], which gives an exact rejection-free sampler.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .model import OrderedDistances


class DistancePdfKind(enum.Enum):
    JOINT_123 = "joint_r1_r2_r3"
    MARGINAL_R1 = "marginal_r1"
    MARGINAL_R2 = "marginal_r2"
    JOINT_R2_R3 = "joint_r2_r3"
    CONDITIONAL_R1_GIVEN_R2 = "conditional_r1_given_r2"


def _check_lambda(lam: float) -> None:
    if not (lam > 0):
        raise ValueError(f"intensity must be > 0, got {lam}")


def _check_nonneg(*values: float) -> None:
    for v in values:
        if v < 0:
            raise ValueError(f"distances must be >= 0, got {v}")


def joint_pdf_r123(x: float, y: float, z: float, lam: float) -> float:
    """Joint density of the three ordered nearest-BS distances, km^-3."""
    _check_lambda(lam)
    _check_nonneg(x, y, z)
    if not (x <= y <= z):
        return 0.0
    return (2.0 * math.pi * lam) ** 3 * x * y * z * math.exp(-math.pi * lam * z * z)


def marginal_pdf_r1(r: float, lam: float) -> float:
    """Rayleigh density of the nearest-BS distance."""
    _check_lambda(lam)
    _check_nonneg(r)
    return 2.0 * math.pi * lam * r * math.exp(-math.pi * lam * r * r)


def marginal_pdf_r2(y: float, lam: float) -> float:
    """Density of the second-nearest-BS distance."""
    _check_lambda(lam)
    _check_nonneg(y)
    return 2.0 * (math.pi * lam) ** 2 * y ** 3 * math.exp(-math.pi * lam * y * y)


def joint_pdf_r2_r3(y: float, z: float, lam: float) -> float:
    """Joint density of the second and third nearest-BS distances."""
    _check_lambda(lam)
    _check_nonneg(y, z)
    if y > z:
        return 0.0
    return 4.0 * (math.pi * lam) ** 3 * y ** 3 * z * math.exp(-math.pi * lam * z * z)


def conditional_pdf_r1_given_r2(x: float, r2: float) -> float:
    """Density of the nearest-BS distance given the second-nearest at r2."""
    if not (r2 > 0):
        raise ValueError(f"r2 must be > 0, got {r2}")
    _check_nonneg(x)
    if x > r2:
        return 0.0
    return 2.0 * x / (r2 * r2)


def sample_ordered_distances_array(
    lam: float, rng: np.random.Generator, size: int
) -> np.ndarray:
    """Draw `size` exact (r1, r2, r3) triples; returns an array of shape (size, 3).

    r3^2 is Gamma(3, rate pi*lambda); r1, r2 are the order statistics of two
    iid draws with density 2r/r3^2 on [0, r3].
    """
    _check_lambda(lam)
    r3 = np.sqrt(rng.gamma(shape=3.0, scale=1.0 / (math.pi * lam), size=size))
    inner = r3[:, None] * np.sqrt(rng.random((size, 2)))
    inner.sort(axis=1)
    return np.column_stack([inner, r3])


def sample_ordered_distances(lam: float, rng: np.random.Generator) -> OrderedDistances:
    """Draw a single exact (r1, r2, r3) triple."""
    r1, r2, r3 = sample_ordered_distances_array(lam, rng, 1)[0]
    return OrderedDistances(float(r1), float(r2), float(r3))
