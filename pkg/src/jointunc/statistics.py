"""Closed-form statistics of the simultaneous sigma_x / sigma_z measurement.

Four-outcome vectors always use the canonical index order
``(j, k) = (+,+), (+,-), (-,+), (-,-)``, where ``j`` labels the sigma_x
outcome and ``k`` the sigma_z outcome.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bloch import BlochState, extreme_z, intermediate
from .errors import DomainError

NEGATIVE_CLAMP = 1e-15
SUM_TOL = 1e-12
OUTCOMES = ((1, 1), (1, -1), (-1, 1), (-1, -1))

#: Name of the pseudo-random generator used by :func:`sample_joint`.  Bumping
#: the sampling algorithm must bump this string as well.
SAMPLER_ID = "numpy-PCG64/inverse-cdf/v1"


def as_prob_vec(values: Sequence[float] | np.ndarray) -> np.ndarray:
    """Validate a probability vector and return it as a float array.

    Components in ``[-1e-15, 0)`` are clamped to zero; anything more negative,
    or a sum farther than ``1e-12`` from one, raises :class:`DomainError`.
    """
    p = np.array(values, dtype=float).reshape(-1)
    if p.size == 0:
        raise DomainError("probability vector is empty")
    if not np.all(np.isfinite(p)):
        raise DomainError("probability vector has non-finite components")
    if np.any(p < -NEGATIVE_CLAMP):
        raise DomainError(f"negative probability component {float(p.min())!r}")
    p[p < 0.0] = 0.0
    total = p.sum()
    if abs(total - 1.0) > SUM_TOL:
        raise DomainError(f"probabilities sum to {float(total)!r}, not 1")
    return p


@dataclass(frozen=True)
class MeasurementConfig:
    """Apparatus overlap angle ``delta`` with ``cos(delta) = <a+|a->``."""

    delta: float = math.pi / 4

    def __post_init__(self):
        if not 0.0 <= self.delta <= math.pi / 2:
            raise DomainError(f"delta must lie in [0, pi/2], got {self.delta!r}")


BALANCED = MeasurementConfig(math.pi / 4)


class StatisticsKind(enum.Enum):
    JOINT = "joint"
    MARGINAL_PRODUCT = "marginal-product"
    INTRINSIC_PRODUCT = "intrinsic-product"


@dataclass(frozen=True)
class JointStats:
    """Joint distribution over ``(j, k)`` in canonical order."""

    values: tuple[float, float, float, float]

    def p(self, j: int, k: int) -> float:
        return self.values[OUTCOMES.index((j, k))]

    def as_array(self) -> np.ndarray:
        return np.array(self.values)

    def marginal_x(self) -> np.ndarray:
        v = self.values
        return np.array([v[0] + v[1], v[2] + v[3]])

    def marginal_z(self) -> np.ndarray:
        v = self.values
        return np.array([v[0] + v[2], v[1] + v[3]])


def intrinsic_stats(state: BlochState) -> tuple[np.ndarray, np.ndarray]:
    px = as_prob_vec([0.5 * (1 + state.sx), 0.5 * (1 - state.sx)])
    pz = as_prob_vec([0.5 * (1 + state.sz), 0.5 * (1 - state.sz)])
    return px, pz


def joint_stats(state: BlochState, cfg: MeasurementConfig = BALANCED) -> JointStats:
    a = state.sx * math.cos(cfg.delta)
    b = state.sz * math.sin(cfg.delta)
    p = as_prob_vec([0.25 * (1 + j * a + k * b) for j, k in OUTCOMES])
    return JointStats(tuple(p))


def marginal_stats(
    state: BlochState, cfg: MeasurementConfig = BALANCED
) -> tuple[np.ndarray, np.ndarray]:
    a = state.sx * math.cos(cfg.delta)
    b = state.sz * math.sin(cfg.delta)
    return as_prob_vec([0.5 * (1 + a), 0.5 * (1 - a)]), as_prob_vec([0.5 * (1 + b), 0.5 * (1 - b)])


def product_distribution(p, q) -> np.ndarray:
    """All pairwise products ``p_i q_j`` with ``i`` the slow index."""
    return as_prob_vec(np.outer(as_prob_vec(p), as_prob_vec(q)).ravel())


def statistics_of(
    kind: StatisticsKind, state: BlochState, cfg: MeasurementConfig = BALANCED
) -> np.ndarray:
    """Four-outcome statistics of the requested kind, canonical order."""
    kind = StatisticsKind(kind)
    if kind is StatisticsKind.JOINT:
        return joint_stats(state, cfg).as_array()
    if kind is StatisticsKind.MARGINAL_PRODUCT:
        return product_distribution(*marginal_stats(state, cfg))
    return product_distribution(*intrinsic_stats(state))


def family_statistics(
    kind: StatisticsKind, cfg: MeasurementConfig = BALANCED, smag: float = 1.0
) -> tuple[np.ndarray, np.ndarray]:
    """Statistics of the extreme ``Z(+)`` and intermediate ``(+,+)`` states."""
    return statistics_of(kind, extreme_z(smag), cfg), statistics_of(kind, intermediate(smag), cfg)


def statistics_grid(
    kind: StatisticsKind, sx: np.ndarray, sz: np.ndarray, cfg: MeasurementConfig = BALANCED
) -> np.ndarray:
    """Vectorized :func:`statistics_of` over arrays of ``(sx, sz)``.

    Returns an array of shape ``sx.shape + (4,)``.  No validation is done.
    """
    kind = StatisticsKind(kind)
    sx = np.asarray(sx, dtype=float)
    sz = np.asarray(sz, dtype=float)
    if kind is StatisticsKind.INTRINSIC_PRODUCT:
        a, b = sx, sz
    else:
        a, b = sx * math.cos(cfg.delta), sz * math.sin(cfg.delta)
    if kind is StatisticsKind.JOINT:
        comps = [0.25 * (1 + j * a + k * b) for j, k in OUTCOMES]
    else:
        comps = [0.25 * (1 + j * a) * (1 + k * b) for j, k in OUTCOMES]
    return np.clip(np.stack(comps, axis=-1), 0.0, None)


def sample_joint(
    state: BlochState, cfg: MeasurementConfig, n: int, seed: int
) -> dict[tuple[int, int], int]:
    """Draw ``n`` i.i.d. joint outcomes and return counts keyed by ``(j, k)``.

    Sampling is inverse-CDF over the canonical outcome order driven by
    ``numpy.random.Generator(PCG64(seed)).random``; see :data:`SAMPLER_ID`.
    """
    if n < 1:
        raise DomainError(f"sample size must be at least 1, got {n!r}")
    p = joint_stats(state, cfg).as_array()
    cdf = np.cumsum(p)
    cdf[-1] = 1.0
    rng = np.random.Generator(np.random.PCG64(seed))
    idx = np.searchsorted(cdf, rng.random(n), side="right")
    counts = np.bincount(idx, minlength=4)
    return {outcome: int(c) for outcome, c in zip(OUTCOMES, counts)}
