"""Majorization order, noise maps and majorization uncertainty bounds."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import bisect

from ._numerics import zoom_maximize
from .bloch import intermediate
from .errors import BoundConsistencyError, DomainError
from .statistics import (
    BALANCED,
    MeasurementConfig,
    StatisticsKind,
    as_prob_vec,
    family_statistics,
    statistics_grid,
    statistics_of,
)

DEFAULT_TOL = 1e-10
BOUND_GRID = (512, 128)
REFINE_TOL = 1e-10


class Verdict(enum.Enum):
    EQUAL = "Equal"
    MAJORIZES = "Majorizes"
    MAJORIZED_BY = "MajorizedBy"
    INCOMPARABLE = "Incomparable"

    def swapped(self) -> Verdict:
        return _SWAP.get(self, self)


_SWAP = {Verdict.MAJORIZES: Verdict.MAJORIZED_BY, Verdict.MAJORIZED_BY: Verdict.MAJORIZES}


@dataclass(frozen=True)
class MajorizationRelation:
    """Outcome of comparing ``p`` against ``q``.

    ``MAJORIZED_BY`` means ``p < q`` in the majorization order (``p`` is more
    spread out).  For incomparable pairs ``witness = (k1, k2)`` holds the first
    1-based prefix length at which ``p`` fails to majorize ``q`` and the first
    at which ``q`` fails to majorize ``p``.
    """

    verdict: Verdict
    witness: Optional[tuple[int, int]] = None

    def __str__(self):
        if self.witness is None:
            return self.verdict.value
        return f"{self.verdict.value} (witness k={self.witness[0]}, k={self.witness[1]})"


def sorted_desc(p) -> np.ndarray:
    return np.sort(np.asarray(p, dtype=float))[::-1]


def prefix_sums(p) -> np.ndarray:
    return np.cumsum(sorted_desc(p))


def _pad(p: np.ndarray, n: int) -> np.ndarray:
    return np.concatenate([p, np.zeros(n - p.size)])


def compare(p, q, tol: float = DEFAULT_TOL) -> MajorizationRelation:
    """Majorization relation of ``p`` relative to ``q`` via sorted prefix sums."""
    p, q = as_prob_vec(p), as_prob_vec(q)
    n = max(p.size, q.size)
    diff = prefix_sums(_pad(p, n)) - prefix_sums(_pad(q, n))
    p_over = diff >= -tol
    q_over = diff <= tol
    if p_over.all() and q_over.all():
        return MajorizationRelation(Verdict.EQUAL)
    if p_over.all():
        return MajorizationRelation(Verdict.MAJORIZES)
    if q_over.all():
        return MajorizationRelation(Verdict.MAJORIZED_BY)
    k1 = int(np.argmin(p_over)) + 1
    k2 = int(np.argmin(q_over)) + 1
    return MajorizationRelation(Verdict.INCOMPARABLE, (k1, k2))


def noise_matrix(eta: float) -> np.ndarray:
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"eta must lie in [0, 1], got {eta!r}")
    return 0.5 * np.array([[1 + eta, 1 - eta], [1 - eta, 1 + eta]])


def apply_noise(p, eta: float) -> np.ndarray:
    """Apply the symmetric doubly stochastic 2x2 map with contrast ``eta``."""
    return as_prob_vec(noise_matrix(eta) @ as_prob_vec(p))


# -- ordered statistics of the extreme / intermediate families ----------------


def ordered_family_vectors(
    kind: StatisticsKind, smag: float, cfg: MeasurementConfig = BALANCED
) -> tuple[np.ndarray, np.ndarray]:
    """Sorted statistics ``(extreme, intermediate)`` for a kind.

    For the balanced joint kind these are the lambda-tilde / mu-tilde pair, for
    the marginal product lambda-tilde' / mu-tilde', and for the intrinsic
    product lambda / mu.
    """
    p_ext, p_int = family_statistics(kind, cfg, smag)
    return sorted_desc(p_ext), sorted_desc(p_int)


def _third_prefix_gap(smag: float) -> float:
    state = intermediate(smag)
    joint = prefix_sums(statistics_of(StatisticsKind.JOINT, state, BALANCED))
    intrinsic = prefix_sums(statistics_of(StatisticsKind.INTRINSIC_PRODUCT, state))
    return float(joint[2] - intrinsic[2])


def purity_threshold_joint_vs_intrinsic(xtol: float = 1e-13) -> float:
    """Bloch length above which balanced joint and intrinsic product statistics of
    intermediate states stop being comparable.
    """
    return bisect(_third_prefix_gap, 1e-3, 1.0, xtol=xtol, rtol=4 * np.finfo(float).eps)


def joint_vs_intrinsic(smag: float) -> MajorizationRelation:
    state = intermediate(smag)
    return compare(
        statistics_of(StatisticsKind.JOINT, state, BALANCED),
        statistics_of(StatisticsKind.INTRINSIC_PRODUCT, state),
    )


# -- majorization uncertainty bounds -------------------------------------------


def _disk_grid(shape=BOUND_GRID) -> tuple[np.ndarray, np.ndarray]:
    n_theta, n_r = shape
    theta = np.arange(n_theta) * (2 * math.pi / n_theta)
    r = np.linspace(0.0, 1.0, n_r)
    return np.meshgrid(theta, r, indexing="ij")


def _top_k_sum(kind, cfg, k):
    def f(theta, r):
        stats = statistics_grid(kind, r * np.sin(theta), r * np.cos(theta), cfg)
        return np.sort(stats, axis=-1)[..., ::-1][..., :k].sum(axis=-1)

    return f


def _sup_on_disk(f, shape, candidates: int = 4) -> float:
    theta, r = _disk_grid(shape)
    values = f(theta, r)
    order = np.argsort(values, axis=None)[::-1]
    hx = 2 * math.pi / shape[0]
    hy = 1.0 / (shape[1] - 1)
    best = -math.inf
    seen: list[tuple[float, float]] = []
    for flat in order:
        i = np.unravel_index(flat, values.shape)
        t0, r0 = float(theta[i]), float(r[i])
        if any(abs(t0 - t) < 4 * hx and abs(r0 - rr) < 4 * hy for t, rr in seen):
            continue
        seen.append((t0, r0))
        best = max(best, zoom_maximize(f, t0, r0, hx, hy, (0.0, 1.0), REFINE_TOL)[2])
        if len(seen) >= candidates:
            break
    return best


def compute_bound_vector(
    kind: StatisticsKind, cfg: MeasurementConfig = BALANCED, shape=BOUND_GRID
) -> np.ndarray:
    """Constant vector majorizing the kind's statistics for every qubit state.

    The ``k``-th prefix sum is the supremum over the Bloch ball of the sum of
    the ``k`` largest components.  Statistics depend on ``(sx, sz)`` only, so
    the search runs over the unit disk in polar coordinates.
    """
    kind = StatisticsKind(kind)
    sups = [min(_sup_on_disk(_top_k_sum(kind, cfg, k), shape), 1.0) for k in (1, 2, 3)]
    omega = np.diff([0.0, *sups, 1.0])
    if np.any(np.diff(omega) > 1e-9) or np.any(omega < -1e-12):
        raise BoundConsistencyError(
            f"bound vector for {kind.value} is not a descending distribution: {omega}"
        )
    return np.clip(omega, 0.0, None)


@dataclass(frozen=True)
class BoundVectors:
    omega_joint: np.ndarray
    omega_marginal_product: np.ndarray
    omega_intrinsic: np.ndarray

    def of(self, kind: StatisticsKind) -> np.ndarray:
        kind = StatisticsKind(kind)
        if kind is StatisticsKind.JOINT:
            return self.omega_joint
        if kind is StatisticsKind.MARGINAL_PRODUCT:
            return self.omega_marginal_product
        return self.omega_intrinsic


def bound_vectors(cfg: MeasurementConfig = BALANCED) -> BoundVectors:
    return BoundVectors(*(compute_bound_vector(k, cfg) for k in StatisticsKind))


def closed_form_bounds() -> BoundVectors:
    """Analytic bound vectors for the balanced measurement ``delta = pi/4``."""
    r2 = math.sqrt(2.0)
    return BoundVectors(
        np.array([2.0, r2, 2.0 - r2, 0.0]) / 4.0,
        np.array([9 * r2, 8 - r2, 7 * r2 - 8, r2]) / (16 * r2),
        np.array([3 + 2 * r2, 5 - 2 * r2, 0.0, 0.0]) / 8.0,
    )


def attainability_gap(
    kind: StatisticsKind,
    cfg: MeasurementConfig = BALANCED,
    omega: np.ndarray | None = None,
    shape=BOUND_GRID,
) -> float:
    """Smallest max-norm distance between any state's sorted statistics and ``omega``.

    ``omega`` defaults to the numerically computed bound vector of the kind.
    A strictly positive gap means no state saturates the bound.
    """
    kind = StatisticsKind(kind)
    if omega is None:
        omega = compute_bound_vector(kind, cfg, shape)
    omega = np.asarray(omega, dtype=float)

    def neg_distance(theta, r):
        stats = statistics_grid(kind, r * np.sin(theta), r * np.cos(theta), cfg)
        stats = np.sort(stats, axis=-1)[..., ::-1]
        return -np.max(np.abs(stats - omega), axis=-1)

    return -_sup_on_disk(neg_distance, shape)
