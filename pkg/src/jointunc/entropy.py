"""Rényi and Tsallis entropies and the extreme-vs-intermediate analysis."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect
from scipy.special import xlogy

from ._numerics import bracketed_min, periodic_local_minima, scan_roots
from .errors import DegenerateFamilyError, DomainError, UnsupportedIndexError
from .statistics import (
    BALANCED,
    MeasurementConfig,
    StatisticsKind,
    as_prob_vec,
    family_statistics,
    statistics_grid,
)

ZERO_THRESHOLD = 1e-12
ONE_SNAP = 1e-9
THETA_GRID = 4096
THETA_TOL = 1e-10
MINIMIZER_VALUE_TOL = 1e-9
ALPHA_MAX = 10.0
SCAN_STEP = 1e-3
ROOT_TOL = 1e-9
_BISECT_XTOL = 1e-12


@dataclass(frozen=True)
class EntropyIndex:
    """Entropic index ``alpha`` in ``[0, inf]``.

    ``alpha == 1`` is the Shannon limit and ``alpha == inf`` the min-entropy.
    Values within ``1e-9`` of one are snapped to exactly one.
    """

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if math.isnan(a) or a < 0.0:
            raise DomainError(f"entropic index must be >= 0, got {self.alpha!r}")
        if a != 1.0 and abs(a - 1.0) <= ONE_SNAP:
            a = 1.0
        object.__setattr__(self, "alpha", a)

    @property
    def is_one(self) -> bool:
        return self.alpha == 1.0

    @property
    def is_infinity(self) -> bool:
        return math.isinf(self.alpha)

    def __str__(self):
        return "inf" if self.is_infinity else f"{self.alpha:g}"


ONE = EntropyIndex(1.0)
INFINITY = EntropyIndex(math.inf)


def as_index(idx: EntropyIndex | float) -> EntropyIndex:
    return idx if isinstance(idx, EntropyIndex) else EntropyIndex(idx)


def _renyi_last_axis(p: np.ndarray, idx: EntropyIndex) -> np.ndarray:
    p = np.clip(p, 0.0, None)
    a = idx.alpha
    if a == 0.0:
        return np.log(np.count_nonzero(p > ZERO_THRESHOLD, axis=-1))
    if idx.is_one:
        return -np.sum(xlogy(p, p), axis=-1)
    pmax = p.max(axis=-1)
    if idx.is_infinity:
        return -np.log(pmax)
    # factor out the largest component so large alpha cannot underflow
    ratio_sum = np.sum((p / pmax[..., None]) ** a, axis=-1)
    return (a * np.log(pmax) + np.log(ratio_sum)) / (1.0 - a)


def renyi(p, idx: EntropyIndex | float) -> float:
    """Rényi entropy in nats; zero components never contribute."""
    return float(_renyi_last_axis(as_prob_vec(p), as_index(idx)))


def renyi_rows(p: np.ndarray, idx: EntropyIndex | float) -> np.ndarray:
    """Unvalidated vectorized :func:`renyi` over the last axis of ``p``."""
    return _renyi_last_axis(np.asarray(p, dtype=float), as_index(idx))


def tsallis(p, idx: EntropyIndex | float) -> float:
    idx = as_index(idx)
    p = as_prob_vec(p)
    if idx.is_infinity:
        raise UnsupportedIndexError("Tsallis entropy is only defined here for finite indices")
    if idx.is_one:
        return float(-np.sum(xlogy(p, p)))
    a = idx.alpha
    if a == 0.0:
        power_sum = float(np.count_nonzero(p > ZERO_THRESHOLD))
    else:
        power_sum = float(np.sum(p[p > 0.0] ** a))
    return (power_sum - 1.0) / (1.0 - a)


def tsallis_from_renyi(r: float, idx: EntropyIndex | float) -> float:
    """Map a Rényi value to the Tsallis value of the same distribution."""
    idx = as_index(idx)
    if idx.is_infinity:
        raise UnsupportedIndexError("Tsallis entropy is only defined here for finite indices")
    if idx.is_one:
        return r
    a = idx.alpha
    return math.expm1((1.0 - a) * r) / (1.0 - a)


# -- intrinsic entropic uncertainty bound ------------------------------------

_INTERMEDIATE_MARGINAL = (0.5 * (1 + 1 / math.sqrt(2)), 0.5 * (1 - 1 / math.sqrt(2)))


def _bound_branch(idx: EntropyIndex) -> float:
    return 2.0 * float(_renyi_last_axis(np.array(_INTERMEDIATE_MARGINAL), idx))


@functools.cache
def alpha_intrinsic() -> float:
    """Index where the ``ln 2`` and intermediate-state branches of the bound meet."""
    return bisect(
        lambda a: _bound_branch(EntropyIndex(a)) - math.log(2.0),
        1.05,
        3.0,
        xtol=1e-14,
        rtol=4 * np.finfo(float).eps,
    )


def entropic_ur_bound_intrinsic(idx: EntropyIndex | float) -> float:
    """Lower bound on ``R_alpha(pX pZ)`` over all qubit states."""
    idx = as_index(idx)
    if idx.alpha <= alpha_intrinsic():
        return math.log(2.0)
    return _bound_branch(idx)


# -- theta-family analysis ----------------------------------------------------


@dataclass(frozen=True)
class ThetaExtrema:
    rmin: float
    rmax: float
    minimizers: tuple[float, ...]
    maximizers: tuple[float, ...]


def entropy_profile(
    kind: StatisticsKind,
    idx: EntropyIndex | float,
    cfg: MeasurementConfig,
    smag: float,
    thetas,
) -> np.ndarray:
    """``R_alpha`` of the kind's statistics along ``theta`` in the XZ plane."""
    thetas = np.asarray(thetas, dtype=float)
    stats = statistics_grid(kind, smag * np.sin(thetas), smag * np.cos(thetas), cfg)
    return renyi_rows(stats, idx)


def _refined_extrema(f, grid: np.ndarray, values: np.ndarray) -> list[tuple[float, float]]:
    step = grid[1] - grid[0]
    found = []
    for i in periodic_local_minima(values):
        x, fx = bracketed_min(f, grid[i] - step, grid[i] + step, THETA_TOL)
        if fx > values[i]:
            x, fx = grid[i], values[i]
        x %= 2 * math.pi
        if 2 * math.pi - x < 1e-6:
            x -= 2 * math.pi
        found.append((x, fx))
    return found


def _select(found: list[tuple[float, float]], best: float) -> tuple[float, ...]:
    xs = sorted(x for x, fx in found if fx <= best + MINIMIZER_VALUE_TOL)
    unique: list[float] = []
    for x in xs:
        if not unique or x - unique[-1] > 1e-6:
            unique.append(x)
    return tuple(unique)


@functools.lru_cache(maxsize=512)
def theta_extrema(
    kind: StatisticsKind, idx: EntropyIndex, cfg: MeasurementConfig, smag: float
) -> ThetaExtrema:
    """Global extrema of ``R_alpha`` over ``theta in [0, 2pi)`` and their locations.

    A 4096-point grid brackets every local extremum, each of which is then
    polished by bounded scalar minimization.
    """
    kind = StatisticsKind(kind)
    grid = np.arange(THETA_GRID) * (2 * math.pi / THETA_GRID)
    values = entropy_profile(kind, idx, cfg, smag, grid)
    if values.max() - values.min() <= 1e-14:
        v = float(values.mean())
        return ThetaExtrema(v, v, (), ())

    def r(theta: float) -> float:
        return float(entropy_profile(kind, idx, cfg, smag, [theta])[0])

    mins = _refined_extrema(r, grid, values)
    neg_maxs = _refined_extrema(lambda t: -r(t), grid, -values)
    rmin = min(fx for _, fx in mins)
    neg_rmax = min(fx for _, fx in neg_maxs)
    return ThetaExtrema(rmin, -neg_rmax, _select(mins, rmin), _select(neg_maxs, neg_rmax))


def normalized_renyi(
    kind: StatisticsKind,
    idx: EntropyIndex | float,
    cfg: MeasurementConfig,
    smag: float,
    theta,
):
    """``(R - R_min) / (R_max - R_min)`` with extrema taken over the XZ-plane family.

    ``theta`` may be a scalar or an array; the return type follows it.
    """
    ext = theta_extrema(StatisticsKind(kind), as_index(idx), cfg, float(smag))
    if ext.rmax - ext.rmin <= 1e-14:
        raise DegenerateFamilyError(
            f"entropy is constant in theta for kind={StatisticsKind(kind).value}, smag={smag}"
        )
    r = entropy_profile(kind, idx, cfg, smag, np.atleast_1d(theta))
    out = np.clip((r - ext.rmin) / (ext.rmax - ext.rmin), 0.0, 1.0)
    return float(out[0]) if np.ndim(theta) == 0 else out


def classify_theta(theta: float, tol: float = 1e-6) -> str:
    """``"extreme"``, ``"intermediate"`` or ``"other"`` for an XZ-plane angle."""
    quarter = math.pi / 4
    m = round(theta / quarter)
    if abs(theta - m * quarter) > tol:
        return "other"
    return "extreme" if m % 2 == 0 else "intermediate"


# -- extreme vs intermediate ---------------------------------------------------

#: Which extreme state stands in for the extreme family in ``delta_r``.
EXTREME_REPRESENTATIVE = "extreme-z(+)"


def delta_r(
    kind: StatisticsKind,
    idx: EntropyIndex | float,
    cfg: MeasurementConfig = BALANCED,
    smag: float = 1.0,
) -> float:
    """``R(p_ext) - R(p_int)``; negative means the extreme states are less uncertain."""
    p_ext, p_int = family_statistics(kind, cfg, smag)
    return renyi(p_ext, idx) - renyi(p_int, idx)


@dataclass(frozen=True)
class CriticalIndexReport:
    kind: StatisticsKind
    roots: tuple[float, ...]
    sign_pattern: tuple[int, ...]
    search_range: tuple[float, float]
    delta: float
    smag: float
    extreme_representative: str = EXTREME_REPRESENTATIVE


def critical_indices(
    kind: StatisticsKind,
    cfg: MeasurementConfig = BALANCED,
    smag: float = 1.0,
    search_range: tuple[float, float] = (0.0, ALPHA_MAX),
    step: float = SCAN_STEP,
) -> CriticalIndexReport:
    """All sign changes of ``alpha -> delta_r`` on ``(lo, hi]``."""
    kind = StatisticsKind(kind)
    lo, hi = search_range
    if not 0.0 <= lo < hi:
        raise DomainError(f"invalid search range {search_range!r}")
    p_ext, p_int = family_statistics(kind, cfg, smag)

    def f(a: float) -> float:
        idx = EntropyIndex(a)
        return float(_renyi_last_axis(p_ext, idx) - _renyi_last_axis(p_int, idx))

    n = int(round((hi - lo) / step))
    grid = lo + step * np.arange(1, n + 1)
    roots = scan_roots(f, grid, xtol=_BISECT_XTOL)
    edges = [lo, *roots, hi]
    signs = tuple(int(np.sign(f(0.5 * (u + v)))) for u, v in zip(edges[:-1], edges[1:]))
    return CriticalIndexReport(kind, tuple(roots), signs, (lo, hi), cfg.delta, smag)
