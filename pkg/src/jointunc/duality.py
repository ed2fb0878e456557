"""Path distinguishability, fringe visibility and predictability for pure states.

The paths are the sigma_z eigenstates, weighted by ``w+ = cos^2(theta/2)``;
the apparatus pointer overlap is ``<a+|a-> = cos(delta)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import bisect

from .statistics import BALANCED, MeasurementConfig

LOCUS_TOL = 1e-12


@dataclass(frozen=True)
class DualityReport:
    D: float
    V: float
    P: float

    @property
    def sum_sq(self) -> float:
        return self.D**2 + self.V**2


def path_weights(theta: float) -> tuple[float, float]:
    return math.cos(theta / 2) ** 2, math.sin(theta / 2) ** 2


def duality_report(theta: float, cfg: MeasurementConfig = BALANCED) -> DualityReport:
    w_plus, w_minus = path_weights(theta)
    overlap = abs(math.cos(cfg.delta))
    d = math.sqrt(max(0.0, 1.0 - 4.0 * w_plus * w_minus * overlap**2))
    v = 2.0 * math.sqrt(w_plus * w_minus) * overlap
    return DualityReport(d, v, abs(w_plus - w_minus))


def dv_equal_locus(cfg: MeasurementConfig = BALANCED, xtol: float = 1e-12) -> list[float]:
    """All ``theta`` in ``[0, pi]`` with ``D == V``.

    The condition ``w+ w- cos^2(delta) = 1/8`` reads ``g(theta) = sin^2(theta)
    cos^2(delta) - 1/2 = 0``; ``g`` peaks at ``theta = pi/2``, so there are two
    roots, one double root, or none.
    """
    c2 = math.cos(cfg.delta) ** 2

    def g(theta: float) -> float:
        return math.sin(theta) ** 2 * c2 - 0.5

    peak = g(math.pi / 2)
    if abs(peak) <= LOCUS_TOL:
        return [math.pi / 2]
    if peak < 0.0:
        return []
    return [
        bisect(g, 0.0, math.pi / 2, xtol=xtol),
        bisect(g, math.pi / 2, math.pi, xtol=xtol),
    ]
