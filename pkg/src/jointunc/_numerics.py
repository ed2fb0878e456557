"""Small root-finding and extremization helpers shared by the analysis modules."""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np
from scipy.optimize import bisect, minimize_scalar

def bracketed_min(
    f: Callable[[float], float], a: float, b: float, tol: float = 1e-10
) -> tuple[float, float]:
    """Minimum of ``f`` on ``[a, b]`` as ``(x, f(x))``; ``x`` never leaves the bracket."""
    res = minimize_scalar(f, bounds=(a, b), method="bounded", options={"xatol": tol})
    return float(res.x), float(res.fun)


def scan_roots(
    f: Callable[[float], float], grid: Sequence[float], xtol: float = 1e-9
) -> list[float]:
    """Locate every sign change of ``f`` across ``grid`` and polish by bisection.

    Grid points where ``f`` is exactly zero are reported as roots directly.
    """
    xs = np.asarray(grid, dtype=float)
    ys = np.array([f(x) for x in xs])
    roots = []
    for i in range(len(xs)):
        if ys[i] == 0.0:
            roots.append(float(xs[i]))
        elif i + 1 < len(xs) and ys[i] * ys[i + 1] < 0.0:
            roots.append(float(bisect(f, xs[i], xs[i + 1], xtol=xtol, rtol=4 * np.finfo(float).eps)))
    return roots


def periodic_local_minima(values: np.ndarray) -> np.ndarray:
    """Indices of strict-or-flat local minima on a periodic 1-D grid."""
    left = np.roll(values, 1)
    right = np.roll(values, -1)
    return np.flatnonzero((values <= left) & (values <= right))


def zoom_maximize(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    x0: float,
    y0: float,
    hx: float,
    hy: float,
    ybounds: tuple[float, float],
    tol: float = 1e-10,
    points: int = 21,
    shrink: float = 4.0,
) -> tuple[float, float, float]:
    """Maximize a vectorized ``f(x, y)`` by repeated local grid zooms.

    Derivative-free and tolerant of kinks, which appear wherever the sorted
    order of a probability vector changes.  ``y`` is clipped to ``ybounds``.
    """
    lo, hi = ybounds
    best = (x0, y0, float(f(np.array(x0), np.array(y0))))
    while max(hx, hy) > tol:
        xs = best[0] + np.linspace(-hx, hx, points)
        ys = np.clip(best[1] + np.linspace(-hy, hy, points), lo, hi)
        gx, gy = np.meshgrid(xs, ys, indexing="ij")
        vals = f(gx, gy)
        i = np.unravel_index(np.argmax(vals), vals.shape)
        if vals[i] >= best[2]:
            best = (float(gx[i]), float(gy[i]), float(vals[i]))
        hx /= shrink
        hy /= shrink
    return best
