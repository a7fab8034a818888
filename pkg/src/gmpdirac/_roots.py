"""Scan-and-refine root search for the transcendental energy equations."""

from __future__ import annotations

import numpy as np
from scipy.optimize import brentq

SCAN_STEPS = 2000
XTOL = 1e-12


def scan_roots(residual, lo: float, hi: float, steps: int = SCAN_STEPS) -> list[tuple[float, tuple[float, float]]]:
    """All sign changes of ``residual`` on [lo, hi], refined to XTOL.

    ``residual`` must accept numpy arrays and may return NaN where it is
    undefined; intervals touching NaN are skipped.
    """
    grid = np.linspace(lo, hi, steps + 1)
    with np.errstate(invalid="ignore", divide="ignore"):
        values = residual(grid)
    roots = []
    for i in range(steps):
        fa, fb = values[i], values[i + 1]
        if not (np.isfinite(fa) and np.isfinite(fb)):
            continue
        if fa == 0.0:
            roots.append((float(grid[i]), (float(grid[i]), float(grid[i]))))
            continue
        if fa * fb < 0:
            a, b = float(grid[i]), float(grid[i + 1])
            root = brentq(lambda e: float(residual(np.array([e]))[0]), a, b, xtol=XTOL, rtol=4 * np.finfo(float).eps)
            roots.append((root, (a, b)))
    if values[-1] == 0.0:
        roots.append((float(grid[-1]), (float(grid[-1]), float(grid[-1]))))
    return roots
