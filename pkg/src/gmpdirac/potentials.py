"""Generalized Morse and Kratzer potentials and the centrifugal approximation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import PotentialParams

DEFAULT_D0 = 1.0 / 12.0


@dataclass(frozen=True)
class ApproximationConfig:
    """Constant shift d0 in 1/r^2 ~ alpha^2 [d0 + e^{-ar}/(1-e^{-ar})^2]."""

    d0: float = DEFAULT_D0

    def __post_init__(self):
        if not self.d0 >= 0:
            raise DomainError(f"d0 must be non-negative, got {self.d0}")


def _positive_r(r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("radius must be positive")
    return r


def _out(x):
    return x if np.ndim(x) else float(x)


def gmp(r, p: PotentialParams):
    """D (1 - b/(e^{alpha r} - 1))^2."""
    r = _positive_r(r)
    if p.alpha <= 0:
        raise DomainError("gmp needs alpha > 0; use kratzer for the alpha -> 0 limit")
    with np.errstate(over="ignore"):
        ratio = p.b / np.expm1(p.alpha * r)
    return _out(p.D * (1.0 - ratio) ** 2)


def kratzer(r, p: PotentialParams):
    """D ((r - r_e)/r)^2."""
    r = _positive_r(r)
    return _out(p.D * ((r - p.r_e) / r) ** 2)


def exp_ratio(x):
    """e^{-x}/(1-e^{-x})^2 = 1/(4 sinh^2(x/2)), stable for small x."""
    return 0.25 / np.sinh(0.5 * np.asarray(x, dtype=float)) ** 2


def centrifugal_approx(r, alpha: float, cfg: ApproximationConfig = ApproximationConfig()):
    r = _positive_r(r)
    if not alpha > 0:
        raise DomainError("centrifugal_approx needs alpha > 0")
    return _out(alpha**2 * (cfg.d0 + exp_ratio(alpha * r)))


POTENTIALS = {"gmp": gmp, "kratzer": kratzer}


def sample_curve(potential: str, p: PotentialParams, grid) -> list[tuple[float, float]]:
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        return []
    if np.any(np.diff(grid) <= 0):
        raise DomainError("grid must be strictly increasing")
    values = np.atleast_1d(POTENTIALS[potential](grid, p))
    return [(float(r), float(v)) for r, v in zip(grid, values)]
