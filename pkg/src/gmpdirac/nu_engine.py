"""Parametric Nikiforov-Uvarov engine.

An equation of the form

    psi'' + (c1 - c2 z)/(z(1 - c3 z)) psi' + (-A z^2 + B z - C)/(z(1 - c3 z))^2 psi = 0

is reduced to thirteen constants. Their values fix the quantization
condition and the wavefunction factors

    phi(z) = z^{c12} (1 - c3 z)^{c13},   y_n(z) = P_n^{(c10, c11)}(1 - 2 c3 z).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NoBoundStateError, UnphysicalSolutionError
from .specfun import jacobi_poly


@dataclass(frozen=True)
class NUTemplate:
    c1: float
    c2: float
    c3: float
    A: float
    B: float
    C: float


@dataclass(frozen=True)
class NUConstants:
    c4: float
    c5: float
    c6: float
    c7: float
    c8: float
    c9: float
    c10: float
    c11: float
    c12: float
    c13: float
    pi_linear: tuple[float, float]  # (slope, intercept)
    k: float
    tau: tuple[float, float]  # (slope, intercept)
    lam: float
    c3: float

    def lambda_n(self, n: int) -> float:
        """-n tau' - n(n-1) sigma''/2 with sigma = z(1 - c3 z)."""
        return -n * self.tau[0] + n * (n - 1) * self.c3


def derive_constants(t: NUTemplate, check: bool = True) -> NUConstants:
    c4 = 0.5 * (1 - t.c1)
    c5 = 0.5 * (t.c2 - 2 * t.c3)
    c6 = c5 * c5 + t.A
    c7 = 2 * c4 * c5 - t.B
    c8 = c4 * c4 + t.C
    c9 = t.c3 * (c7 + t.c3 * c8) + c6
    if c8 < 0 or c9 < 0:
        raise NoBoundStateError(f"negative radicand: c8={c8:.6g}, c9={c9:.6g}")
    r8, r9 = math.sqrt(c8), math.sqrt(c9)
    mix = r9 + t.c3 * r8
    c12 = c4 + r8
    c13 = -c12 - (c5 - mix) / t.c3
    c10 = t.c1 + 2 * c4 + 2 * r8 - 1
    c11 = (t.c2 - 2 * c5 + 2 * mix) / t.c3 - (t.c1 + 2 * c4 + 2 * r8) - 1
    if check and (c12 <= 0 or c13 <= 0):
        raise UnphysicalSolutionError(f"c12={c12:.6g}, c13={c13:.6g} must be positive")
    pi_linear = (-(mix - c5), c4 + r8)
    k = -(c7 + 2 * t.c3 * c8) - 2 * r8 * r9
    tau = (-(t.c2 - 2 * c5 + 2 * mix), t.c1 + 2 * c4 + 2 * r8)
    lam = k + pi_linear[0]
    return NUConstants(c4, c5, c6, c7, c8, c9, c10, c11, c12, c13, pi_linear, k, tau, lam, t.c3)


def eigenvalue_residual(t: NUTemplate, n: int, check: bool = True) -> float:
    """Zero exactly when (template, n) satisfies the quantization condition."""
    k = derive_constants(t, check)
    r8, r9 = math.sqrt(k.c8), math.sqrt(k.c9)
    return (
        (t.c2 - t.c3) * n
        + t.c3 * n * n
        - (2 * n + 1) * k.c5
        + (2 * n + 1) * (r9 + t.c3 * r8)
        + k.c7
        + 2 * t.c3 * k.c8
        + 2 * r8 * r9
    )


def wavefunction_factors(t: NUTemplate, n: int):
    """Return (phi, rho, y_n) as callables of z."""
    k = derive_constants(t)
    if k.c10 <= -1 or k.c11 <= -1:
        raise UnphysicalSolutionError(f"c10={k.c10:.6g}, c11={k.c11:.6g} must exceed -1")
    c3 = t.c3

    def phi(z):
        return z**k.c12 * (1 - c3 * z) ** k.c13

    def rho(z):
        return z**k.c10 * (1 - c3 * z) ** k.c11

    def y_n(z):
        return jacobi_poly(n, k.c10, k.c11, 1 - 2 * c3 * z)

    return phi, rho, y_n
