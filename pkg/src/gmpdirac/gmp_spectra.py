"""Bound-state energies of the generalized Morse potential.

Relativistic levels come from transcendental equations in E, solved by a
uniform scan followed by bracketed refinement. Squaring the quantization
condition admits spurious roots, so every candidate is kept only if the
unsquared epsilon (the decay exponent of the wavefunction) is positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._roots import scan_roots
from .errors import AmbiguityError, DomainError, NoBoundStateError
from .model import NonRelContext, PotentialParams, QuantumNumbers, RelativisticContext, Symmetry
from .nu_engine import NUTemplate
from .potentials import ApproximationConfig

WINDOW_OFFSET = 1e-6


@dataclass(frozen=True)
class SpinAuxiliary:
    nu1_sq: float
    omega1_sq: float
    epsilon: float
    delta1: float

    @property
    def epsilon_sq(self) -> float:
        return self.epsilon**2


@dataclass(frozen=True)
class PseudospinAuxiliary:
    nu2_sq: float
    omega2_sq: float
    epsilon_tilde: float
    delta2: float

    @property
    def epsilon_sq(self) -> float:
        return self.epsilon_tilde**2


@dataclass(frozen=True)
class EnergySolution:
    energy: float
    residual: float
    lhs: float
    bracket: tuple[float, float]
    aux: object
    accepted: bool = True
    reason: str = ""


def _require_alpha(p: PotentialParams):
    if not p.alpha > 0:
        raise DomainError("GMP spectra need alpha > 0; use kratzer_spectra for alpha = 0")


def _spin_parts(E, p, ctx, q, d0):
    """Vectorized pieces of the spin equation at energy (array) E."""
    hc2a2 = ctx.hc**2 * p.alpha**2
    kk = q.kappa * (q.kappa + 1)
    nk2 = (1 + 2 * q.kappa) ** 2
    X = ctx.Mc2 + E - ctx.C_sym
    nu_sq = X * p.D / hc2a2
    omega_sq = (E * E - ctx.Mc2**2 + ctx.C_sym * (ctx.Mc2 - E)) / hc2a2
    with np.errstate(invalid="ignore"):
        delta = 0.5 * (1 + np.sqrt(nk2 + 4 * p.b**2 * nu_sq))
    nd = q.n + delta
    eps = (2 + p.b) * p.b * nu_sq / (2 * nd) - nd / 2
    lhs = X * (ctx.Mc2 + p.D - E) + hc2a2 * kk * d0
    rhs = hc2a2 * eps**2
    return lhs, rhs, X, nu_sq, omega_sq, eps, delta


def _pseudo_parts(E, p, ctx, q, d0):
    hc2a2 = ctx.hc**2 * p.alpha**2
    kk = q.kappa * (q.kappa - 1)
    nk2 = (1 - 2 * q.kappa) ** 2
    X = ctx.Mc2 - E + ctx.C_sym
    nu_sq = X * p.D / hc2a2
    omega_sq = (ctx.Mc2**2 - E * E + ctx.C_sym * (ctx.Mc2 + E)) / hc2a2
    with np.errstate(invalid="ignore"):
        delta = 0.5 * (1 + np.sqrt(nk2 - 4 * p.b**2 * nu_sq))
    nd = q.n + delta
    bracketed = (2 + p.b) * p.b * nu_sq / (2 * nd) + nd / 2
    eps = -bracketed
    lhs = (E - ctx.Mc2 - ctx.C_sym) * (p.D - ctx.Mc2 - E) + hc2a2 * kk * d0
    rhs = hc2a2 * bracketed**2
    return lhs, rhs, X, nu_sq, omega_sq, eps, delta


def spin_residual(E, p, ctx, q, cfg: ApproximationConfig = ApproximationConfig()):
    lhs, rhs, *_ = _spin_parts(np.asarray(E, dtype=float), p, ctx, q, cfg.d0)
    return lhs - rhs


def pseudospin_residual(E, p, ctx, q, cfg: ApproximationConfig = ApproximationConfig()):
    lhs, rhs, *_ = _pseudo_parts(np.asarray(E, dtype=float), p, ctx, q, cfg.d0)
    return lhs - rhs


def _solve(parts, aux_type, p, ctx, q, d0, label):
    def residual(E):
        lhs, rhs, *_ = parts(E, p, ctx, q, d0)
        return lhs - rhs

    lo = ctx.C_sym - ctx.Mc2 + WINDOW_OFFSET
    hi = ctx.Mc2 + p.D
    accepted, rejected = [], []
    for root, bracket in scan_roots(residual, lo, hi):
        lhs, rhs, X, nu_sq, omega_sq, eps, delta = (float(v[0]) for v in parts(np.array([root]), p, ctx, q, d0))
        aux = aux_type(nu_sq, omega_sq, eps, delta)
        sol = EnergySolution(root, lhs - rhs, lhs, bracket, aux)
        if not math.isfinite(delta):
            reason = "delta is complex"
        elif eps <= 0:
            reason = "epsilon is not positive (spurious root of the squared equation)"
        elif label == "spin" and X <= 0:
            reason = "Mc^2 + E - C_s is not positive"
        else:
            accepted.append(sol)
            continue
        rejected.append(EnergySolution(root, sol.residual, lhs, bracket, aux, False, reason))
    if not accepted:
        detail = "; ".join(f"E={s.energy:.8g}: {s.reason}" for s in rejected) or "no sign change in window"
        raise NoBoundStateError(f"no {label} bound state for n={q.n}, kappa={q.kappa} ({detail})")
    if len(accepted) > 1:
        raise AmbiguityError(
            f"{len(accepted)} admissible {label} roots for n={q.n}, kappa={q.kappa}",
            [s.energy for s in accepted],
        )
    return accepted[0]


def spin_energy(p: PotentialParams, ctx: RelativisticContext, q: QuantumNumbers,
                cfg: ApproximationConfig = ApproximationConfig()) -> EnergySolution:
    """Valence level in the exact spin-symmetry limit (Sigma = GMP, Delta = C_s)."""
    _require_alpha(p)
    if q.symmetry is not Symmetry.SPIN:
        raise DomainError("spin_energy needs spin-symmetry quantum numbers")
    return _solve(_spin_parts, SpinAuxiliary, p, ctx, q, cfg.d0, "spin")


def pseudospin_energy(p: PotentialParams, ctx: RelativisticContext, q: QuantumNumbers,
                      cfg: ApproximationConfig = ApproximationConfig()) -> EnergySolution:
    """Hole level in the exact pseudospin limit (Delta = GMP, Sigma = C_ps)."""
    _require_alpha(p)
    if q.symmetry is not Symmetry.PSEUDOSPIN:
        raise DomainError("pseudospin_energy needs pseudospin quantum numbers")
    return _solve(_pseudo_parts, PseudospinAuxiliary, p, ctx, q, cfg.d0, "pseudospin")


def swave_spin_residual(p: PotentialParams, ctx: RelativisticContext, n: int, E: float) -> float:
    """kappa = -1, C_s = 0 form, written out without the centrifugal terms."""
    hc2a2 = ctx.hc**2 * p.alpha**2
    nu_sq = (ctx.Mc2 + E) * p.D / hc2a2
    delta = 0.5 * (1 + math.sqrt(1 + 4 * p.b**2 * nu_sq))
    lhs = (ctx.Mc2 + E) * (ctx.Mc2 + p.D - E)
    return lhs - hc2a2 * ((2 + p.b) * p.b * nu_sq / (2 * (n + delta)) - (n + delta) / 2) ** 2


def swave_pseudospin_residual(p: PotentialParams, ctx: RelativisticContext, n: int, E: float) -> float:
    """kappa = 1, C_ps = 0 form."""
    hc2a2 = ctx.hc**2 * p.alpha**2
    nu_sq = (ctx.Mc2 - E) * p.D / hc2a2
    delta = 0.5 * (1 + math.sqrt(1 - 4 * p.b**2 * nu_sq))
    lhs = (E - ctx.Mc2) * (p.D - ctx.Mc2 - E)
    return lhs - hc2a2 * ((2 + p.b) * p.b * nu_sq / (2 * (n + delta)) + (n + delta) / 2) ** 2


def spin_template(p: PotentialParams, ctx: RelativisticContext, q: QuantumNumbers, E: float,
                  cfg: ApproximationConfig = ApproximationConfig()) -> NUTemplate:
    """NU coefficients of the spin equation in z = e^{-alpha r} at energy E."""
    lhs, _, _, nu_sq, _, _, _ = _spin_parts(np.float64(E), p, ctx, q, cfg.d0)
    eps_sq = float(lhs) / (ctx.hc**2 * p.alpha**2)
    b = p.b
    return NUTemplate(1.0, 1.0, 1.0, (2 + b) * b * nu_sq + eps_sq,
                      2 * (b * nu_sq + eps_sq) - q.kappa * (q.kappa + 1), eps_sq)


def pseudospin_template(p: PotentialParams, ctx: RelativisticContext, q: QuantumNumbers, E: float,
                        cfg: ApproximationConfig = ApproximationConfig()) -> NUTemplate:
    lhs, _, _, nu_sq, _, _, _ = _pseudo_parts(np.float64(E), p, ctx, q, cfg.d0)
    eps_sq = float(lhs) / (ctx.hc**2 * p.alpha**2)
    b = p.b
    return NUTemplate(1.0, 1.0, 1.0, eps_sq - (2 + b) * b * nu_sq,
                      2 * (eps_sq - b * nu_sq) - q.kappa * (q.kappa - 1), eps_sq)


@dataclass(frozen=True)
class NonRelAuxiliary:
    delta: float
    eta: float


def nonrel_aux(p: PotentialParams, ctx: NonRelContext, n: int, l: int) -> NonRelAuxiliary:
    _require_alpha(p)
    g = 2 * ctx.mu / (ctx.hbar**2 * p.alpha**2)
    delta = 0.5 * (1 + math.sqrt((1 + 2 * l) ** 2 + 4 * g * p.D * p.b**2))
    eta = g * (2 + p.b) * p.D * p.b / (2 * (n + delta)) - (n + delta) / 2
    return NonRelAuxiliary(delta, eta)


def nonrel_energy(p: PotentialParams, ctx: NonRelContext, n: int, l: int,
                  cfg: ApproximationConfig = ApproximationConfig()) -> float:
    """Closed-form Schrodinger level with the approximate centrifugal term."""
    if n < 0 or l < 0:
        raise DomainError("n and l must be non-negative")
    aux = nonrel_aux(p, ctx, n, l)
    scale = ctx.hbar**2 * p.alpha**2 / (2 * ctx.mu)
    return p.D + scale * l * (l + 1) * cfg.d0 - scale * aux.eta**2
