"""Finite-difference eigensolvers with the exact centrifugal term.

These serve as an independent check on the closed-form spectra. The radial
problem -u'' + U(r) u = lam u is discretized on a uniform mesh with Dirichlet
ends, giving a symmetric tridiagonal matrix whose selected eigenvalues come
from LAPACK bisection. Two meshes (h, h/2) are combined by Richardson
extrapolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import gmp_spectra, kratzer_spectra
from .errors import ConvergenceError, DomainError, GMPError
from .model import NonRelContext, PotentialParams, QuantumNumbers, RelativisticContext, Symmetry
from .potentials import ApproximationConfig, gmp, kratzer

DEFAULT_POINTS = 20000
DEFAULT_R_MIN = 0.0


@dataclass(frozen=True)
class RadialProblem:
    """-u'' + effective_potential(r) u = lam u on [r_min, r_max], u = 0 at both ends.

    The walls carry no samples, so the potential is only evaluated at
    r_min + h > 0; the default wall at the origin avoids an O(r_min) bias.

    ``mass_factor`` converts lam to an energy (E = lam / mass_factor) and
    ``threshold`` is the continuum edge; it defaults to U(r_max).
    """

    effective_potential: Callable
    r_max: float
    r_min: float = DEFAULT_R_MIN
    points: int = DEFAULT_POINTS
    mass_factor: float = 1.0
    threshold: float | None = None

    def __post_init__(self):
        if not (0 <= self.r_min < self.r_max):
            raise DomainError("need 0 <= r_min < r_max")
        if self.points < 3:
            raise DomainError("need at least three mesh points")


@dataclass(frozen=True)
class EigenResult:
    values: np.ndarray  # Richardson-extrapolated, ascending
    coarse: np.ndarray
    fine: np.ndarray
    complete: bool
    bound_count: int


def tridiagonal(rp: RadialProblem, points: int) -> tuple[np.ndarray, np.ndarray, float]:
    h = (rp.r_max - rp.r_min) / (points + 1)
    r = rp.r_min + h * np.arange(1, points + 1)
    diag = 2.0 / h**2 + rp.effective_potential(r)
    off = np.full(points - 1, -1.0 / h**2)
    return diag, off, h


def sturm_count(diag: np.ndarray, off: np.ndarray, x: float) -> int:
    """Number of eigenvalues below x (negative pivots of T - x I)."""
    count = 0
    q = diag[0] - x
    if q < 0:
        count += 1
    off2 = off**2
    tiny = np.finfo(float).tiny
    for i in range(1, diag.size):
        if q == 0:
            q = tiny
        q = diag[i] - x - off2[i - 1] / q
        if q < 0:
            count += 1
    return count


def _lowest(diag, off, count):
    return eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, count - 1))


def radial_eigenvalues(rp: RadialProblem, count: int) -> EigenResult:
    """Lowest ``count`` eigenvalues of -u'' + U u with second-order differences."""
    if count < 1:
        raise DomainError("count must be at least 1")
    d1, e1, _ = tridiagonal(rp, rp.points)
    d2, e2, _ = tridiagonal(rp, 2 * rp.points + 1)
    threshold = rp.threshold
    if threshold is None:
        threshold = float(rp.effective_potential(np.array([rp.r_max]))[0])
    coarse = _lowest(d1, e1, count)
    fine = _lowest(d2, e2, count)
    values = (4 * fine - coarse) / 3
    bound = int(np.count_nonzero(values < threshold))
    return EigenResult(values[:bound] if bound < count else values, coarse, fine, bound >= count, bound)


def eigenvalue_at(rp: RadialProblem, index: int) -> float:
    d1, e1, _ = tridiagonal(rp, rp.points)
    d2, e2, _ = tridiagonal(rp, 2 * rp.points + 1)
    sel = (index, index)
    coarse = eigh_tridiagonal(d1, e1, eigvals_only=True, select="i", select_range=sel)[0]
    fine = eigh_tridiagonal(d2, e2, eigvals_only=True, select="i", select_range=sel)[0]
    return float((4 * fine - coarse) / 3)


# problem builders ----------------------------------------------------


def _potential_fn(name: str, p: PotentialParams):
    if name == "gmp" and p.alpha > 0:
        return lambda r: gmp(r, p)
    return lambda r: kratzer(r, p)


def _radius(p: PotentialParams, decay: float, r_max: float | None) -> float:
    if r_max is not None:
        return r_max
    return p.r_e + 40.0 / max(decay, 1e-3)


def nonrel_problem(p: PotentialParams, ctx: NonRelContext, l: int, potential: str = "gmp",
                   energy_guess: float | None = None, r_max: float | None = None,
                   points: int = DEFAULT_POINTS) -> RadialProblem:
    V = _potential_fn(potential, p)
    mf = 2 * ctx.mu / ctx.hbar**2
    guess = p.D / 2 if energy_guess is None else energy_guess
    decay = math.sqrt(max(mf * (p.D - guess), 1e-6))
    ll = l * (l + 1)
    return RadialProblem(lambda r: ll / r**2 + mf * V(r), _radius(p, decay, r_max),
                         points=points, mass_factor=mf, threshold=mf * p.D)


def nonrel_oracle_energy(p: PotentialParams, ctx: NonRelContext, n: int, l: int, potential: str = "gmp",
                         energy_guess: float | None = None, r_max: float | None = None,
                         points: int = DEFAULT_POINTS) -> float:
    rp = nonrel_problem(p, ctx, l, potential, energy_guess, r_max, points)
    return eigenvalue_at(rp, n) / rp.mass_factor


def _dirac_coefficients(p, ctx, q, E):
    """(coupling s, target lam) with -u'' + [k/r^2 + s V] u = lam u."""
    hc2 = ctx.hc**2
    if q.symmetry is Symmetry.SPIN:
        X = ctx.Mc2 + E - ctx.C_sym
        return X / hc2, (E * E - ctx.Mc2**2 + ctx.C_sym * (ctx.Mc2 - E)) / hc2
    Xt = ctx.Mc2 - E + ctx.C_sym
    return -Xt / hc2, -Xt * (ctx.Mc2 + E) / hc2


def dirac_effective_eigenvalue(p: PotentialParams, ctx: RelativisticContext, q: QuantumNumbers,
                               initial_guess: float, potential: str = "gmp", r_max: float | None = None,
                               points: int = DEFAULT_POINTS, tol: float = 1e-9, max_iter: int = 200) -> float:
    """Self-consistent level of the second-order Dirac equation with exact kappa terms.

    At frozen E the radial problem is linear; its n-th eigenvalue must equal
    the E-dependent right-hand side. The mismatch is driven to zero by secant
    iteration on E.
    """
    if q.symmetry is Symmetry.NONREL:
        raise DomainError("use nonrel_oracle_energy for Schrodinger states")
    V = _potential_fn(potential, p)
    kk = q.centrifugal
    s0, lam0 = _dirac_coefficients(p, ctx, q, initial_guess)
    decay = math.sqrt(max(s0 * p.D - lam0, 1e-6))
    radius = _radius(p, decay, r_max)

    def mismatch(E):
        s, lam = _dirac_coefficients(p, ctx, q, E)
        rp = RadialProblem(lambda r: kk / r**2 + s * V(r), radius, points=points)
        return eigenvalue_at(rp, q.n) - lam

    trace = []
    e0, e1 = initial_guess, initial_guess + 1e-3
    f0 = mismatch(e0)
    for _ in range(max_iter):
        f1 = mismatch(e1)
        trace.append((e1, f1))
        if f1 == f0:
            break
        e2 = e1 - f1 * (e1 - e0) / (f1 - f0)
        if abs(e2 - e1) < tol:
            return e2
        e0, f0, e1 = e1, f1, e2
    raise ConvergenceError(f"secant did not converge for n={q.n}, kappa={q.kappa}", trace)


# polynomial roots ----------------------------------------------------------


def durand_kerner(coeffs, max_iter: int = 500, tol: float = 1e-15) -> np.ndarray:
    """Roots of a batch of polynomials by simultaneous Weierstrass iteration.

    ``coeffs`` has shape (..., d+1), highest degree first, leading entry
    nonzero. Returns complex roots of shape (..., d). Serves as an
    independent check on the closed-form quartic solver.
    """
    c = np.asarray(coeffs, dtype=complex)
    if np.any(c[..., 0] == 0):
        raise DomainError("leading coefficient must be nonzero")
    c = c / c[..., :1]
    degree = c.shape[-1] - 1
    # Cauchy bound sets the radius of the starting circle
    radius = 1 + np.max(np.abs(c[..., 1:]), axis=-1, keepdims=True)
    z = radius * (0.4 + 0.9j) ** np.arange(degree)
    z = np.broadcast_to(z, c.shape[:-1] + (degree,)).copy()

    def poly(x):
        out = np.ones_like(x)
        for k in range(1, degree + 1):
            out = out * x + c[..., k : k + 1]
        return out

    for _ in range(max_iter):
        diff = z[..., :, None] - z[..., None, :]
        diff[..., np.arange(degree), np.arange(degree)] = 1.0
        step = poly(z) / np.prod(diff, axis=-1)
        z = z - step
        if np.all(np.abs(step) <= tol * np.maximum(1.0, np.abs(z))):
            break
    return z


# comparison report ----------------------------------------------------


@dataclass(frozen=True)
class ReportRow:
    state: str
    closed_form: float
    oracle: float
    delta: float
    error: str = ""


def approximation_report(p: PotentialParams, ctx, states: Sequence[QuantumNumbers],
                         cfg: ApproximationConfig = ApproximationConfig(), potential: str = "gmp",
                         points: int = DEFAULT_POINTS) -> list[ReportRow]:
    """Closed-form level against the exact-centrifugal oracle, one row per state."""
    rows = []
    for q in states:
        try:
            if isinstance(ctx, NonRelContext):
                if potential == "gmp":
                    closed = gmp_spectra.nonrel_energy(p, ctx, q.n, q.l, cfg)
                else:
                    closed = kratzer_spectra.kratzer_nonrel_energy(p, ctx, q.n, q.l)
                exact = nonrel_oracle_energy(p, ctx, q.n, q.l, potential, closed, points=points)
            else:
                if potential == "gmp":
                    solver = gmp_spectra.spin_energy if q.symmetry is Symmetry.SPIN else gmp_spectra.pseudospin_energy
                    closed = solver(p, ctx, q, cfg).energy
                else:
                    solver = (kratzer_spectra.kratzer_spin_energy if q.symmetry is Symmetry.SPIN
                              else kratzer_spectra.kratzer_pseudospin_energy)
                    closed = solver(p, ctx, q).energy
                exact = dirac_effective_eigenvalue(p, ctx, q, closed, potential, points=points)
            rows.append(ReportRow(q.label(), closed, exact, abs(closed - exact)))
        except GMPError as err:
            rows.append(ReportRow(q.label(), math.nan, math.nan, math.nan, str(err)))
    return rows
