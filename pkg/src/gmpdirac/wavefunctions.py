"""Normalized radial spinor components.

Every family is built from one of two closed forms. The GMP form in
z = exp(-alpha r) is ``N z^eps (1-z)^delta 2F1(-n, n+2eps+2delta; 1+2eps; z)``.
The Kratzer form is ``N r^{K+1} exp(-eps r) L_n^{(2K+1)}(2 eps r)``. The
companion component follows from the first-order Dirac equations.
Normalization constants are handled in log space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import simpson
from scipy.optimize import brentq

from . import gmp_spectra, kratzer_spectra
from .errors import DomainError, NoBoundStateError, SingularityError
from .model import NonRelContext, PotentialParams, QuantumNumbers, RelativisticContext, Symmetry
from .potentials import ApproximationConfig, gmp, kratzer
from .specfun import jacobi_poly, laguerre_poly, ln_gamma, ln_pochhammer

GRID_POINTS = 4000
GRID_R_MIN = 1e-4
TAIL = 1e-14


@dataclass(frozen=True)
class RadialWavefunction:
    grid: np.ndarray
    F: np.ndarray
    G: np.ndarray
    ln_norm: float
    family: str
    normalized: str  # "F" or "G"
    upper_fn: Callable = field(repr=False, compare=False)
    lower_fn: Callable = field(repr=False, compare=False)

    @property
    def norm_constant(self) -> float:
        return math.exp(self.ln_norm)

    @property
    def primary(self) -> np.ndarray:
        return self.F if self.normalized == "F" else self.G

    def norm_check(self) -> float:
        """Composite Simpson estimate of the normalized component's integral of squares."""
        return float(simpson(self.primary**2, x=self.grid))


# building blocks -------------------------------------------------------


def ln_norm_gmp(n: int, eps: float, delta: float, alpha: float) -> float:
    """log N for N z^eps (1-z)^delta 2F1(-n, n+2eps+2delta; 1+2eps; z) in r."""
    return 0.5 * (
        math.log(2 * alpha * eps * (n + eps + delta) / (n + delta))
        + ln_gamma(n + 2 * eps + 1)
        + ln_gamma(n + 2 * eps + 2 * delta)
        - ln_gamma(n + 1)
        - ln_gamma(n + 2 * delta)
        - 2 * ln_gamma(2 * eps + 1)
    )


def ln_norm_kratzer(n: int, eps: float, K: float) -> float:
    """log N for N r^{K+1} e^{-eps r} L_n^{(2K+1)}(2 eps r)."""
    return (K + 1) * math.log(2 * eps) + 0.5 * (
        math.log(eps) + ln_gamma(n + 1) - math.log(n + K + 1) - ln_gamma(n + 2 * K + 2)
    )


def _hyp(n: int, eps: float, delta: float, z):
    """2F1(-n, n+2eps+2delta; 1+2eps; z) through the Jacobi polynomial."""
    if n == 0:
        return np.ones_like(z)
    a, b = 2 * eps, 2 * delta - 1
    scale = math.exp(ln_gamma(n + 1) - ln_pochhammer(a + 1, n))
    return scale * jacobi_poly(n, a, b, 1 - 2 * z)


class _GMPForm:
    """u(r) = N z^eps (1-z)^delta H(z) and its r-derivative."""

    def __init__(self, n, eps, delta, alpha):
        if not eps > 0:
            raise NoBoundStateError(f"decay exponent must be positive, got {eps}")
        self.n, self.eps, self.delta, self.alpha = n, eps, delta, alpha
        self.ln_norm = ln_norm_gmp(n, eps, delta, alpha)

    def _envelope(self, r):
        ar = self.alpha * r
        return np.exp(self.ln_norm - self.eps * ar + self.delta * np.log(-np.expm1(-ar)))

    def value(self, r):
        r = np.asarray(r, dtype=float)
        return self._envelope(r) * _hyp(self.n, self.eps, self.delta, np.exp(-self.alpha * r))

    def log_derivative_part(self, r):
        """Coefficient c(r) in u' = c(r) u + (hypergeometric-derivative term)."""
        r = np.asarray(r, dtype=float)
        ar = self.alpha * r
        return self.alpha * self.delta / np.expm1(ar) - self.alpha * self.eps

    def hyp_derivative_term(self, r):
        r = np.asarray(r, dtype=float)
        n = self.n
        if n == 0:
            return np.zeros_like(r)
        z = np.exp(-self.alpha * r)
        pref = n * self.alpha * (n + 2 * self.eps + 2 * self.delta) / (1 + 2 * self.eps)
        shifted = _hyp(n - 1, self.eps + 0.5, self.delta + 0.5, z)
        return pref * z * self._envelope(r) * shifted

    def derivative(self, r):
        return self.log_derivative_part(r) * self.value(r) + self.hyp_derivative_term(r)


class _KratzerForm:
    def __init__(self, n, eps, K):
        if not eps > 0:
            raise NoBoundStateError(f"decay constant must be positive, got {eps}")
        self.n, self.eps, self.K = n, eps, K
        self.ln_norm = ln_norm_kratzer(n, eps, K)

    def _envelope(self, r):
        return np.exp(self.ln_norm + (self.K + 1) * np.log(r) - self.eps * r)

    def value(self, r):
        r = np.asarray(r, dtype=float)
        return self._envelope(r) * laguerre_poly(self.n, 2 * self.K + 1, 2 * self.eps * r)

    def log_derivative_part(self, r):
        return (self.K + 1) / np.asarray(r, dtype=float) - self.eps

    def hyp_derivative_term(self, r):
        r = np.asarray(r, dtype=float)
        if self.n == 0:
            return np.zeros_like(r)
        return -2 * self.eps * self._envelope(r) * laguerre_poly(self.n - 1, 2 * self.K + 2, 2 * self.eps * r)

    def derivative(self, r):
        return self.log_derivative_part(r) * self.value(r) + self.hyp_derivative_term(r)


def _companion(form, kappa_sign_term: float, denom: float):
    """Callable for (1/denom)(d/dr + kappa_sign_term/r) applied to ``form``."""
    if denom == 0:
        raise SingularityError("component reconstruction denominator vanishes")

    def fn(r):
        r = np.asarray(r, dtype=float)
        return ((form.log_derivative_part(r) + kappa_sign_term / r) * form.value(r) + form.hyp_derivative_term(r)) / denom

    return fn


def _decay_radius(power: float, rate: float) -> float:
    """Smallest r past the peak of r^power e^{-rate r} where it falls below TAIL of the peak."""
    power = max(power, 1e-12)
    peak = power / rate

    def drop(r):
        return power * math.log(r / peak) - rate * (r - peak) - math.log(TAIL)

    hi = peak + 1.0 / rate
    while drop(hi) > 0:
        hi *= 2
    return brentq(drop, peak, hi)


def default_grid(power: float, rate: float, n_points: int = GRID_POINTS) -> np.ndarray:
    if n_points < 2:
        raise DomainError("a radial grid needs at least two points")
    return np.geomspace(GRID_R_MIN, _decay_radius(power, rate), n_points)


def _build(form, companion, grid, power, rate, family, normalized_upper: bool):
    if grid is None:
        grid = default_grid(power, rate)
    grid = np.asarray(grid, dtype=float)
    if grid.size and (np.any(grid <= 0) or np.any(np.diff(grid) <= 0)):
        raise DomainError("grid must be positive and strictly increasing")
    main = form.value
    upper, lower = (main, companion) if normalized_upper else (companion, main)
    return RadialWavefunction(
        grid, upper(grid), lower(grid), form.ln_norm, family,
        "F" if normalized_upper else "G", upper, lower,
    )


# families ------------------------------------------------------------------


def gmp_spin_components(p: PotentialParams, ctx: RelativisticContext, q: QuantumNumbers, E: float,
                        grid=None, cfg: ApproximationConfig = ApproximationConfig()) -> RadialWavefunction:
    lhs, _, X, _, _, _, delta = gmp_spectra._spin_parts(np.float64(E), p, ctx, q, cfg.d0)
    eps_sq = float(lhs) / (ctx.hc**2 * p.alpha**2)
    if eps_sq <= 0 or not math.isfinite(delta):
        raise NoBoundStateError(f"epsilon^2 = {eps_sq:.6g} is not positive at E = {E}")
    form = _GMPForm(q.n, math.sqrt(eps_sq), float(delta), p.alpha)
    lower = _companion(form, q.kappa, float(X) / ctx.hc)
    return _build(form, lower, grid, form.delta + q.n, form.eps * p.alpha, "gmp-spin", True)


def gmp_pseudospin_components(p: PotentialParams, ctx: RelativisticContext, q: QuantumNumbers, E: float,
                              grid=None, cfg: ApproximationConfig = ApproximationConfig()) -> RadialWavefunction:
    lhs, _, X, _, _, _, delta = gmp_spectra._pseudo_parts(np.float64(E), p, ctx, q, cfg.d0)
    eps_sq = float(lhs) / (ctx.hc**2 * p.alpha**2)
    if eps_sq <= 0 or not math.isfinite(delta):
        raise NoBoundStateError(f"epsilon~^2 = {eps_sq:.6g} is not positive or delta is complex at E = {E}")
    form = _GMPForm(q.n, math.sqrt(eps_sq), float(delta), p.alpha)
    upper = _companion(form, -q.kappa, float(X) / ctx.hc)
    return _build(form, upper, grid, form.delta + q.n, form.eps * p.alpha, "gmp-pseudospin", False)


def kratzer_spin_components(p: PotentialParams, ctx: RelativisticContext, q: QuantumNumbers, E: float,
                            grid=None) -> RadialWavefunction:
    _, _, gamma, K, eps, X = (float(v) for v in kratzer_spectra._spin_parts(np.float64(E), p, ctx, q))
    if not math.isfinite(gamma):
        raise NoBoundStateError(f"gamma is complex at E = {E}")
    form = _KratzerForm(q.n, eps, K)
    lower = _companion(form, q.kappa, X / ctx.hc)
    return _build(form, lower, grid, K + 1 + q.n, eps, "kratzer-spin", True)


def kratzer_pseudospin_components(p: PotentialParams, ctx: RelativisticContext, q: QuantumNumbers, E: float,
                                  grid=None) -> RadialWavefunction:
    _, _, gamma, K, eps, X = (float(v) for v in kratzer_spectra._pseudo_parts(np.float64(E), p, ctx, q))
    if not math.isfinite(gamma):
        raise NoBoundStateError(f"gamma~ is complex at E = {E}")
    form = _KratzerForm(q.n, eps, K)
    upper = _companion(form, -q.kappa, X / ctx.hc)
    return _build(form, upper, grid, K + 1 + q.n, eps, "kratzer-pseudospin", False)


def _no_lower(r):
    return np.zeros_like(np.asarray(r, dtype=float))


def nonrel_wavefunction(p: PotentialParams, ctx: NonRelContext, n: int, l: int, grid=None) -> RadialWavefunction:
    """Schrodinger radial function; alpha = 0 selects the Kratzer form."""
    if n < 0 or l < 0:
        raise DomainError("n and l must be non-negative")
    if p.alpha == 0:
        L = kratzer_spectra.kratzer_L(p, ctx, l)
        eps = 2 * ctx.mu * p.D * p.r_e / (ctx.hbar**2 * (n + L + 1))
        form = _KratzerForm(n, eps, L)
        return _build(form, _no_lower, grid, L + 1 + n, eps, "kratzer-nonrel", True)
    aux = gmp_spectra.nonrel_aux(p, ctx, n, l)
    if aux.eta <= 0:
        raise NoBoundStateError(f"eta = {aux.eta:.6g} is not positive for n={n}, l={l}")
    form = _GMPForm(n, aux.eta, aux.delta, p.alpha)
    return _build(form, _no_lower, grid, aux.delta + n, aux.eta * p.alpha, "gmp-nonrel", True)


def s_wave_components(p: PotentialParams, ctx: RelativisticContext, n: int, mode: Symmetry, E: float,
                      grid=None) -> RadialWavefunction:
    """kappa = -1 (spin) or kappa = +1 (pseudospin) with the symmetry constant zero.

    Written without any centrifugal terms: eta = (2+b) b nu^2/(2(n+delta)) -/+ (n+delta)/2.
    """
    if ctx.C_sym != 0:
        raise DomainError("s-wave forms assume a vanishing symmetry constant")
    hc2a2 = ctx.hc**2 * p.alpha**2
    if mode is Symmetry.SPIN:
        X = ctx.Mc2 + E
        nu_sq = X * p.D / hc2a2
        delta = 0.5 * (1 + math.sqrt(1 + 4 * p.b**2 * nu_sq))
        eta = (2 + p.b) * p.b * nu_sq / (2 * (n + delta)) - (n + delta) / 2
        form = _GMPForm(n, eta, delta, p.alpha)
        other = _companion(form, -1.0, X / ctx.hc)
        return _build(form, other, grid, delta + n, eta * p.alpha, "gmp-spin", True)
    if mode is Symmetry.PSEUDOSPIN:
        X = ctx.Mc2 - E
        nu_sq = X * p.D / hc2a2
        delta = 0.5 * (1 + math.sqrt(1 - 4 * p.b**2 * nu_sq))
        eta = -((2 + p.b) * p.b * nu_sq / (2 * (n + delta)) + (n + delta) / 2)
        form = _GMPForm(n, eta, delta, p.alpha)
        other = _companion(form, -1.0, X / ctx.hc)
        return _build(form, other, grid, delta + n, eta * p.alpha, "gmp-pseudospin", False)
    raise DomainError("s_wave_components needs SPIN or PSEUDOSPIN")


def components(p: PotentialParams, ctx: RelativisticContext, q: QuantumNumbers, E: float, potential: str = "gmp",
               grid=None, cfg: ApproximationConfig = ApproximationConfig()) -> RadialWavefunction:
    """Dispatch on symmetry and potential family."""
    spin = q.symmetry is Symmetry.SPIN
    if potential == "gmp":
        fn = gmp_spin_components if spin else gmp_pseudospin_components
        return fn(p, ctx, q, E, grid, cfg)
    fn = kratzer_spin_components if spin else kratzer_pseudospin_components
    return fn(p, ctx, q, E, grid)


# diagnostics ------------------------------------------------------------


def count_nodes(values, rel_floor: float = 1e-10) -> int:
    """Sign changes of sampled values, ignoring samples below rel_floor * max."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return 0
    keep = values[np.abs(values) > rel_floor * np.max(np.abs(values))]
    return int(np.count_nonzero(np.signbit(keep[1:]) != np.signbit(keep[:-1])))


def dirac_system_residual(wf: RadialWavefunction, p: PotentialParams, ctx: RelativisticContext, q: QuantumNumbers,
                          E: float, potential: str = "gmp", r=None, step: float = 1e-3) -> float:
    """max over r of the first-order Dirac residuals, relative to max(|F|, |G|).

    (d/dr + kappa/r) F - (Mc^2 + E - Delta) G and
    (d/dr - kappa/r) G - (Mc^2 - E + Sigma) F, derivatives by a five-point stencil.
    """
    V = gmp if potential == "gmp" else kratzer
    if r is None:
        r = wf.grid[(wf.grid > 20 * step) & (wf.grid < wf.grid[-1] - 20 * step)]
    r = np.asarray(r, dtype=float)

    def d(fn):
        h = step
        return (fn(r - 2 * h) - 8 * fn(r - h) + 8 * fn(r + h) - fn(r + 2 * h)) / (12 * h)

    F, G = wf.upper_fn(r), wf.lower_fn(r)
    if q.symmetry is Symmetry.SPIN:
        delta_pot, sigma_pot = ctx.C_sym, V(r, p)
    else:
        delta_pot, sigma_pot = V(r, p), ctx.C_sym
    res_a = d(wf.upper_fn) + q.kappa / r * F - (ctx.Mc2 + E - delta_pot) * G / ctx.hc
    res_b = d(wf.lower_fn) - q.kappa / r * G - (ctx.Mc2 - E + sigma_pot) * F / ctx.hc
    scale = max(np.max(np.abs(F)), np.max(np.abs(G)))
    return float(max(np.max(np.abs(res_a)), np.max(np.abs(res_b))) / scale)
