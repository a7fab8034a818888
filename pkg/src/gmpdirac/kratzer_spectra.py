"""Kratzer-limit energies and the closed-form cubic/quartic solvers.

For the Kratzer potential the relativistic spin condition is algebraic;
clearing the square root gives a quartic in E. The quartic is solved by
the Ferrari reduction to a resolvent cubic, and the cubic by Cardano's
three-case formulas.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._roots import scan_roots
from .errors import AmbiguityError, DegenerateDegreeError, DomainError, NoBoundStateError
from .gmp_spectra import WINDOW_OFFSET, EnergySolution
from .model import NonRelContext, PotentialParams, QuantumNumbers, RelativisticContext, Symmetry


@dataclass(frozen=True)
class KratzerAuxiliary:
    """gamma, K and the signed decay constant epsilon (inverse length).

    For pseudospin solutions these are the tilde quantities and
    ``N_kappa`` is 1 - 2 kappa.
    """

    gamma: float
    epsilon: float
    K: float
    q: float
    N_n: int
    N_kappa: int
    quartic_gap: float = math.nan


@dataclass(frozen=True)
class QuarticCoefficients:
    a4: float
    a3: float
    a2: float
    a1: float
    a0: float

    def as_array(self) -> np.ndarray:
        return np.array([self.a4, self.a3, self.a2, self.a1, self.a0])

    def __call__(self, x):
        return (((self.a4 * x + self.a3) * x + self.a2) * x + self.a1) * x + self.a0


# cubic ---------------------------------------------------------------

CUBIC_REAL3 = "three-real"
CUBIC_REAL1 = "one-real"
CUBIC_TRIPLE = "triple"


def cubic_case(a: float, b: float, c: float, d: float) -> tuple[str, float, float, float]:
    """Return (case, f, g, h) for a x^3 + b x^2 + c x + d."""
    if a == 0:
        raise DegenerateDegreeError("cubic leading coefficient is zero")
    f = c / a - b * b / (3 * a * a)
    g = 2 * b**3 / (27 * a**3) - b * c / (3 * a * a) + d / a
    h = g * g / 4 + f**3 / 27
    scale = max(abs(b / a), abs(c / a) ** 0.5, abs(d / a) ** (1 / 3), 1e-300)
    tiny = 64 * np.finfo(float).eps
    if abs(f) <= tiny * scale**2 and abs(g) <= tiny * scale**3:
        return CUBIC_TRIPLE, f, g, h
    return (CUBIC_REAL3 if h < 0 else CUBIC_REAL1), f, g, h


def solve_cubic(a: float, b: float, c: float, d: float) -> tuple[complex, complex, complex]:
    case, f, g, h = cubic_case(a, b, c, d)
    shift = -b / (3 * a)
    if case == CUBIC_TRIPLE:
        x = -float(np.cbrt(d / a))
        return complex(x), complex(x), complex(x)
    if case == CUBIC_REAL3:
        s = math.sqrt(g * g / 4 - h)
        k = math.acos(max(-1.0, min(1.0, -g / (2 * s))))
        j = s ** (1 / 3)
        H, G = math.cos(k / 3), math.sqrt(3) * math.sin(k / 3)
        return complex(2 * j * H + shift), complex(-j * (H + G) + shift), complex(-j * (H - G) + shift)
    # take the cube root of the branch without cancellation, then S U = -f/3
    t = -g / 2 - math.copysign(math.sqrt(h), g)
    S = float(np.cbrt(t))
    U = -f / (3 * S) if S != 0 else 0.0
    re_part = -(S + U) / 2 + shift
    im_part = math.sqrt(3) / 2 * (S - U)
    return complex(S + U + shift), complex(re_part, im_part), complex(re_part, -im_part)


# quartic -------------------------------------------------------------


def depressed_quartic(qc: QuarticCoefficients) -> tuple[float, float, float, float]:
    """(u, v, w, shift) with x = y + shift turning the monic quartic into y^4 + u y^2 + v y + w."""
    if qc.a4 == 0:
        raise DegenerateDegreeError("quartic leading coefficient is zero")
    A3, A2, A1, A0 = qc.a3 / qc.a4, qc.a2 / qc.a4, qc.a1 / qc.a4, qc.a0 / qc.a4
    u = A2 - 3 * A3**2 / 8
    v = A1 + A3**3 / 8 - A3 * A2 / 2
    w = A0 - 3 * A3**4 / 256 + A3**2 * A2 / 16 - A3 * A1 / 4
    return u, v, w, -A3 / 4


def _newton_polish(qc: QuarticCoefficients, x: complex, scale: float, steps: int = 3) -> complex:
    """A few Newton steps; a step longer than sqrt(eps) * scale would jump to another root."""
    deriv = np.polyder(qc.as_array())
    best, best_res = x, abs(qc(x))
    max_step = 1.5e-8 * max(scale, abs(x))
    with np.errstate(all="ignore"):
        for _ in range(steps):
            dp = np.polyval(deriv, x)
            if dp == 0 or not np.isfinite(dp):
                break
            step = qc(x) / dp
            if not abs(step) <= max_step:
                break
            x = x - step
            res = abs(qc(x))
            if not res < best_res:
                break
            best, best_res = x, res
    return best


def _monic_scale(qc: QuarticCoefficients) -> float:
    """Root-magnitude scale max |a_k/a4|^{1/(4-k)}, used to keep the resolvent O(1)."""
    ratios = (qc.a3 / qc.a4, qc.a2 / qc.a4, qc.a1 / qc.a4, qc.a0 / qc.a4)
    return max(abs(c) ** (1.0 / (k + 1)) for k, c in enumerate(ratios))


def _ferrari(u: float, v: float, w: float) -> list[complex]:
    scale = max(abs(u), abs(v) ** (2 / 3), abs(w) ** 0.5, 1e-300)
    if abs(v) > 16 * np.finfo(float).eps * scale**1.5:
        cubic = (1.0, u / 2, (u * u - 4 * w) / 16, -v * v / 64)
        case = cubic_case(*cubic)[0]
        ys = solve_cubic(*cubic)
        if case == CUBIC_REAL1:
            y2, y3 = ys[1], ys[2]
        else:
            y2, y3 = sorted(ys, key=abs)[1:]
        p, q = cmath.sqrt(y2), cmath.sqrt(y3)
        if p * q != 0:
            r = -v / (8 * p * q)
            return [p + q + r, p - q - r, -p + q - r, -p - q + r]
    # biquadratic: y^4 + u y^2 + w
    disc = cmath.sqrt(u * u - 4 * w)
    z1, z2 = (-u + disc) / 2, (-u - disc) / 2
    return [cmath.sqrt(z1), -cmath.sqrt(z1), cmath.sqrt(z2), -cmath.sqrt(z2)]


def solve_quartic(qc: QuarticCoefficients, polish: bool = True) -> tuple[complex, complex, complex, complex]:
    """Four roots via the resolvent cubic y^3 + u/2 y^2 + (u^2-4w)/16 y - v^2/64.

    Two resolvent roots y2, y3 are chosen (the two non-zero ones when all
    three are real, the complex pair otherwise) and recombined as
    +-sqrt(y2) +- sqrt(y3) + r with r = -v/(8 sqrt(y2) sqrt(y3)). The
    variable is first rescaled so that the roots are of order one.
    """
    if qc.a4 == 0:
        raise DegenerateDegreeError("quartic leading coefficient is zero")
    s = _monic_scale(qc)
    if s == 0:
        return (0j, 0j, 0j, 0j)
    scaled = QuarticCoefficients(1.0, qc.a3 / (qc.a4 * s), qc.a2 / (qc.a4 * s**2),
                                 qc.a1 / (qc.a4 * s**3), qc.a0 / (qc.a4 * s**4))
    u, v, w, shift = depressed_quartic(scaled)
    roots = [(z + shift) * s for z in _ferrari(u, v, w)]
    if polish:
        roots = [_newton_polish(qc, z, s) for z in roots]
    return tuple(roots)


def _quartic_terms(qq, D, M, C, Nn, Nk):
    dn = Nn**2 - Nk**2
    a4 = qq**2 * D**2
    a3 = 2 * qq * D * (Nk**2 - Nn**2 - qq * D * C)
    a2 = dn**2 + 2 * qq * D * (D + M + C) * dn + 4 * qq * D**2 * Nn**2 + qq**2 * D**2 * (C**2 + 2 * M * C - 2 * M**2)
    a1 = (2 * qq**2 * D**2 * M * C * (M - C) - 2 * (D + M) * dn**2
          + 2 * qq * D * (M**2 - 2 * M * C - D * C) * dn - 4 * qq * D**2 * (D + C) * Nn**2)
    a0 = ((qq * D * M**2 - (D + M) * dn) ** 2 - 4 * qq * D**2 * (M - C) * (D + M) * Nn**2
          + qq**2 * D**2 * M**2 * C * (C - 2 * M) + 2 * qq * D * M * C * (D + M) * dn)
    return a4, a3, a2, a1, a0


def build_quartic_coefficients(p: PotentialParams, ctx: RelativisticContext, q: QuantumNumbers) -> QuarticCoefficients:
    """Quartic in E whose roots include the Kratzer level.

    Pseudospin coefficients come from the spin ones under
    kappa -> kappa-1, D -> -D, C -> -C, E -> -E.
    """
    qq = (2 * p.r_e / ctx.hc) ** 2
    Nn = 2 * q.n + 1
    if q.symmetry is Symmetry.PSEUDOSPIN:
        terms = _quartic_terms(qq, -p.D, ctx.Mc2, -ctx.C_sym, Nn, 2 * q.kappa - 1)
        terms = tuple(t * (-1) ** k for t, k in zip(terms, (4, 3, 2, 1, 0)))
    else:
        terms = _quartic_terms(qq, p.D, ctx.Mc2, ctx.C_sym, Nn, 2 * q.kappa + 1)
    return QuarticCoefficients(*terms)


# energies ------------------------------------------------------------


def _spin_parts(E, p, ctx, q):
    qq = (2 * p.r_e / ctx.hc) ** 2
    X = ctx.Mc2 + E - ctx.C_sym
    nk2 = (2 * q.kappa + 1) ** 2
    with np.errstate(invalid="ignore"):
        gamma = np.sqrt(nk2 + qq * p.D * X)
    lhs = ctx.Mc2 - E + p.D
    rhs = qq * p.D**2 * X / (2 * q.n + 1 + gamma) ** 2
    K = (gamma - 1) / 2
    eps = p.r_e * X * p.D / (ctx.hc**2 * (q.n + K + 1))
    return lhs, rhs, gamma, K, eps, X


def _pseudo_parts(E, p, ctx, q):
    Xt = ctx.Mc2 - E + ctx.C_sym
    nk2 = (1 - 2 * q.kappa) ** 2
    with np.errstate(invalid="ignore"):
        gamma = np.sqrt(nk2 - 4 * p.D * p.r_e**2 * Xt / ctx.hc**2)
    K = (gamma - 1) / 2
    lhs = E * E - ctx.Mc2**2 - ctx.C_sym * (ctx.Mc2 + E)
    rhs = -p.D * Xt - (p.D * p.r_e * Xt / (q.n + K + 1)) ** 2 / ctx.hc**2
    eps = -p.r_e * Xt * p.D / (ctx.hc**2 * (q.n + K + 1))
    return lhs, rhs, gamma, K, eps, Xt


def _solve(parts, p, ctx, q, label, Nk):
    def residual(E):
        lhs, rhs, *_ = parts(E, p, ctx, q)
        return lhs - rhs

    accepted, rejected = [], []
    lo, hi = ctx.C_sym - ctx.Mc2 + WINDOW_OFFSET, ctx.Mc2 + p.D
    for root, bracket in scan_roots(residual, lo, hi):
        lhs, rhs, gamma, K, eps, X = (float(v[0]) for v in parts(np.array([root]), p, ctx, q))
        aux = KratzerAuxiliary(gamma, eps, K, (2 * p.r_e / ctx.hc) ** 2, 2 * q.n + 1, Nk)
        if abs(X) <= 1e-9 * max(1.0, ctx.Mc2, abs(root)):
            rejected.append((root, "trivial root of the linear factor"))
        elif not math.isfinite(gamma):
            rejected.append((root, "gamma is complex"))
        elif eps <= 0:
            rejected.append((root, "decay constant is not positive"))
        else:
            accepted.append(EnergySolution(root, lhs - rhs, lhs, bracket, aux))
    if not accepted:
        detail = "; ".join(f"E={e:.8g}: {why}" for e, why in rejected) or "no sign change in window"
        raise NoBoundStateError(f"no Kratzer {label} bound state for n={q.n}, kappa={q.kappa} ({detail})")
    if len(accepted) > 1:
        raise AmbiguityError(f"{len(accepted)} admissible Kratzer {label} roots", [s.energy for s in accepted])
    sol = accepted[0]
    roots = solve_quartic(build_quartic_coefficients(p, ctx, q))
    gap = min(abs(z - sol.energy) for z in roots) / max(1.0, abs(sol.energy))
    aux = KratzerAuxiliary(**{**sol.aux.__dict__, "quartic_gap": gap})
    return EnergySolution(sol.energy, sol.residual, sol.lhs, sol.bracket, aux)


def kratzer_spin_energy(p: PotentialParams, ctx: RelativisticContext, q: QuantumNumbers) -> EnergySolution:
    if q.symmetry is not Symmetry.SPIN:
        raise DomainError("kratzer_spin_energy needs spin quantum numbers")
    return _solve(_spin_parts, p, ctx, q, "spin", 2 * q.kappa + 1)


def kratzer_pseudospin_energy(p: PotentialParams, ctx: RelativisticContext, q: QuantumNumbers) -> EnergySolution:
    if q.symmetry is not Symmetry.PSEUDOSPIN:
        raise DomainError("kratzer_pseudospin_energy needs pseudospin quantum numbers")
    return _solve(_pseudo_parts, p, ctx, q, "pseudospin", 1 - 2 * q.kappa)


def kratzer_L(p: PotentialParams, ctx: NonRelContext, l: int) -> float:
    return 0.5 * (math.sqrt((1 + 2 * l) ** 2 + 8 * ctx.mu * p.D * p.r_e**2 / ctx.hbar**2) - 1)


def kratzer_nonrel_energy(p: PotentialParams, ctx: NonRelContext, n: int, l: int) -> float:
    if n < 0 or l < 0:
        raise DomainError("n and l must be non-negative")
    root = math.sqrt((1 + 2 * l) ** 2 + 8 * ctx.mu * p.D * p.r_e**2 / ctx.hbar**2)
    return p.D - (8 * ctx.mu / ctx.hbar**2) * (p.D * p.r_e / (1 + 2 * n + root)) ** 2
