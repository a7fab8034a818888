"""Gamma, Pochhammer, terminating 2F1, Jacobi and Laguerre polynomials.

Polynomials accept scalars or numpy arrays for the argument. Jacobi and
Laguerre use the three-term recurrence in the degree; the explicit sums are
kept as independent cross-checks.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from scipy import special

from .errors import DomainError


def ln_gamma(x: float) -> float:
    if not x > 0:
        raise DomainError(f"ln_gamma needs x > 0, got {x}")
    return math.lgamma(x)


def pochhammer(a: float, n: int) -> float:
    out = 1.0
    for k in range(n):
        out *= a + k
    return out


def ln_pochhammer(a: float, n: int) -> float:
    """log (a)_n for a > 0."""
    return ln_gamma(a + n) - ln_gamma(a)


def gauss_2f1_terminating(n: int, b: float, c: float, z):
    """2F1(-n, b; c; z) as a finite sum of n+1 terms."""
    if n < 0:
        raise DomainError("degree must be non-negative")
    for k in range(n):
        if c + k == 0:
            raise DomainError(f"c={c} hits a pole of the series")
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    for k in range(n):
        term = term * ((-n + k) * (b + k) / ((c + k) * (k + 1))) * z
        total = total + term
    return total if total.ndim else float(total)


def jacobi_poly(n: int, a: float, b: float, x):
    """P_n^{(a,b)}(x) by the standard three-term recurrence."""
    if n < 0:
        raise DomainError("degree must be non-negative")
    if not (a > -1 and b > -1):
        raise DomainError(f"Jacobi parameters must exceed -1, got a={a}, b={b}")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev if x.ndim else float(p_prev)
    p = 0.5 * (a - b) + 0.5 * (a + b + 2) * x
    for k in range(2, n + 1):
        s = 2 * k + a + b
        c1 = 2 * k * (k + a + b) * (s - 2)
        c2 = (s - 1) * (a * a - b * b)
        c3 = (s - 2) * (s - 1) * s
        c4 = 2 * (k + a - 1) * (k + b - 1) * s
        p, p_prev = ((c2 + c3 * x) * p - c4 * p_prev) / c1, p
    return p if x.ndim else float(p)


def _2f1_exact(n: int, b: Fraction, c: Fraction, z: Fraction) -> Fraction:
    term = total = Fraction(1)
    for k in range(n):
        term = term * (k - n) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
    return total


def jacobi_via_2f1(n: int, a: float, b: float, x):
    """P_n^{(a,b)}(x) = (a+1)_n/n! 2F1(-n, n+a+b+1; a+1; (1-x)/2).

    Cross-check for ``jacobi_poly``. The alternating series cancels badly
    in floating point once n grows, so it is summed in exact rational
    arithmetic from the (exactly representable) float inputs.
    """
    x = np.asarray(x, dtype=float)
    fa, fb = Fraction(a), Fraction(b)
    scale = Fraction(1)
    for k in range(n):
        scale *= (fa + 1 + k) / (k + 1)
    out = np.array([float(scale * _2f1_exact(n, n + fa + fb + 1, fa + 1, (1 - Fraction(xi)) / 2))
                    for xi in x.ravel()]).reshape(x.shape)
    return out if out.ndim else float(out)


def laguerre_poly(n: int, beta: float, x):
    """Associated Laguerre L_n^{(beta)}(x) by recurrence."""
    if n < 0:
        raise DomainError("degree must be non-negative")
    if not beta > -1:
        raise DomainError(f"Laguerre parameter must exceed -1, got {beta}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("Laguerre argument must be non-negative")
    l_prev = np.ones_like(x)
    if n == 0:
        return l_prev if x.ndim else float(l_prev)
    cur = 1 + beta - x
    for k in range(1, n):
        cur, l_prev = ((2 * k + 1 + beta - x) * cur - (k + beta) * l_prev) / (k + 1), cur
    return cur if x.ndim else float(cur)


def _laguerre_exact(n: int, beta: Fraction, x: Fraction) -> Fraction:
    total = Fraction(0)
    for k in range(n + 1):
        binom = Fraction(1)
        for j in range(1, n - k + 1):
            binom *= (beta + k + j) / j
        total += (-1) ** k * binom * x**k / math.factorial(k)
    return total


def laguerre_series(n: int, beta: float, x):
    """Explicit sum of (-1)^k C(n+beta, n-k) x^k / k!, summed exactly from the float inputs.

    The alternating terms cancel badly in floating point, so this serves
    as the reference for the recurrence.
    """
    x = np.asarray(x, dtype=float)
    fb = Fraction(float(beta))
    out = np.array([float(_laguerre_exact(n, fb, Fraction(float(xi)))) for xi in x.ravel()]).reshape(x.shape)
    return out if out.ndim else float(out)


def jacobi_norm_sq(n: int, a: float, b: float) -> float:
    """Integral over [-1, 1] of (1-x)^a (1+x)^b P_n^2."""
    ln = (
        (a + b + 1) * math.log(2)
        + ln_gamma(n + a + 1)
        + ln_gamma(n + b + 1)
        - math.log(2 * n + a + b + 1)
        - ln_gamma(n + a + b + 1)
        - ln_gamma(n + 1)
    )
    return math.exp(ln)
