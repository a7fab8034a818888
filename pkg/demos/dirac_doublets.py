"""Spin and pseudospin doublets of the generalized Morse potential.

Solves a few valence (spin symmetry) and hole (pseudospin symmetry) levels,
shows that the partner states kappa <-> -kappa-1 and kappa <-> 1-kappa land on
the same energy, and that their upper radial components coincide while the
lower ones do not.
"""

import numpy as np

from gmpdirac import gmp_spectra, wavefunctions
from gmpdirac.model import PotentialParams, QuantumNumbers, RelativisticContext, Symmetry


def main():
    p = PotentialParams(D=15.0, alpha=0.1, r_e=0.4)
    ctx = RelativisticContext(M=1.0)

    print("valence doublets (spin symmetry, C_s = 0)")
    for n, kappa in [(0, -2), (0, -3), (1, -2)]:
        a = gmp_spectra.spin_energy(p, ctx, QuantumNumbers(n, kappa))
        b = gmp_spectra.spin_energy(p, ctx, QuantumNumbers(n, -kappa - 1))
        print(f"  {QuantumNumbers(n, kappa).label():>7} {a.energy:.7f}   "
              f"{QuantumNumbers(n, -kappa - 1).label():>7} {b.energy:.7f}")

    print("hole doublets (pseudospin symmetry, C_ps = 5)")
    hole_ctx = RelativisticContext(M=1.0, C_sym=5.0)
    for n, kappa in [(1, -1), (1, -2)]:
        q = QuantumNumbers(n, kappa, Symmetry.PSEUDOSPIN)
        partner = QuantumNumbers(n, 1 - kappa, Symmetry.PSEUDOSPIN)
        a = gmp_spectra.pseudospin_energy(p, hole_ctx, q)
        b = gmp_spectra.pseudospin_energy(p, hole_ctx, partner)
        print(f"  {q.label():>7} {a.energy:.7f}   {partner.label():>7} {b.energy:.7f}")

    q1, q2 = QuantumNumbers(0, 1), QuantumNumbers(0, -2)
    E = gmp_spectra.spin_energy(p, ctx, q1).energy
    w1 = wavefunctions.gmp_spin_components(p, ctx, q1, E)
    w2 = wavefunctions.gmp_spin_components(p, ctx, q2, E)
    r = np.linspace(0.2, 1.2, 6)
    print(f"radial components of the {q1.label()} / {q2.label()} pair at E = {E:.7f}")
    print("      r        F(0p1/2)    F(0p3/2)    G(0p1/2)    G(0p3/2)")
    for x, f1, f2, g1, g2 in zip(r, w1.upper_fn(r), w2.upper_fn(r), w1.lower_fn(r), w2.lower_fn(r)):
        print(f"  {x:6.2f}  {f1:10.6f}  {f2:10.6f}  {g1:10.6f}  {g2:10.6f}")
    print(f"norm of F: {w1.norm_check():.10f}")


if __name__ == "__main__":
    main()
