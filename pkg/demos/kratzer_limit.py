"""The Kratzer potential as the alpha -> 0 limit.

The relativistic Kratzer levels come from the roots of a quartic in E. This
script prints the quartic for one state, its four roots, and how the
generalized Morse levels approach the Kratzer level as alpha shrinks.
"""

from gmpdirac import gmp_spectra, kratzer_spectra
from gmpdirac.model import PotentialParams, QuantumNumbers, RelativisticContext


def main():
    ctx = RelativisticContext(M=1.0)
    q = QuantumNumbers(1, -2)
    kp = PotentialParams(15.0, 0.0, 0.4)
    qc = kratzer_spectra.build_quartic_coefficients(kp, ctx, q)
    print(f"quartic for {q.label()}: " + ", ".join(f"{c:.6g}" for c in qc.as_array()))
    for z in kratzer_spectra.solve_quartic(qc):
        print(f"  root {z.real:+.9f} {z.imag:+.2e}i   |P(root)| = {abs(qc(z)):.1e}")
    exact = kratzer_spectra.kratzer_spin_energy(kp, ctx, q).energy
    print(f"Kratzer level: {exact:.9f}")
    for alpha in (0.1, 0.01, 0.001, 0.0001):
        E = gmp_spectra.spin_energy(PotentialParams(15.0, alpha, 0.4), ctx, q).energy
        print(f"  alpha = {alpha:<6}  E = {E:.9f}   difference {E - exact:+.2e}")


if __name__ == "__main__":
    main()
