"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import itertools
import time
from collections import defaultdict

import numpy as np
import pytest
from scipy.integrate import quad

from gmpdirac import gmp_spectra, kratzer_spectra as ks, tables, wavefunctions as W
from gmpdirac.errors import GMPError
from gmpdirac.kratzer_spectra import CUBIC_REAL1, CUBIC_REAL3, CUBIC_TRIPLE, QuarticCoefficients
from gmpdirac.model import NonRelContext, PotentialParams, QuantumNumbers, RelativisticContext, Symmetry, nonrel_label_to_nl
from gmpdirac.oracle import durand_kerner
from gmpdirac.potentials import ApproximationConfig

TABLE_CFG = ApproximationConfig(tables.TABLE_D0)


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {number:>2} {'PASS' if ok else 'FAIL'}: {detail}")
        return ok
    return emit


def table_check(table_id, budget, report, number):
    start = time.perf_counter()
    cells = tables.regenerate(table_id)
    elapsed = time.perf_counter() - start
    worst = max(abs(c.diff) for c in cells)
    bad = tables.failures(cells)
    ok = not bad and elapsed <= budget
    report(number, ok, f"table {table_id}: {len(cells)} cells, max |diff| {worst:.1e} "
                       f"(tol {tables.TOLERANCE[table_id]:.0e}), {elapsed:.2f} s (budget {budget} s)")
    assert not bad, [(c.state, c.alpha, c.r_e, c.C, c.diff) for c in bad]
    assert elapsed <= budget


def test_criterion_01_valence_table(report):
    table_check(5, 5.0, report, 1)


def test_criterion_02_hole_table(report):
    table_check(6, 10.0, report, 2)


def test_criterion_03_nonrel_gmp_table(report):
    table_check(3, 1.0, report, 3)


def test_criterion_04_nonrel_kratzer_table(report):
    table_check(4, 1.0, report, 4)


def test_criterion_05_oracle_within_printed_gaps(report):
    start = time.perf_counter()
    cells = tables.table3_oracle_check()
    elapsed = time.perf_counter() - start
    outside = [c for c in cells if not c.within]
    by_state = defaultdict(list)
    for c in cells:
        by_state[(c.state, c.r_e)].append(c)
    not_monotone = []
    for key, group in by_state.items():
        group.sort(key=lambda c: c.alpha)
        deltas = [c.delta for c in group]
        if any(b < a for a, b in zip(deltas, deltas[1:])):
            not_monotone.append((key, deltas))
    worst = max(cells, key=lambda c: c.delta / c.bound)
    ok = not outside and not not_monotone and elapsed <= 120
    report(5, ok, f"{len(cells)} cells within 5x printed gap; worst ratio {worst.delta / worst.bound:.2f} "
                  f"({worst.state} alpha={worst.alpha}); growth with alpha monotone in {len(by_state)} series; "
                  f"{elapsed:.1f} s")
    assert not outside
    assert not not_monotone
    assert elapsed <= 120


def test_criterion_06_degeneracy(report, valence_states, hole_states):
    mismatched = 0
    checked = 0
    for states, solver, residual, partner in (
            (valence_states, gmp_spectra.spin_energy, gmp_spectra.spin_residual, lambda k: -k - 1),
            (hole_states, gmp_spectra.pseudospin_energy, gmp_spectra.pseudospin_residual, lambda k: 1 - k)):
        for p, ctx, q, _ in states:
            other = QuantumNumbers(q.n, partner(q.kappa), q.symmetry)
            E = solver(p, ctx, q, TABLE_CFG).energy
            E2 = solver(p, ctx, other, TABLE_CFG).energy
            probes = [E, E + 0.37, E - 1.1]
            same_fn = all(residual(x, p, ctx, q, TABLE_CFG) == residual(x, p, ctx, other, TABLE_CFG) for x in probes)
            mismatched += (E != E2) or not same_fn
            checked += 1
    report(6, mismatched == 0, f"{checked} states: partner energies and residual functions bit-identical "
                               f"({mismatched} mismatches)")
    assert mismatched == 0


def test_criterion_07_limits(report):
    ctx = NonRelContext()
    worst_alpha = 0.0
    for row in tables.load_golden(4):
        n, l = nonrel_label_to_nl(row["state"])
        r_e = float(row["r_e"])
        a = gmp_spectra.nonrel_energy(PotentialParams(15, 1e-4, r_e), ctx, n, l)
        b = ks.kratzer_nonrel_energy(PotentialParams(15, 0.0, r_e), ctx, n, l)
        worst_alpha = max(worst_alpha, abs(a - b))
    M = 1e4
    worst_mass = 0.0
    for alpha, r_e in ((0.1, 0.4), (0.2, 0.8), (0.3, 1.0)):
        p = PotentialParams(15, alpha, r_e)
        for n, k in ((0, -1), (0, -2), (1, 1), (1, -3), (2, 2)):
            q = QuantumNumbers(n, k)
            E = gmp_spectra.spin_energy(p, RelativisticContext(M, 0.0), q).energy - M
            exact = gmp_spectra.nonrel_energy(p, NonRelContext(mu=M), n, q.l)
            worst_mass = max(worst_mass, abs(E - exact) / abs(exact))
    ok = worst_alpha <= 1e-3 and worst_mass <= 1e-3
    report(7, ok, f"alpha=1e-4 vs Kratzer over 70 cells: max |diff| {worst_alpha:.2e} (tol 1e-3); "
                  f"M=1e4 spin vs Schrodinger: max relative {worst_mass:.1e} (tol 1e-3)")
    assert worst_alpha <= 1e-3
    assert worst_mass <= 1e-3


def resolvent_case(c):
    u, v, w, _ = ks.depressed_quartic(QuarticCoefficients(*c))
    return ks.cubic_case(1.0, u / 2, (u * u - 4 * w) / 16, -v * v / 64)[0]


def best_match(found, expected):
    return min(max(abs(a - b) for a, b in zip(perm, expected)) for perm in itertools.permutations(found))


def test_criterion_08_quartic_solver(report):
    rng = np.random.default_rng(20261014)
    coeffs = rng.uniform(-100, 100, size=(10_000, 5))
    lead = coeffs[:, 0]
    coeffs[:, 0] = np.where(np.abs(lead) < 1, np.copysign(1.0, lead) + lead, lead)
    oracle_roots = durand_kerner(coeffs)
    worst_res = worst_agree = 0.0
    for c, ref in zip(coeffs, oracle_roots):
        qc = QuarticCoefficients(*c)
        roots = ks.solve_quartic(qc)
        norm = np.max(np.abs(c))
        size = max(1.0, max(abs(z) for z in roots))
        worst_res = max(worst_res, max(abs(qc(z)) for z in roots) / (norm * size**4))
        worst_agree = max(worst_agree, best_match(roots, ref) / size)
    constructed = {
        CUBIC_REAL3: (1, -10, 35, -50, 24),   # roots 1, 2, 3, 4
        CUBIC_REAL1: (1, -3, 3, -3, 2),       # (x^2 + 1)(x - 1)(x - 2)
        CUBIC_TRIPLE: (1, 0, -6, 8, -3),      # (x - 1)^3 (x + 3)
    }
    expected = {CUBIC_REAL3: [1, 2, 3, 4], CUBIC_REAL1: [1j, -1j, 1, 2], CUBIC_TRIPLE: [1, 1, 1, -3]}
    case_errors = {}
    for case, c in constructed.items():
        assert resolvent_case(c) == case
        case_errors[case] = best_match(ks.solve_quartic(QuarticCoefficients(*c)), expected[case])
    ok = worst_res <= 1e-9 and worst_agree <= 1e-8 and max(case_errors.values()) <= 1e-6
    report(8, ok, f"10^4 random quartics: residual/||c|| {worst_res:.1e} (tol 1e-9), "
                  f"oracle agreement {worst_agree:.1e} (tol 1e-8); resolvent cases "
                  + ", ".join(f"{k} {v:.0e}" for k, v in case_errors.items()))
    assert worst_res <= 1e-9
    assert worst_agree <= 1e-8
    assert max(case_errors.values()) <= 1e-6  # a triple root is only defined to about eps^(1/3)


def quad_norm(fn, r_max):
    return quad(lambda x: float(fn(np.array([x]))[0]) ** 2, 0, r_max, limit=400, epsabs=0, epsrel=1e-12)[0]


def test_criterion_09_normalization_and_nodes(report, valence_states, hole_states):
    worst, bad_nodes, count = 0.0, [], 0
    for p, ctx, q, _ in valence_states + hole_states:
        solver = gmp_spectra.spin_energy if q.symmetry is Symmetry.SPIN else gmp_spectra.pseudospin_energy
        E = solver(p, ctx, q, TABLE_CFG).energy
        wf = W.components(p, ctx, q, E, cfg=TABLE_CFG)
        fn = wf.upper_fn if wf.normalized == "F" else wf.lower_fn
        worst = max(worst, abs(quad_norm(fn, 2 * wf.grid[-1]) - 1))
        if W.count_nodes(wf.primary) != q.n:
            bad_nodes.append(q.label())
        count += 1
    nctx = NonRelContext()
    for row in tables.load_golden(3):
        if row["state"] not in ("2p", "3d"):
            continue
        n, l = nonrel_label_to_nl(row["state"])
        wf = W.nonrel_wavefunction(PotentialParams(15, float(row["alpha"]), float(row["r_e"])), nctx, n, l)
        worst = max(worst, abs(quad_norm(wf.upper_fn, 2 * wf.grid[-1]) - 1))
        if W.count_nodes(wf.F) != n:
            bad_nodes.append(row["state"])
        count += 1
    ok = worst <= 1e-8 and not bad_nodes
    report(9, ok, f"{count} states: closed-form norm vs quadrature max |1 - I| {worst:.1e} (tol 1e-8); "
                  f"node-count mismatches {len(bad_nodes)}")
    assert worst <= 1e-8
    assert not bad_nodes


def test_criterion_10_first_order_residual(report, valence_states, hole_states):
    """Measured at the default shift d0 = 1/12; fails for alpha = 0.3 and high-kappa states.

    The closed forms solve the second-order equation with the approximate
    centrifugal term, so the second first-order equation picks up exactly
    (hbar c / X) kappa(kappa+1) (approx - 1/r^2) F, which is not small at
    alpha = 0.3 or for large kappa. See test_dirac_residual_is_the_centrifugal_approximation_error.
    """
    results = []
    for p, ctx, q, _ in valence_states + hole_states:
        if q.n > 2:
            continue
        solver = gmp_spectra.spin_energy if q.symmetry is Symmetry.SPIN else gmp_spectra.pseudospin_energy
        E = solver(p, ctx, q).energy
        wf = W.components(p, ctx, q, E)
        results.append((W.dirac_system_residual(wf, p, ctx, q, E), q.label(), p.alpha, p.r_e, ctx.C_sym))
    kratzer = []
    kp = PotentialParams(15, 0.0, 0.4)
    for n, k in ((0, -1), (1, -2), (2, 1), (1, 2)):
        q = QuantumNumbers(n, k)
        E = ks.kratzer_spin_energy(kp, RelativisticContext(), q).energy
        wf = W.kratzer_spin_components(kp, RelativisticContext(), q, E)
        kratzer.append(W.dirac_system_residual(wf, kp, RelativisticContext(), q, E, "kratzer"))
    failing = [r for r in results if r[0] > 1e-5]
    worst = max(results)
    ok = not failing and max(kratzer) <= 1e-5
    alphas = sorted({r[2] for r in failing})
    report(10, ok, f"{len(results) - len(failing)}/{len(results)} GMP states with n <= 2 within 1e-5; "
                   f"worst {worst[0]:.1e} ({worst[1]} alpha={worst[2]}); failing alphas {alphas}; "
                   f"Kratzer max {max(kratzer):.1e}")
    assert max(kratzer) <= 1e-5
    assert not failing, f"{len(failing)} states exceed 1e-5; worst {worst}"
