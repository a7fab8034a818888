import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gmpdirac import tables
from gmpdirac.errors import DomainError, NoBoundStateError
from gmpdirac.gmp_spectra import (nonrel_energy, pseudospin_energy, pseudospin_residual, spin_energy, spin_residual,
                                  swave_pseudospin_residual, swave_spin_residual)
from gmpdirac.model import (NonRelContext, PotentialParams, QuantumNumbers, RelativisticContext, Symmetry,
                            nonrel_label_to_nl)
from gmpdirac.potentials import ApproximationConfig

TABLE = ApproximationConfig(tables.TABLE_D0)
CTX = RelativisticContext()


def spin(n, k):
    return QuantumNumbers(n, k, Symmetry.SPIN)


def pseudo(n, k):
    return QuantumNumbers(n, k, Symmetry.PSEUDOSPIN)


@pytest.mark.parametrize("alpha, r_e, n, kappa, expected", [
    (0.1, 0.4, 0, -2, 5.5791076),
    (0.1, 0.4, 0, 1, 5.5791076),
    (0.3, 0.4, 1, -5, 10.7812870),
])
def test_spin_levels(alpha, r_e, n, kappa, expected):
    sol = spin_energy(PotentialParams(15, alpha, r_e), CTX, spin(n, kappa), TABLE)
    assert sol.energy == pytest.approx(expected, abs=1e-6)
    assert sol.accepted
    assert sol.aux.epsilon > 0 and sol.aux.delta1 >= 1


@pytest.mark.parametrize("alpha, r_e, C, n, kappa, expected", [
    (0.1, 0.4, 0.0, 1, -1, 7.1975980),
    (0.1, 0.4, 5.0, 1, -1, 9.0681299),
    (0.1, 0.8, -10.0, 2, -4, 5.2011464),
])
def test_pseudospin_levels(alpha, r_e, C, n, kappa, expected):
    sol = pseudospin_energy(PotentialParams(15, alpha, r_e), RelativisticContext(1.0, C), pseudo(n, kappa), TABLE)
    assert sol.energy == pytest.approx(expected, abs=1e-6)
    assert sol.aux.epsilon_tilde > 0


def test_default_d0_is_close_to_the_tables():
    sol = spin_energy(PotentialParams(15, 0.1, 0.4), CTX, spin(0, -2))
    assert sol.energy == pytest.approx(5.5791076, abs=1e-5)


def test_accepted_residual_is_small(valence_states, hole_states):
    for p, ctx, q, _ in valence_states + hole_states:
        solver = spin_energy if q.symmetry is Symmetry.SPIN else pseudospin_energy
        sol = solver(p, ctx, q, TABLE)
        assert abs(sol.residual) <= 1e-10 * max(1.0, abs(sol.lhs))


def test_wrong_symmetry_and_alpha():
    with pytest.raises(DomainError):
        spin_energy(PotentialParams(15, 0.1, 0.4), CTX, pseudo(0, 1))
    with pytest.raises(DomainError):
        pseudospin_energy(PotentialParams(15, 0.1, 0.4), CTX, spin(0, 1))
    with pytest.raises(DomainError):
        spin_energy(PotentialParams(15, 0.0, 0.4), CTX, spin(0, 1))


def test_no_bound_state_reports_reason():
    # a shallow well cannot hold a high radial excitation
    with pytest.raises(NoBoundStateError):
        spin_energy(PotentialParams(0.5, 0.3, 0.4), CTX, spin(8, -1))


def test_doublets_are_bit_identical(valence_states, hole_states):
    for p, ctx, q, _ in valence_states:
        a = spin_energy(p, ctx, q, TABLE).energy
        b = spin_energy(p, ctx, spin(q.n, -q.kappa - 1), TABLE).energy
        assert a == b
    for p, ctx, q, _ in hole_states:
        a = pseudospin_energy(p, ctx, q, TABLE).energy
        b = pseudospin_energy(p, ctx, pseudo(q.n, 1 - q.kappa), TABLE).energy
        assert a == b


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(-5, 5).filter(lambda k: k not in (0, -1)),
       st.floats(-2.0, 2.0), st.floats(0.05, 0.3))
def test_residual_symmetry(n, k, E, alpha):
    p = PotentialParams(15, alpha, 0.4)
    E = np.array([E + 3.0])
    assert spin_residual(E, p, CTX, spin(n, k)) == spin_residual(E, p, CTX, spin(n, -k - 1))
    if 1 - k != 0:
        assert pseudospin_residual(E, p, CTX, pseudo(n, k)) == pseudospin_residual(E, p, CTX, pseudo(n, 1 - k))


def test_swave_residuals():
    p = PotentialParams(15, 0.1, 0.4)
    for n in range(3):
        E = spin_energy(p, CTX, spin(n, -1)).energy
        assert abs(swave_spin_residual(p, CTX, n, E)) < 1e-9
        assert abs(swave_spin_residual(p, CTX, n, E + 0.1)) > 1e-3
        assert swave_spin_residual(p, CTX, n, E + 0.1) == pytest.approx(
            float(spin_residual(E + 0.1, p, CTX, spin(n, -1))), rel=1e-12)
    for n in range(1, 3):
        E = pseudospin_energy(p, CTX, pseudo(n, 1)).energy
        assert abs(swave_pseudospin_residual(p, CTX, n, E)) < 1e-9
        assert abs(swave_pseudospin_residual(p, CTX, n, E + 0.1)) > 1e-3


@pytest.mark.parametrize("alpha, r_e, n, l, expected", [(0.05, 0.4, 0, 1, 7.86080), (0.10, 0.8, 1, 4, 10.8152)])
def test_nonrel_levels(alpha, r_e, n, l, expected):
    E = nonrel_energy(PotentialParams(15, alpha, r_e), NonRelContext(), n, l, TABLE)
    assert E == pytest.approx(expected, abs=1e-4)


def test_nonrel_swave_ignores_d0():
    p = PotentialParams(15, 0.2, 0.4)
    a = nonrel_energy(p, NonRelContext(), 1, 0, ApproximationConfig(0.0))
    b = nonrel_energy(p, NonRelContext(), 1, 0, ApproximationConfig(0.3))
    assert a == b


def test_nonrel_increases_with_alpha():
    ctx = NonRelContext()
    for row_state in ("2p", "3p", "3d", "4f"):
        n, l = nonrel_label_to_nl(row_state)
        for r_e in (0.4, 0.8):
            values = [nonrel_energy(PotentialParams(15, a, r_e), ctx, n, l) for a in (0.05, 0.1, 0.2, 0.3)]
            assert values == sorted(values)


def test_nonrelativistic_reduction():
    M = 1e4
    p = PotentialParams(15, 0.1, 0.4)
    for n, k in [(0, -1), (0, -2), (1, -3), (2, 1)]:
        q = spin(n, k)
        E = spin_energy(p, RelativisticContext(M, 0.0), q).energy - M
        E_nl = nonrel_energy(p, NonRelContext(mu=M), n, q.l)
        assert abs(E - E_nl) / abs(E_nl) < 1e-3
