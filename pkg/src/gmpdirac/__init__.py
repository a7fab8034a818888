"""Bound states of the generalized Morse and Kratzer potentials.

Dirac spin and pseudospin symmetry limits, the Schrodinger limit, closed
form wavefunctions and a finite-difference oracle.
"""

from .errors import (AmbiguityError, ConvergenceError, DegenerateDegreeError, DomainError, GMPError,
                     MalformedLabelError, NoBoundStateError, SingularityError, UnphysicalSolutionError)
from .gmp_spectra import EnergySolution, nonrel_energy, pseudospin_energy, spin_energy
from .kratzer_spectra import (kratzer_nonrel_energy, kratzer_pseudospin_energy, kratzer_spin_energy,
                              solve_quartic)
from .model import (NonRelContext, PotentialParams, QuantumNumbers, RelativisticContext, Symmetry,
                    kappa_from_label, nonrel_label_to_nl, parse_label, parse_state)
from .potentials import ApproximationConfig, centrifugal_approx, gmp, kratzer

__version__ = "0.1.0"
