"""Coherent states of the exactly solvable nonlinear oscillator.

The oscillator V(x) = (x^2 + 8(2x^2 - 1)/(2x^2 + 1)^2)/2 has levels
E_n = n - 3/2 for n = 0, 3, 4, ...; its ladder operators are f-deformed with
f(n) = sqrt((n-1)(n-3)).  The package builds the intelligent, nonlinear
coherent, Gazeau-Klauder and even/odd cat states of that algebra, their
photon statistics, and the position-dependent-mass counterparts.
"""

from .exceptions import (ConfigError, ConvergenceError, DegenerateDivision, InvalidFockIndex,
                         QnloError, QuadratureError)
from .fock_algebra import (LadderKind, apply_ladder, apply_number, cat_F, commutator_check,
                           deformation_f, deformed_energy, f_tilde_sq, tilde_factorial,
                           uncertainty_report)
from .p_hermite import Route, hermite
from .pdm import MassProfile, eta, pdm_apply_A, pdm_apply_Adag, pdm_psi, pdm_state
from .special_functions import (HypergeometricSpec, QuadratureSpec, bessel_k, integrate,
                                log_gamma, pfq)
from .statevector import StateVector, basis_state
from .states import (build, build_even, build_gis, build_gk, build_nlcs, build_odd, gk_evolve,
                     synthesize_position)
from .statistics import (completeness_integral, g2, mandel_q, moments, nlcs_closed_forms,
                         cat_closed_forms, photon_distribution, statistics_report,
                         stats_from_normalization)
from .wavefunctions import energy, psi

__version__ = "0.1.0"
