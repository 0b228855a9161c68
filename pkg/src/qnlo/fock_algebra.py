"""Deformed oscillator algebra on the broken Fock set {0, 3, 4, 5, ...}.

The deformation function is f(n) = sqrt((n-1)(n-3)); its zeros at n = 1 and
n = 3 split the number basis, so the ladder operators never connect |0> with
the tower that starts at |3>.  Every factorial-like product is returned in
log form so that indices up to ~1e4 stay finite.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import NamedTuple

import numpy as np
from scipy.special import gammaln

from .exceptions import DegenerateDivision, InvalidFockIndex
from .statevector import StateVector

LOG2 = math.log(2.0)
LOG3 = math.log(3.0)
LOG6 = math.log(6.0)


class LogReal(NamedTuple):
    """A real number stored as ``sign * exp(log)``."""

    log: float
    sign: int = 1

    @property
    def value(self) -> float:
        return self.sign * math.exp(self.log)


class LadderKind(Enum):
    DEFORMED_A = "A"
    DEFORMED_A_DAGGER = "A+"
    UNDEFORMED_A = "a"
    UNDEFORMED_A_DAGGER = "a+"
    GAZEAU_B = "B"
    GAZEAU_B_DAGGER = "B+"


def fock_index(n) -> int:
    """Validate a level label; only 0 and 3, 4, 5, ... exist."""
    if isinstance(n, bool) or int(n) != n:
        raise InvalidFockIndex(f"level must be an integer, got {n!r}")
    n = int(n)
    if n < 0 or n in (1, 2):
        raise InvalidFockIndex(f"|{n}> is not in the Fock set {{0, 3, 4, ...}}")
    return n


def _check_not_two(n: int) -> int:
    # f and e are also needed at n = 1 (as f(n + 1) for n = 0); only n = 2 is imaginary
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise InvalidFockIndex(f"expected a non-negative integer, got {n!r}")
    if n == 2:
        raise InvalidFockIndex("f(2) = sqrt(-1) is not real")
    return int(n)


def deformation_f(n: int) -> float:
    """f(n) = sqrt((n-1)(n-3))."""
    n = _check_not_two(n)
    return math.sqrt((n - 1) * (n - 3))


def deformed_energy(n: int) -> int:
    """e(n) = n f(n)^2 = n(n-1)(n-3), the spectrum of the factorized Hamiltonian."""
    n = _check_not_two(n)
    return n * (n - 1) * (n - 3)


def energy_raw(n: np.ndarray) -> np.ndarray:
    """n(n-1)(n-3) on an integer array, without validation (n = 2 gives -2)."""
    n = np.asarray(n, dtype=float)
    return n * (n - 1.0) * (n - 3.0)


def log_tilde_factorial(n):
    """log of n(n-1)...4 = n!/6; vectorized, n >= 3."""
    n = np.asarray(n, dtype=float)
    out = gammaln(n + 1.0) - LOG6
    return out if out.ndim else float(out)


def log_f_tilde_sq(n):
    """log of prod_{k=4}^{n} (k-1)(k-3) = (n-1)!(n-3)!/2; vectorized, n >= 3."""
    n = np.asarray(n, dtype=float)
    out = gammaln(n) + gammaln(n - 2.0) - LOG2
    return out if out.ndim else float(out)


def tilde_factorial(n: int) -> LogReal:
    if fock_index(n) < 3:
        raise InvalidFockIndex("tilde factorial needs n >= 3")
    return LogReal(log_tilde_factorial(n))


def f_tilde_sq(n: int) -> LogReal:
    """[f(n) f(n-1) ... f(4)]^2, equal to 1 at n = 3."""
    if fock_index(n) < 3:
        raise InvalidFockIndex("tilde f-factorial needs n >= 3")
    return LogReal(log_f_tilde_sq(n))


def cat_F(n: int) -> float:
    """F(n) = sqrt(n+1) f(n+1) f(n+2), the two-step coupling of A^2."""
    if n < 0:
        raise InvalidFockIndex(n)
    # f(n+1)^2 f(n+2)^2 = n(n-2)(n+1)(n-1) is >= 0 for every integer n >= 0
    prod = (n + 1) * n * (n - 2) * (n + 1) * (n - 1)
    return math.sqrt(max(prod, 0))


# Products entering the even/odd cat amplitudes.  ``n`` is the half-index:
# the even state lives on |2n>, n >= 2, the odd one on |2n+1>, n >= 1.

def log_even_double_factorial(n):
    """log of (2n)(2n-2)...6, empty product (=1) at n = 2."""
    n = np.asarray(n, dtype=float)
    out = gammaln(n + 1.0) + (n - 3.0) * LOG2
    return out if out.ndim else float(out)


def log_odd_double_factorial(n):
    """log of (2n+1)(2n-1)...5, empty product at n = 1."""
    n = np.asarray(n, dtype=float)
    out = gammaln(2.0 * n + 2.0) - n * LOG2 - gammaln(n + 1.0) - LOG3
    return out if out.ndim else float(out)


def log_F_tilde_even_sq(n):
    """log of [F(2n-2) F(2n-4) ... F(4)]^2, empty product at n = 2."""
    n = np.asarray(n, dtype=float)
    out = (gammaln(2.0 * n - 1.0) - LOG2
           + (n - 2.0) * LOG2 + gammaln(n - 1.0)
           + 2.0 * (gammaln(2.0 * n) - (n - 1.0) * LOG2 - gammaln(n) - LOG3))
    return out if out.ndim else float(out)


def log_F_tilde_odd_sq(n):
    """log of [F(2n-1) F(2n-3) ... F(3)]^2, empty product at n = 1."""
    n = np.asarray(n, dtype=float)
    out = (gammaln(2.0 * n)
           + gammaln(2.0 * n - 1.0) - (n - 1.0) * LOG2 - gammaln(n)
           + 2.0 * ((n - 1.0) * LOG2 + gammaln(n + 1.0)))
    return out if out.ndim else float(out)


# --- operators on amplitude vectors ---------------------------------------

def _lowering_coeffs(size: int) -> np.ndarray:
    # sqrt(n) f(n) for n = 0..size-1; the n = 2 entry is never used
    return np.sqrt(np.clip(energy_raw(np.arange(size)), 0.0, None))


def _f_values(n: np.ndarray) -> np.ndarray:
    return np.sqrt(np.clip((n - 1.0) * (n - 3.0), 0.0, None))


def _divide_by_f(numer: np.ndarray, divisor: np.ndarray) -> np.ndarray:
    out = np.zeros_like(numer)
    zero = divisor == 0.0
    if np.any(numer[zero] != 0):
        bad = np.flatnonzero(zero & (numer != 0))
        raise DegenerateDivision(f"non-zero amplitude divided by f = 0 at n = {bad.tolist()}")
    out[~zero] = numer[~zero] / divisor[~zero]
    return out


def apply_ladder(kind: LadderKind, state: StateVector, phase_gamma: float = 0.0) -> StateVector:
    """Image of ``state`` under one of the ladder operators.

    Raising operators extend the vector by one level.  The undeformed
    operators a = A/f(n), a+ = A+/f(n+1) take the deformed image first; a
    zero numerator at a zero of f gives a zero amplitude, anything else raises
    :class:`DegenerateDivision`.
    """
    kind = LadderKind(kind)
    c = state.coeffs
    size = c.size
    n = np.arange(size, dtype=float)
    lower = kind in (LadderKind.DEFORMED_A, LadderKind.UNDEFORMED_A, LadderKind.GAZEAU_B)

    if lower:
        weight = _lowering_coeffs(size) * c  # amplitude carried from |n> to |n-1>
        if kind is LadderKind.UNDEFORMED_A:
            weight = _divide_by_f(weight, _f_values(n))
        elif kind is LadderKind.GAZEAU_B:
            weight = weight * np.exp(1j * phase_gamma * (energy_raw(n) - energy_raw(n - 1)))
        out = np.zeros(size, dtype=complex)
        out[:-1] = weight[1:]
    else:
        weight = _lowering_coeffs(size + 1)[1:] * c  # sqrt(n+1) f(n+1)
        if kind is LadderKind.UNDEFORMED_A_DAGGER:
            weight = _divide_by_f(weight, _f_values(n + 1.0))
        elif kind is LadderKind.GAZEAU_B_DAGGER:
            weight = weight * np.exp(-1j * phase_gamma * (energy_raw(n + 1) - energy_raw(n)))
        out = np.zeros(size + 1, dtype=complex)
        out[1:] = weight
    # levels 1 and 2 only ever receive zero weight
    out[1:3] = 0.0
    return StateVector(out)


def apply_number(state: StateVector) -> StateVector:
    """n-hat |n> = n |n>."""
    return StateVector(np.arange(state.coeffs.size) * state.coeffs)


def _diff_norm(u: StateVector, v: StateVector) -> float:
    n = max(u.n_max, v.n_max)
    return float(np.linalg.norm(u.padded(n) - v.padded(n)))


def _sub(u: StateVector, v: StateVector) -> StateVector:
    n = max(u.n_max, v.n_max)
    return StateVector(u.padded(n) - v.padded(n))


class CommutatorReport(NamedTuple):
    n: int
    canonical: float   # || [a, a+]|n> - |n> ||
    lowering: float    # || [a, n]|n> - a|n> ||
    raising: float     # || [a+, n]|n> + a+|n> ||
    asserted: bool     # False for n < 4, where the undeformed operators are formal


def commutator_check(n: int) -> CommutatorReport:
    """Residuals of the Heisenberg relations on |n> built from a, a+ and n-hat.

    The number operator is the diagonal one, n-hat|n> = n|n>.  With that
    choice the relations read [a, a+] = 1, [a, n] = a, [a+, n] = -a+.
    """
    from .statevector import basis_state

    n = fock_index(n)
    ket = basis_state(n)
    A, Ad = LadderKind.UNDEFORMED_A, LadderKind.UNDEFORMED_A_DAGGER

    a_ket = apply_ladder(A, ket)
    ad_ket = apply_ladder(Ad, ket)
    comm = _sub(apply_ladder(A, ad_ket), apply_ladder(Ad, a_ket))
    canonical = _diff_norm(comm, ket)

    a_n = _sub(apply_ladder(A, apply_number(ket)), apply_number(a_ket))
    lowering = _diff_norm(a_n, a_ket)

    ad_n = _sub(apply_ladder(Ad, apply_number(ket)), apply_number(ad_ket))
    raising = float(np.linalg.norm(ad_n.padded(ad_ket.n_max) + ad_ket.padded(ad_n.n_max)))

    return CommutatorReport(n, canonical, lowering, raising, n >= 4)


class UncertaintyReport(NamedTuple):
    dW: float
    dP: float
    mean_g: float
    saturation_residual: float


def uncertainty_report(state: StateVector, norm_tol: float = 1e-10) -> UncertaintyReport:
    """Quadrature spreads for W = (A + A+)/sqrt2, P = i(A+ - A)/sqrt2.

    ``mean_g`` is <[A, A+]>, so that [W, P] = i G.  The residual
    dW*dP - |<G>|/2 is non-negative for any normalized state.
    """
    if abs(state.norm() - 1.0) > norm_tol:
        raise ValueError(f"state is not normalized (norm = {state.norm():.3e})")
    size = state.n_max + 2
    psi = state.padded(size - 1)
    a_psi = apply_ladder(LadderKind.DEFORMED_A, state).padded(size - 1)
    ad_psi = apply_ladder(LadderKind.DEFORMED_A_DAGGER, state).padded(size - 1)

    w_psi = (a_psi + ad_psi) / math.sqrt(2.0)
    p_psi = 1j * (ad_psi - a_psi) / math.sqrt(2.0)
    mean_w = np.vdot(psi, w_psi).real
    mean_p = np.vdot(psi, p_psi).real
    var_w = max(np.vdot(w_psi, w_psi).real - mean_w ** 2, 0.0)
    var_p = max(np.vdot(p_psi, p_psi).real - mean_p ** 2, 0.0)
    mean_g = np.vdot(ad_psi, ad_psi).real - np.vdot(a_psi, a_psi).real

    dW, dP = math.sqrt(var_w), math.sqrt(var_p)
    mean_g = float(mean_g)
    return UncertaintyReport(dW, dP, mean_g, dW * dP - 0.5 * abs(mean_g))
