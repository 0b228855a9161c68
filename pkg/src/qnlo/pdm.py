"""Position-dependent mass version of the oscillator.

The kinetic term is -1/2 d/dy (1/m d/dy).  A point canonical transformation
with d eta/dy = sqrt(m) maps the constant-mass eigenfunctions onto

    psi~_n(y) = m(y)^{1/4} psi_n(eta(y)),

which are orthonormal in y because the m^{1/4} factor is exactly the square
root of the Jacobian.  Fock-space amplitudes of every coherent-state family
carry over unchanged.

The worked example is the rational profile m(y) = (g + y^2)^2 / (1 + y^2)^2,
for which eta(y) = y + (g - 1) arctan y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline

from .exceptions import ConfigError, InvalidFockIndex
from .fock_algebra import (deformation_f, fock_index, log_even_double_factorial,
                           log_F_tilde_even_sq, log_F_tilde_odd_sq, log_f_tilde_sq,
                           log_odd_double_factorial, log_tilde_factorial)
from .p_hermite import b_coef, phi, recurrence_residual_down, recurrence_residual_up
from .special_functions import QuadratureSpec, integrate
from .statevector import StateVector
from .states import gis_ratios
from .wavefunctions import (default_grid, energy, psi_definition, psi_deriv_table, psi_table,
                            potential)

DIFF_STEP = 1e-4


@dataclass(frozen=True)
class MassProfile:
    """A mass function m(y) > 0.

    Use :meth:`rational` for the worked example, :meth:`custom` for any
    callable, or :meth:`from_table` for a two-column text file (y, m).
    """

    kind: str
    gamma_mass: float = 1.0
    func: Callable | None = None

    @classmethod
    def rational(cls, gamma_mass: float) -> "MassProfile":
        if not gamma_mass > 0:
            raise ConfigError("gamma_mass must be > 0 so that m(y) > 0")
        return cls("rational", float(gamma_mass))

    @classmethod
    def custom(cls, m: Callable) -> "MassProfile":
        return cls("custom", 1.0, m)

    @classmethod
    def from_table(cls, path) -> "MassProfile":
        data = np.loadtxt(Path(path), ndmin=2)
        if data.shape[1] != 2 or data.shape[0] < 4:
            raise ConfigError(f"{path}: expected at least 4 rows of two columns (y, m)")
        if np.any(data[:, 1] <= 0):
            raise ConfigError(f"{path}: mass must be positive")
        spline = CubicSpline(data[:, 0], data[:, 1], extrapolate=True)
        return cls("custom", 1.0, lambda y: spline(y))

    # m, m', m''

    def m(self, y):
        y = np.asarray(y, dtype=float)
        if self.kind == "rational":
            g = self.gamma_mass
            out = ((g + y * y) / (1.0 + y * y)) ** 2
        else:
            out = np.asarray(self.func(y), dtype=float)
            if np.any(out <= 0):
                raise ValueError("mass profile must be positive")
        return out if out.ndim else float(out)

    def dm(self, y):
        y = np.asarray(y, dtype=float)
        if self.kind == "rational":
            g = self.gamma_mass
            u, v = g + y * y, 1.0 + y * y
            # m = (u/v)^2, (u/v)' = 2y(1-g)/v^2
            out = 2.0 * (u / v) * 2.0 * y * (1.0 - g) / (v * v)
        else:
            out = _five_point(self.m, y, 1)
        return out if np.ndim(out) else float(out)

    def d2m(self, y):
        y = np.asarray(y, dtype=float)
        if self.kind == "rational":
            g = self.gamma_mass
            u, v = g + y * y, 1.0 + y * y
            q = u / v
            dq = 2.0 * y * (1.0 - g) / (v * v)
            d2q = 2.0 * (1.0 - g) * (v - 4.0 * y * y) / v ** 3
            out = 2.0 * (dq * dq + q * d2q)
        else:
            out = _five_point(self.m, y, 2)
        return out if np.ndim(out) else float(out)


def _five_point(f, y, order, h=DIFF_STEP):
    if order == 1:
        return (-f(y + 2 * h) + 8 * f(y + h) - 8 * f(y - h) + f(y - 2 * h)) / (12 * h)
    return (-f(y + 2 * h) + 16 * f(y + h) - 30 * f(y) + 16 * f(y - h) - f(y - 2 * h)) / (12 * h * h)


def eta(profile: MassProfile, y):
    """eta(y) = int_0^y sqrt(m(s)) ds; closed form for the rational profile."""
    y = np.asarray(y, dtype=float)
    if profile.kind == "rational":
        out = y + (profile.gamma_mass - 1.0) * np.arctan(y)
        return out if out.ndim else float(out)
    return eta_quadrature(profile, y)


def eta_quadrature(profile: MassProfile, y, rtol: float = 1e-12):
    """eta by adaptive quadrature of sqrt(m), for any profile."""
    y = np.asarray(y, dtype=float)
    flat = y.ravel()
    out = np.empty_like(flat)
    integrand = lambda s: math.sqrt(profile.m(s))  # noqa: E731
    for i, t in enumerate(flat):
        if t == 0.0:
            out[i] = 0.0
            continue
        spec = QuadratureSpec(("finite", min(0.0, t), max(0.0, t)), relative_tolerance=rtol)
        val = integrate(integrand, spec).require()
        out[i] = val if t > 0 else -val
    out = out.reshape(y.shape)
    if out.ndim and out.size > 1:
        order = np.argsort(y)
        if np.any(np.diff(out[order]) <= 0):
            raise ValueError("eta is not strictly increasing on this grid")
    return out if out.ndim else float(out)


def _fields(profile, y):
    y = np.asarray(y, dtype=float)
    m, dm, d2m = (np.asarray(v, dtype=float) for v in (profile.m(y), profile.dm(y), profile.d2m(y)))
    return y, np.asarray(eta(profile, y), dtype=float), m, dm, d2m


def pdm_psi_table(n_max: int, profile: MassProfile, y) -> np.ndarray:
    """Rows psi~_0..psi~_{n_max} on ``y``."""
    y = np.asarray(y, dtype=float)
    e = np.asarray(eta(profile, y), dtype=float)
    return np.asarray(profile.m(y)) ** 0.25 * psi_table(n_max, e)


def pdm_psi(n: int, profile: MassProfile, y):
    """psi~_n(y) = m^{1/4} N_n P_n(eta) e^{-eta^2/2} / (1 + 2 eta^2)."""
    n = fock_index(n)
    return pdm_psi_table(n, profile, y)[n]


def pdm_psi_definition(n: int, profile: MassProfile, y):
    """Same function through the P-Hermite polynomial directly (moderate n only)."""
    y = np.asarray(y, dtype=float)
    return np.asarray(profile.m(y)) ** 0.25 * psi_definition(n, eta(profile, y))


def pdm_energy(n: int) -> float:
    return energy(n)


def pdm_potential(profile: MassProfile, y):
    """V~(y) = (eta^2 + 8(2eta^2-1)/(1+2eta^2)^2 + 3)/2 + m''/(8m^2) - 7m'^2/(32m^3)."""
    y, e, m, dm, d2m = _fields(profile, y)
    return potential(e) + 1.5 + mass_term(profile, y)


def mass_term(profile: MassProfile, y):
    y = np.asarray(y, dtype=float)
    m, dm, d2m = profile.m(y), profile.dm(y), profile.d2m(y)
    return d2m / (8.0 * m * m) - 7.0 * dm * dm / (32.0 * m ** 3)


def rational_mass_term(gamma_mass: float, y):
    """The explicit (g-1)(3y^4 + 2(2-g)y^2 - g) / (2(g+y^2)^4) of the rational profile."""
    y = np.asarray(y, dtype=float)
    g = gamma_mass
    y2 = y * y
    return (g - 1.0) * (3.0 * y2 * y2 + 2.0 * (2.0 - g) * y2 - g) / (2.0 * (g + y2) ** 4)


def _psi_and_derivs(n: int, profile: MassProfile, y):
    """psi~, d psi~/dy, d^2 psi~/dy^2 from the analytic x-derivatives."""
    from .wavefunctions import psi_deriv2

    y, e, m, dm, d2m = _fields(profile, y)
    tab = psi_table(n, e)
    p = tab[n]
    dp = psi_deriv_table(n, e, tab)[n]
    d2p = psi_deriv2(n, e)
    g = m ** 0.25
    dg = dm / (4.0 * m ** 0.75)
    d2g = d2m / (4.0 * m ** 0.75) - 3.0 * dm * dm / (16.0 * m ** 1.75)
    s = np.sqrt(m)
    u1 = s * dp
    u2 = dm / (2.0 * s) * dp + m * d2p
    return g * p, dg * p + g * u1, d2g * p + 2.0 * dg * u1 + g * u2


def pdm_residual(n: int, profile: MassProfile, y):
    """|-1/2 (psi'/m)' + (V~ - E) psi| relative to the largest term.

    The constant 3/2 inside V~ moves the eigenvalue from n - 3/2 to n, so E
    here is pdm_energy(n) + 3/2.
    """
    n = fock_index(n)
    y = np.asarray(y, dtype=float)
    m, dm = np.asarray(profile.m(y)), np.asarray(profile.dm(y))
    p, dp, d2p = _psi_and_derivs(n, profile, y)
    kinetic = -0.5 * (d2p / m - dm * dp / (m * m))
    pot = (pdm_potential(profile, y) - (pdm_energy(n) + 1.5)) * p
    scale = np.maximum(np.abs(kinetic), np.abs(pot))
    return np.abs(kinetic + pot) / np.where(scale > 0, scale, 1.0)


def pdm_recurrence_residuals(n: int, profile: MassProfile, y) -> tuple[np.ndarray, np.ndarray | None]:
    """The two P-Hermite recurrences at x = eta(y); downward is None for n = 3."""
    e = eta(profile, y)
    down = recurrence_residual_down(n, e) if n >= 4 else None
    return down, recurrence_residual_up(n, e)


# --- ladder operators ---------------------------------------------------------

def _ladder_pieces(n, profile, y, mode):
    """(eta, D psi~, psi~) where D is the first-derivative part of the operator.

    mode "ordered": D = m^{-1/2} d/dy - m'/(4 m^{3/2}), which carries
    m^{1/4} psi_n(eta) to m^{1/4} psi_n'(eta) exactly.
    mode "literal": D = m^{-1/2} d/dy as displayed, which leaves an extra
    m'/(4 m^{5/4}) psi_n(eta) behind whenever m' != 0.
    """
    y = np.asarray(y, dtype=float)
    e = np.asarray(eta(profile, y), dtype=float)
    m, dm = np.asarray(profile.m(y)), np.asarray(profile.dm(y))
    tab = psi_table(n, e)
    p, dp = tab[n], psi_deriv_table(n, e, tab)[n]
    g = m ** 0.25
    d_psi = g * dp
    if mode == "literal":
        d_psi = d_psi + dm / (4.0 * m ** 1.25) * p
    elif mode != "ordered":
        raise ValueError(f"mode must be 'ordered' or 'literal', got {mode!r}")
    return e, d_psi, g * p


def pdm_apply_A(n: int, profile: MassProfile, grid=None, mode: str = "ordered"):
    """sqrt2 A = [B - 1](D + phi) + (D + eta) n on psi~_n; equals sqrt(n) f(n) psi~_{n-1} for n >= 4."""
    n = fock_index(n)
    y = default_grid() if grid is None else np.asarray(grid, dtype=float)
    e, d_psi, p = _ladder_pieces(n, profile, y, mode)
    return ((b_coef(e) - 1.0) * (d_psi + phi(e) * p) + n * (d_psi + e * p)) / math.sqrt(2.0)


def pdm_apply_Adag(n: int, profile: MassProfile, grid=None, mode: str = "ordered"):
    """sqrt2 A+ = -B (D + phi) + (-D + eta) n on psi~_n; equals sqrt(n+1) f(n+1) psi~_{n+1}."""
    n = fock_index(n)
    y = default_grid() if grid is None else np.asarray(grid, dtype=float)
    e, d_psi, p = _ladder_pieces(n, profile, y, mode)
    return (-b_coef(e) * (d_psi + phi(e) * p) + n * (-d_psi + e * p)) / math.sqrt(2.0)


def ladder_contract_error(n: int, profile: MassProfile, grid=None, mode: str = "ordered") -> dict:
    """Max pointwise error of both ladder images against the Fock-space contract."""
    n = fock_index(n)
    y = default_grid() if grid is None else np.asarray(grid, dtype=float)
    table = pdm_psi_table(n + 1, profile, y)
    out = {}
    if n >= 4:
        want = math.sqrt(n) * deformation_f(n) * table[n - 1]
        out["A"] = float(np.max(np.abs(pdm_apply_A(n, profile, y, mode) - want)))
    want = math.sqrt(n + 1) * deformation_f(n + 1) * table[n + 1]
    out["A+"] = float(np.max(np.abs(pdm_apply_Adag(n, profile, y, mode) - want)))
    return out


# --- states -----------------------------------------------------------------

def pdm_state(state: StateVector, profile: MassProfile, grid=None) -> np.ndarray:
    """Psi~(y) = sum_n c_n psi~_n(y) with the Fock amplitudes of ``state``."""
    y = default_grid() if grid is None else np.asarray(grid, dtype=float)
    return state.coeffs @ pdm_psi_table(state.n_max, profile, y)


def explicit_amplitudes(family: str, n_max: int, **params) -> np.ndarray:
    """Unnormalized amplitudes from the factorial closed forms, up to n_max.

    nlcs/gk: z^{n-3} [e^{-i gamma e_n}] / (sqrt(n!/6) f~(n)!);
    even:    alpha^{k-2} / (sqrt((2k)~!!) F~(2k-2)!!) on |2k>;
    odd:     alpha^{k-1} / (sqrt((2k+1)~!!) F~(2k-1)!!) on |2k+1>;
    gis:     A~_n! / (sqrt(n!/6) f~(n)!) with A~_n! the product of the ratio
             recursion times sqrt(n!/6) f~(n)!.
    """
    c = np.zeros(n_max + 1, dtype=complex)
    if family in ("nlcs", "gk"):
        z = complex(params.get("z", params.get("alpha", 0.0)))
        n = np.arange(3, n_max + 1)
        mag = np.exp(-0.5 * (log_tilde_factorial(n) + log_f_tilde_sq(n)))
        c[3:] = mag * z ** (n - 3)
        if family == "gk":
            c[3:] *= np.exp(-1j * params.get("gamma_phase", 0.0) * n * (n - 1.0) * (n - 3.0))
    elif family == "even":
        a = complex(params["alpha"])
        k = np.arange(2, n_max // 2 + 1)
        c[2 * k] = a ** (k - 2) * np.exp(-0.5 * (log_even_double_factorial(k) + log_F_tilde_even_sq(k)))
    elif family == "odd":
        a = complex(params["alpha"])
        k = np.arange(1, (n_max - 1) // 2 + 1)
        c[2 * k + 1] = a ** (k - 1) * np.exp(-0.5 * (log_odd_double_factorial(k) + log_F_tilde_odd_sq(k)))
    elif family == "gis":
        ratios = gis_ratios(params["alpha"], params["lam"], n_max - 1)
        c[3] = 1.0
        c[4:] = np.cumprod(ratios)
    else:
        raise ValueError(f"unknown family {family!r}")
    return c


def pdm_state_explicit(family: str, profile: MassProfile, grid=None, n_max: int = 60, **params):
    """The displayed series for each family, summed with P-Hermite eigenfunctions and normalized
    by its own coefficient sum.  An independent route to :func:`pdm_state`."""
    if n_max > 150:
        raise InvalidFockIndex("explicit route overflows beyond n = 150")
    y = default_grid() if grid is None else np.asarray(grid, dtype=float)
    c = explicit_amplitudes(family, n_max, **params)
    c /= math.sqrt(float(np.sum(np.abs(c) ** 2)))
    out = np.zeros(y.shape, dtype=complex)
    for n in np.flatnonzero(c):
        out += c[n] * pdm_psi_definition(int(n), profile, y)
    return out


def pdm_overlap(n: int, m: int, profile: MassProfile, rtol: float = 1e-10) -> float:
    """<psi~_n|psi~_m> by quadrature in y."""
    n, m = fock_index(n), fock_index(m)
    top = max(n, m)

    def f(t):
        tab = pdm_psi_table(top, profile, np.array([t]))
        return float(tab[n, 0] * tab[m, 0])

    # eta grows at least like min(1, g) * y; the functions live where |eta| < ~sqrt(2 top) + 6
    reach = (math.sqrt(2.0 * top + 1.0) + 8.0) * max(1.0, 1.0 / min(profile.m(0.0), 1.0) ** 0.5)
    spec = QuadratureSpec(("finite", -reach, reach), relative_tolerance=rtol,
                          absolute_tolerance=1e-13, breakpoints=(-reach / 2, 0.0, reach / 2))
    return integrate(f, spec).require()


def pdm_norm(values, grid) -> float:
    """Trapezoid norm of sampled values (for grid-level checks only)."""
    return float(np.trapezoid(np.abs(values) ** 2, grid))
