"""Position-space eigenfunctions of the solvable point of the oscillator.

The Schroedinger equation is

    psi'' + (2E - x^2 - 8(2x^2 - 1)/(2x^2 + 1)^2) psi = 0,

with eigenfunctions psi_n = N_n P_n(x) e^{-x^2/2}/(1+2x^2), n = 0, 3, 4, ...
and E_n = n - 3/2.

For evaluation the eigenfunctions are rewritten through normalized Hermite
functions h_k; using P_n = 2(1+2x^2) H_{n-2} + 8x H_{n-3} the normalization
constant cancels and

    psi_n = sqrt((n-2)/n) h_{n-2} + 2 sqrt(2) x / ((1+2x^2) sqrt(n)) h_{n-3},
    psi_n' = sqrt(2n) h_{n-3} - phi psi_n,

which stays finite for large n and large |x|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock_algebra import fock_index
from .p_hermite import b_coef, p_hermite, phi
from .special_functions import QuadratureSpec, integrate

GRID = (-6.0, 6.0, 1201)
PI_QUARTER = math.pi ** -0.25


def default_grid() -> np.ndarray:
    return np.linspace(*GRID)


@dataclass(frozen=True)
class PotentialParams:
    """Parameters of V(x) = (omega^2 x^2 + 2 g_a (x^2 - a^2)/(x^2 + a^2)^2)/2.

    Only the solvable point omega = 1, a^2 = 1/2, g_a = 2 has eigenfunction
    support; other values can be evaluated with :meth:`potential`.
    """

    omega: float = 1.0
    a_sq: float = 0.5
    g_a: float = 2.0

    @classmethod
    def solvable(cls) -> "PotentialParams":
        return cls()

    @property
    def is_solvable(self) -> bool:
        return (self.omega == 1.0 and self.a_sq == 0.5
                and self.g_a == 2.0 * self.omega * self.a_sq * (1.0 + 2.0 * self.omega * self.a_sq))

    def potential(self, x):
        x = np.asarray(x, dtype=float)
        x2 = x * x
        return 0.5 * (self.omega ** 2 * x2 + 2.0 * self.g_a * (x2 - self.a_sq) / (x2 + self.a_sq) ** 2)


def potential(x):
    """V(x) = (x^2 + 8(2x^2 - 1)/(2x^2 + 1)^2)/2 at the solvable point."""
    x = np.asarray(x, dtype=float)
    u = 2.0 * x * x + 1.0
    return 0.5 * (x * x + 8.0 * (2.0 * x * x - 1.0) / (u * u))


def energy(n: int) -> float:
    return fock_index(n) - 1.5


def normalization(n: int) -> float:
    """N_n = [(n-1)(n-2) / (2^n n! sqrt(pi))]^{1/2}."""
    n = fock_index(n)
    log_n = 0.5 * (math.log((n - 1) * (n - 2)) - n * math.log(2.0)
                   - math.lgamma(n + 1) - 0.5 * math.log(math.pi))
    return math.exp(log_n)


def hermite_functions(k_max: int, x) -> np.ndarray:
    """Normalized Hermite functions h_0..h_{k_max}; shape (k_max + 1, *x.shape)."""
    x = np.asarray(x, dtype=float)
    out = np.zeros((max(k_max, 0) + 1,) + x.shape)
    out[0] = PI_QUARTER * np.exp(-0.5 * x * x)
    if k_max >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for k in range(1, k_max):
        out[k + 1] = math.sqrt(2.0 / (k + 1)) * x * out[k] - math.sqrt(k / (k + 1)) * out[k - 1]
    return out


def _ground(x):
    return normalization(0) * np.exp(-0.5 * x * x) / (1.0 + 2.0 * x * x)


def psi_table(n_max: int, x) -> np.ndarray:
    """Rows psi_0..psi_{n_max} on ``x``; rows 1 and 2 are zero."""
    x = np.asarray(x, dtype=float)
    h = hermite_functions(max(n_max - 2, 0), x)
    out = np.zeros((n_max + 1,) + x.shape)
    out[0] = _ground(x)
    w = 2.0 * math.sqrt(2.0) * x / (1.0 + 2.0 * x * x)
    for n in range(3, n_max + 1):
        out[n] = math.sqrt((n - 2) / n) * h[n - 2] + w / math.sqrt(n) * h[n - 3]
    return out


def psi_deriv_table(n_max: int, x, table: np.ndarray | None = None) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    psi = psi_table(n_max, x) if table is None else table
    h = hermite_functions(max(n_max - 3, 0), x)
    out = -phi(x) * psi
    for n in range(3, n_max + 1):
        out[n] += math.sqrt(2.0 * n) * h[n - 3]
    out[1:3] = 0.0
    return out


def psi(n: int, x):
    """Normalized eigenfunction psi_n(x)."""
    n = fock_index(n)
    return psi_table(n, x)[n]


def psi_definition(n: int, x):
    """psi_n straight from N_n P_n(x) e^{-x^2/2}/(1+2x^2); overflows for n beyond ~150."""
    n = fock_index(n)
    x = np.asarray(x, dtype=float)
    return normalization(n) * p_hermite(n, x) * np.exp(-0.5 * x * x) / (1.0 + 2.0 * x * x)


def psi_deriv(n: int, x):
    n = fock_index(n)
    return psi_deriv_table(n, x)[n]


def psi_deriv2(n: int, x):
    """Analytic second derivative, from psi' = s h_{n-3} - phi psi."""
    n = fock_index(n)
    x = np.asarray(x, dtype=float)
    p, dp = psi(n, x), psi_deriv(n, x)
    u = 1.0 + 2.0 * x * x
    dphi = 1.0 + 4.0 * (1.0 - 2.0 * x * x) / (u * u)
    out = -dphi * p - phi(x) * dp
    if n >= 3:
        k = n - 3
        h = hermite_functions(k, x)
        dh = -x * h[k] + (math.sqrt(2.0 * k) * h[k - 1] if k >= 1 else 0.0)
        out = out + math.sqrt(2.0 * n) * dh
    return out


def schrodinger_residual(n: int, x):
    """|psi'' + (2E - 2V) psi| relative to the largest of |psi''|, |(2E-2V) psi|, |psi'|."""
    x = np.asarray(x, dtype=float)
    p = psi(n, x)
    d2 = psi_deriv2(n, x)
    pot = (2.0 * energy(n) - 2.0 * potential(x)) * p
    scale = np.maximum.reduce([np.abs(d2), np.abs(pot), np.abs(psi_deriv(n, x))])
    return np.abs(d2 + pot) / np.where(scale > 0, scale, 1.0)


def overlap(n: int, m: int, rtol: float = 1e-12):
    """<psi_n|psi_m> by adaptive quadrature over the real line."""
    n, m = fock_index(n), fock_index(m)
    spec = QuadratureSpec("real_line", relative_tolerance=rtol, absolute_tolerance=1e-14,
                          breakpoints=(-6.0, 6.0))

    def f(t):
        table = psi_table(max(n, m), np.array([t]))
        return float(table[n, 0] * table[m, 0])

    return integrate(f, spec).require()


def apply_A_differential(n: int, grid=None):
    """The deformed annihilator as a differential operator, applied to psi_n.

    sqrt2 A = [B - 1](d/dx + phi) + (d/dx + x) n.  For n >= 4 the result is
    sqrt(n) f(n) psi_{n-1}.
    """
    n = fock_index(n)
    x = default_grid() if grid is None else np.asarray(grid, dtype=float)
    p, dp = psi(n, x), psi_deriv(n, x)
    return ((b_coef(x) - 1.0) * (dp + phi(x) * p) + n * (dp + x * p)) / math.sqrt(2.0)


def apply_Adag_differential(n: int, grid=None):
    """sqrt2 A+ = -B (d/dx + phi) + (-d/dx + x) n applied to psi_n; equals sqrt(n+1) f(n+1) psi_{n+1}."""
    n = fock_index(n)
    x = default_grid() if grid is None else np.asarray(grid, dtype=float)
    p, dp = psi(n, x), psi_deriv(n, x)
    return (-b_coef(x) * (dp + phi(x) * p) + n * (-dp + x * p)) / math.sqrt(2.0)
