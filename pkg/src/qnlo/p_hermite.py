"""Hermite and P-Hermite polynomials, P_n = H_n + 4n H_{n-2} + 4n(n-3) H_{n-4}.

P_n exists for n >= 3; P_0 = 1 by convention so the ground state fits the
same eigenfunction template.  Functions broadcast over ``x``.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .exceptions import InvalidFockIndex


class Route(Enum):
    DEFINITION = "definition"
    REDUCED = "reduced"


def hermite(n: int, x):
    """Physicists' Hermite polynomial via H_{k+1} = 2x H_k - 2k H_{k-1}; zero for n < 0."""
    x = np.asarray(x, dtype=float)
    if n < 0:
        return np.zeros_like(x)
    h_prev, h = np.zeros_like(x), np.ones_like(x)
    for k in range(n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h


def hermite_all(n_max: int, x) -> np.ndarray:
    """Stack of H_0..H_{n_max} evaluated at ``x``; shape (n_max + 1, *x.shape)."""
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 2.0 * x
    for k in range(1, n_max):
        out[k + 1] = 2.0 * x * out[k] - 2.0 * k * out[k - 1]
    return out


def _check(n: int) -> int:
    if n == 0:
        return 0
    if n < 3:
        raise InvalidFockIndex(f"P_{n} is not defined (need n = 0 or n >= 3)")
    return n


def p_hermite(n: int, x, route: Route | str = Route.DEFINITION):
    """P_n(x) by the defining combination or by the reduced form 2(1+2x^2)H_{n-2} + 8x H_{n-3}."""
    n = _check(n)
    x = np.asarray(x, dtype=float)
    if n == 0:
        return np.ones_like(x)
    if Route(route) is Route.DEFINITION:
        return hermite(n, x) + 4 * n * hermite(n - 2, x) + 4 * n * (n - 3) * hermite(n - 4, x)
    return 2.0 * (1.0 + 2.0 * x * x) * hermite(n - 2, x) + 8.0 * x * hermite(n - 3, x)


def p_hermite_deriv(n: int, x):
    """P'_n(x) = 4n(1+2x^2) H_{n-3}(x)."""
    n = _check(n)
    x = np.asarray(x, dtype=float)
    if n == 0:
        return np.zeros_like(x)
    return 4.0 * n * (1.0 + 2.0 * x * x) * hermite(n - 3, x)


def p_hermite_deriv2(n: int, x):
    n = _check(n)
    x = np.asarray(x, dtype=float)
    if n == 0:
        return np.zeros_like(x)
    return 4.0 * n * (4.0 * x * hermite(n - 3, x)
                      + (1.0 + 2.0 * x * x) * 2.0 * (n - 3) * hermite(n - 4, x))


def phi(x):
    """phi(x) = x + 4x/(1+2x^2), the log-derivative of (1+2x^2) e^{x^2/2}."""
    x = np.asarray(x, dtype=float)
    return x + 4.0 * x / (1.0 + 2.0 * x * x)


def b_coef(x):
    """2(2x^2 - 1)/(1+2x^2)^2."""
    x = np.asarray(x, dtype=float)
    u = 1.0 + 2.0 * x * x
    return 2.0 * (2.0 * x * x - 1.0) / (u * u)


def _relative(lhs_terms, rhs):
    terms = np.stack([np.abs(t) for t in lhs_terms] + [np.abs(rhs)])
    scale = np.max(terms, axis=0)
    resid = np.abs(sum(lhs_terms) - rhs)
    return np.where(scale > 0, resid / np.where(scale > 0, scale, 1.0), resid)


def recurrence_residual_down(n: int, x):
    """Relative residual of [n-1+B] P'_n + n(x-phi) P_n = 2n(n-3) P_{n-1}, n >= 4.

    The residual is scaled by the largest individual term so it stays
    meaningful where the polynomials are large.
    """
    if n < 4:
        raise InvalidFockIndex("downward recurrence needs n >= 4")
    x = np.asarray(x, dtype=float)
    t1 = (n - 1 + b_coef(x)) * p_hermite_deriv(n, x)
    t2 = n * (x - phi(x)) * p_hermite(n, x)
    return _relative([t1, t2], 2.0 * n * (n - 3) * p_hermite(n - 1, x))


def recurrence_residual_up(n: int, x):
    """Relative residual of -[n+B] P'_n + n(x+phi) P_n = n P_{n+1}, n >= 3."""
    if n < 3:
        raise InvalidFockIndex("upward recurrence needs n >= 3")
    x = np.asarray(x, dtype=float)
    t1 = -(n + b_coef(x)) * p_hermite_deriv(n, x)
    t2 = n * (x + phi(x)) * p_hermite(n, x)
    return _relative([t1, t2], n * p_hermite(n + 1, x))


def derivative_identity_residual(n: int, x):
    """Relative residual of P_n e^{-x^2}/(1+2x^2)^2 = -2 d/dx[H_{n-3} e^{-x^2}/(1+2x^2)].

    The common factor e^{-x^2} is divided out before comparing.
    """
    if n < 3:
        raise InvalidFockIndex("identity holds for n >= 3")
    x = np.asarray(x, dtype=float)
    u = 1.0 + 2.0 * x * x
    h = hermite(n - 3, x)
    dh = 2.0 * (n - 3) * hermite(n - 4, x)
    lhs = p_hermite(n, x) / (u * u)
    # d/dx [h/u e^{-x^2}] e^{x^2} = h'/u - 2x h/u - 4x h/u^2
    rhs_terms = [-2.0 * dh / u, 4.0 * x * h / u, 8.0 * x * h / (u * u)]
    return _relative(rhs_terms, lhs)
