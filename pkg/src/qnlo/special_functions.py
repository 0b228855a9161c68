"""Numerical kernels: log-gamma, pFq, K_nu and adaptive quadrature.

``pfq`` is a plain term-ratio summation; every hypergeometric that shows up in
the photon statistics has p <= q, so the series is entire and converges
monotonically once the term ratio drops below one.  ``bessel_k`` and
``integrate`` delegate to scipy behind fixed contracts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate as _integrate
from scipy import special as _special

from .exceptions import ConvergenceError, QuadratureError

MAX_TERMS = 1_000_000


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise ValueError(f"log_gamma needs x > 0, got {x}")
    return math.lgamma(x)


@dataclass(frozen=True)
class HypergeometricSpec:
    numerator_params: Sequence[float]
    denominator_params: Sequence[float]
    argument: float

    def __post_init__(self):
        for b in self.denominator_params:
            if b <= 0 and float(b).is_integer():
                raise ValueError(f"denominator parameter {b} is a non-positive integer")
        if len(self.numerator_params) > len(self.denominator_params) + 1:
            raise ValueError("p > q + 1: series diverges")


def pfq(a: Sequence[float] | HypergeometricSpec, b: Sequence[float] | None = None,
        x: float | None = None, rtol: float = 1e-15) -> float:
    """Generalized hypergeometric series pFq(a; b; x) by term recursion.

    Accepts either a :class:`HypergeometricSpec` or the three pieces.
    """
    spec = a if isinstance(a, HypergeometricSpec) else HypergeometricSpec(tuple(a), tuple(b), x)
    a, b, x = spec.numerator_params, spec.denominator_params, float(spec.argument)
    if len(a) == len(b) + 1 and abs(x) >= 1:
        raise ValueError("p = q + 1 series needs |x| < 1")

    total = term = 1.0
    for k in range(MAX_TERMS):
        num = x
        for ai in a:
            num *= ai + k
        den = k + 1.0
        for bi in b:
            den *= bi + k
        ratio = num / den
        term *= ratio
        total += term
        if term == 0.0:
            return total
        # past the peak the tail is bounded by a geometric series in |ratio|
        if abs(ratio) < 0.5 and abs(term) <= rtol * abs(total) * (1.0 - abs(ratio)):
            return total
    raise ConvergenceError(f"pFq did not converge in {MAX_TERMS} terms")


def bessel_k(order: float, x: float) -> float:
    """Modified Bessel function of the second kind K_nu(x), x > 0, real order."""
    if not x > 0:
        raise ValueError(f"bessel_k needs x > 0, got {x}")
    return float(_special.kv(abs(order), x))


def log_bessel_k(order: float, x):
    """log K_nu(x); falls back to the small-argument limit where K_nu overflows."""
    nu = abs(order)
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", over="ignore"):
        val = np.log(_special.kve(nu, x)) - x
    bad = ~np.isfinite(val)
    if np.any(bad) and nu > 0:
        # K_nu(x) ~ Gamma(nu)/2 (x/2)^-nu as x -> 0
        xs = x[bad] if val.ndim else x
        limit = math.lgamma(nu) - math.log(2.0) - nu * np.log(xs / 2.0)
        if val.ndim:
            val[bad] = limit
        else:
            val = limit
    return val if np.ndim(val) else float(val)


@dataclass(frozen=True)
class QuadratureSpec:
    """Integration domain and tolerance.

    ``domain`` is ``("finite", a, b)``, ``"semi_infinite"`` (0 to inf) or
    ``"real_line"``.  ``breakpoints`` are hints where the integrand peaks or
    changes character.
    """

    domain: tuple | str = "real_line"
    relative_tolerance: float = 1e-10
    max_refinements: int = 500
    absolute_tolerance: float = 0.0
    breakpoints: tuple = field(default=())

    def __post_init__(self):
        if not 1e-14 <= self.relative_tolerance <= 1e-4:
            raise ValueError("relative_tolerance must lie in [1e-14, 1e-4]")

    def bounds(self) -> tuple[float, float]:
        if self.domain == "semi_infinite":
            return 0.0, math.inf
        if self.domain == "real_line":
            return -math.inf, math.inf
        kind, a, b = self.domain
        if kind != "finite":
            raise ValueError(f"unknown domain {self.domain!r}")
        return float(a), float(b)


@dataclass(frozen=True)
class IntegrationResult:
    value: float
    error_estimate: float
    converged: bool
    message: str = ""

    def require(self) -> float:
        if not self.converged:
            raise QuadratureError(self.message or "quadrature did not converge")
        return self.value


def integrate(f: Callable[[float], float], spec: QuadratureSpec = QuadratureSpec()) -> IntegrationResult:
    """Adaptive Gauss-Kronrod quadrature over the domain in ``spec``.

    Infinite domains are split at the breakpoints (and at 0 for the real
    line) into finite and semi-infinite pieces.  Non-convergence is reported
    through ``converged``/``message`` and never swallowed.
    """
    lo, hi = spec.bounds()
    cuts = sorted(p for p in spec.breakpoints if lo < p < hi)
    if spec.domain == "real_line" and 0.0 not in cuts:
        cuts = sorted(cuts + [0.0])
    edges = [lo, *cuts, hi]

    total, err, ok, messages = 0.0, 0.0, True, []
    for a, b in zip(edges[:-1], edges[1:]):
        val, abserr, info, *rest = _integrate.quad(
            f, a, b, epsabs=spec.absolute_tolerance, epsrel=spec.relative_tolerance,
            limit=spec.max_refinements, full_output=1)
        total += val
        err += abserr
        if rest:
            ok = False
            messages.append(f"[{a}, {b}]: {rest[0].splitlines()[0]}")
    # quad may flag roundoff while still meeting the tolerance; trust the estimate then
    if not ok and err <= max(spec.relative_tolerance * abs(total), spec.absolute_tolerance):
        ok = True
    return IntegrationResult(total, err, ok, "; ".join(messages))
