"""Exception types raised across the package."""


class QnloError(Exception):
    """Base class for all package errors."""


class InvalidFockIndex(QnloError, ValueError):
    """Index outside the allowed Fock set {0, 3, 4, 5, ...}."""


class DegenerateDivision(QnloError, ArithmeticError):
    """A non-zero amplitude would be divided by a vanishing f(n)."""


class QuadratureError(QnloError, ArithmeticError):
    """Adaptive quadrature exhausted its refinements without meeting tolerance."""


class ConvergenceError(QnloError, ArithmeticError):
    """A series or recursion did not converge within its term budget."""


class ConfigError(QnloError, ValueError):
    """Invalid run configuration (CLI)."""
