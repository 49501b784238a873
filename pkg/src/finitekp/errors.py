"""Exception types raised by the library."""


class DomainError(ValueError):
    """Input outside the physical or mathematical domain of an operation."""


class SingularMatrixError(ArithmeticError):
    """Matrix inverse requested for a (numerically) singular matrix."""


class ChebyshevOverflowError(OverflowError):
    """Linear-scale Chebyshev value too large; use the log-domain path."""


class ResolutionError(RuntimeError):
    """Band-edge scan could not separate two edges on the energy grid."""


class BracketError(RuntimeError):
    """Root is not bracketed inside a band (non-monotone dispersion)."""
