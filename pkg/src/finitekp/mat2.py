"""Complex 2x2 matrix algebra.

Matrices are plain ``numpy`` arrays of shape ``(..., 2, 2)`` and dtype
``complex128``; every function broadcasts over the leading axes so a whole
energy grid of transfer matrices can be handled in one call.
"""
from typing import NamedTuple

import numpy as np

from .errors import DomainError, SingularMatrixError

SINGULAR_DET = 1e-300


class EigenPair(NamedTuple):
    mu1: complex
    mu2: complex


def mat2(a11, a12, a21, a22) -> np.ndarray:
    """Assemble ``[[a11, a12], [a21, a22]]`` (entries may be arrays)."""
    a11, a12, a21, a22 = np.broadcast_arrays(
        *(np.asarray(a, dtype=complex) for a in (a11, a12, a21, a22)))
    out = np.empty(a11.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = a11
    out[..., 0, 1] = a12
    out[..., 1, 0] = a21
    out[..., 1, 1] = a22
    return out


def identity(shape=()) -> np.ndarray:
    out = np.zeros(tuple(shape) + (2, 2), dtype=complex)
    out[..., 0, 0] = 1.0
    out[..., 1, 1] = 1.0
    return out


def _exp_pair(alpha, x):
    with np.errstate(invalid="ignore", over="ignore"):
        ax = np.asarray(alpha, dtype=complex) * np.asarray(x, dtype=float)
    if not np.all(np.isfinite(ax)):
        raise DomainError("non-finite exponent alpha*x")
    with np.errstate(over="raise", invalid="raise"):
        try:
            return np.exp(ax), np.exp(-ax)
        except FloatingPointError as exc:
            raise DomainError(f"exponent alpha*x overflows: {exc}") from None


def delta_mat(alpha, x) -> np.ndarray:
    """``diag(exp(alpha x), exp(-alpha x))``."""
    ep, em = _exp_pair(alpha, x)
    return mat2(ep, 0.0, 0.0, em)


def t_mat(alpha, x) -> np.ndarray:
    """Value/derivative matrix of ``a exp(alpha x) + b exp(-alpha x)``.

    Rows are ``(e^{ax}, e^{-ax})`` and ``(a e^{ax}, -a e^{-ax})`` so that
    ``t_mat(alpha, x) @ (a, b)`` gives ``(psi(x), psi'(x))``.
    """
    alpha = np.asarray(alpha, dtype=complex)
    if np.any(alpha == 0):
        raise DomainError("t_mat is singular for alpha = 0")
    ep, em = _exp_pair(alpha, x)
    return mat2(ep, em, alpha * ep, -alpha * em)


def mul(a, b) -> np.ndarray:
    return np.matmul(a, b)


def det(a):
    a = np.asarray(a)
    return a[..., 0, 0] * a[..., 1, 1] - a[..., 0, 1] * a[..., 1, 0]


def inv(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    d = det(a)
    if np.any(np.abs(d) <= SINGULAR_DET):
        raise SingularMatrixError("matrix determinant below 1e-300")
    return mat2(a[..., 1, 1] / d, -a[..., 0, 1] / d,
                -a[..., 1, 0] / d, a[..., 0, 0] / d)


def mat_power_direct(m, n: int) -> np.ndarray:
    """``m**n`` by binary exponentiation (used as an independent oracle)."""
    if n < 0:
        raise DomainError("power must be non-negative")
    m = np.asarray(m, dtype=complex)
    result = identity(m.shape[:-2])
    base = m
    while n:
        if n & 1:
            result = result @ base
        n >>= 1
        if n:
            base = base @ base
    return result


def eigenvalues_sl2(phi) -> EigenPair:
    """Eigenvalues of a unimodular matrix with half-trace ``phi``.

    Returns ``(phi - sqrt(phi^2 - 1), phi + sqrt(phi^2 - 1))`` with the
    principal complex root inside ``|phi| < 1``.
    """
    phi = np.asarray(phi, dtype=float)
    if not np.all(np.isfinite(phi)):
        raise DomainError("phi must be finite")
    root = np.sqrt(phi.astype(complex) ** 2 - 1.0)
    mu1 = phi - root
    mu2 = phi + root
    # the small-modulus root suffers cancellation; take it as 1/big
    swap = np.abs(mu1) > np.abs(mu2)
    big = np.where(swap, mu1, mu2)
    small = 1.0 / big
    mu1 = np.where(swap, big, small)
    mu2 = np.where(swap, small, big)
    return EigenPair(mu1[()], mu2[()])
