"""Chebyshev polynomials of the second kind, ``U_n(x)``, for any real ``x``.

Three regimes:

* ``|x| < 1``: ``sin((n+1) t) / sin t`` with ``t = arccos x``;
* ``|x| > 1``: ``s^n sinh((n+1) a) / sinh a`` with ``a = arccosh|x|``,
  ``s = sign x``; the logarithm of the magnitude is formed directly so it
  stays finite when the value itself overflows;
* ``|x|`` within ``EPS_B`` of 1: the exact Taylor expansion about ``+-1``.

The three-term recurrence ``U_n = 2x U_{n-1} - U_{n-2}`` is kept as an
independent reference.
"""
import math
from typing import NamedTuple

import numpy as np

from . import mat2
from .errors import ChebyshevOverflowError, DomainError

EPS_B = 1e-7
MAX_LINEAR = 1e280


class ChebValue(NamedTuple):
    """``value = sign * exp(log_abs)``; ``value`` may be +-inf on overflow."""

    value: np.ndarray
    log_abs: np.ndarray
    sign: np.ndarray


def cheb_u_recurrence(n: int, x, dtype=float):
    """``U_n(x)`` by the plain three-term recurrence (reference path)."""
    x = np.asarray(x, dtype=dtype)
    if n == -1:
        return np.zeros_like(x)[()]
    prev, cur = np.zeros_like(x), np.ones_like(x)
    for _ in range(n):
        prev, cur = cur, 2 * x * cur - prev
    return cur[()]


def _trig(n, x):
    t = np.arccos(x)
    return np.sin((n + 1) * t) / np.sin(t)


def _log_hyp(n, ax):
    """``log(sinh((n+1)a) / sinh a)`` for ``ax = |x| > 1``."""
    a = np.arccosh(ax)
    b = (n + 1) * a
    return b + np.log1p(-np.exp(-2 * b)) - np.log(2 * np.sinh(a))


def _hyp(n, x):
    """Magnitude of the hyperbolic form, computed linearly where it fits."""
    ax = np.abs(x)
    a = np.arccosh(ax)
    b = (n + 1) * a
    with np.errstate(over="ignore"):
        direct = np.sinh(b) / np.sinh(a)
    return np.where(b < 700, direct, np.exp(np.minimum(_log_hyp(n, ax), 709.7)))


def _confluent(n, t):
    """``U_n(1 + t) = sum_j 2^j C(n+j+1, 2j+1) t^j``, summed to convergence.

    Accurate while ``n^2 |t|`` is small; callers switch to the closed forms
    beyond that.
    """
    t = np.asarray(t, dtype=float)
    term = np.full_like(t, n + 1.0)
    total = term.copy()
    for j in range(n):
        # ratio of consecutive coefficients 2^j C(n+j+1, 2j+1)
        term = term * t * 2.0 * (n + j + 2) * (n - j) / ((2 * j + 2) * (2 * j + 3))
        total = total + term
        if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
    return total


def cheb_u(n: int, x) -> ChebValue:
    """Evaluate ``U_n(x)`` with regime dispatch; ``n = -1`` gives zero.

    Vectorised over ``x``.
    """
    if n < -1:
        raise DomainError("degree must be >= -1")
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("x must be finite")
    if n == -1:
        zero = np.zeros_like(x)
        return ChebValue(zero[()], np.full_like(x, -np.inf)[()], zero[()])
    if n == 0:
        one = np.ones_like(x)
        return ChebValue(one[()], np.zeros_like(x)[()], one[()])

    ax = np.abs(x)
    s = np.where(x < 0, -1.0, 1.0)
    parity = s ** n
    value = np.empty_like(x)
    log_abs = np.empty_like(x)

    inside = ax <= 1 - EPS_B
    outside = ax >= 1 + EPS_B
    near = ~(inside | outside)

    if inside.any():
        v = _trig(n, x[inside])
        value[inside] = v
        with np.errstate(divide="ignore"):
            log_abs[inside] = np.log(np.abs(v))
    if outside.any():
        log_abs[outside] = _log_hyp(n, ax[outside])
        with np.errstate(over="ignore"):
            mag = np.where(log_abs[outside] < 700, _hyp(n, ax[outside]),
                           np.exp(log_abs[outside]))
        value[outside] = parity[outside] * mag
    if near.any():
        t = ax[near] - 1.0
        small = (n * n) * np.abs(t) <= 0.5
        mag = np.empty_like(t)
        mag[small] = _confluent(n, t[small])
        up = ~small & (t > 0)
        down = ~small & (t < 0)
        mag[up] = _hyp(n, 1.0 + t[up])
        mag[down] = _trig(n, 1.0 + t[down])
        value[near] = parity[near] * mag
        with np.errstate(divide="ignore"):
            log_abs[near] = np.log(np.abs(mag))
    sign = np.sign(value)
    return ChebValue(value[()], log_abs[()], sign[()])


def m_power_cheb(kern, n: int) -> np.ndarray:
    """``M^n = U_{n-1}(phi) M - U_{n-2}(phi) I`` for a unimodular cell matrix.

    ``kern`` is a :class:`~finitekp.kernel.PhiKernel` (any object with ``m``
    and ``phi``). Raises :class:`ChebyshevOverflowError` when ``|U_{n-1}|``
    exceeds 1e280.
    """
    if n < 1:
        raise DomainError("power must be >= 1")
    phi = kern.phi
    u1 = cheb_u(n - 1, phi)
    if np.any(u1.log_abs > math.log(MAX_LINEAR)):
        raise ChebyshevOverflowError(
            "U_{n-1} too large for a linear-scale matrix power; "
            "use the log-domain transmission instead")
    u2 = np.asarray(cheb_u(n - 2, phi).value)[..., None, None]
    u1 = np.asarray(u1.value)[..., None, None]
    m = np.asarray(kern.m, dtype=complex)
    return u1 * m - u2 * mat2.identity(m.shape[:-2])
