"""Transmission and Landauer resistivity of the finite chain and its limit.

With ``X = (c U_{N-1}(phi))^2`` the finite-N results are ``S_N = 1/(1+X)``
and ``rho_N = X``. Inside band gaps ``U_{N-1}`` grows like ``exp(N a)`` and
``X`` leaves the double range long before the physics gets interesting, so
both are also reported as base-10 logarithms built from ``log|c|`` and
``log|U|`` without ever forming ``X``.

The continuum limit (``N -> oo`` with ``L`` and ``gamma`` fixed) behaves like
a single uniform barrier of height ``E_o = gamma V / (1 + gamma)``:
``X_bar = E_o^2 g(E)^2 / (4E)`` with ``g = sin(L q)/q``, ``q = sqrt(E - E_o)``
(continued to ``sinh`` below ``E_o``).
"""
import math
from typing import NamedTuple

import numpy as np

from . import mat2
from .chebyshev import cheb_u
from .errors import DomainError
from .kernel import ModelParams, _cell_parts, _check_energy, phi_kernel

LN10 = math.log(10.0)
#: E ~ E_o window (relative to max(1, E_o)) where g uses its Taylor series
EPS_C = 1e-8
#: resonance flag threshold on |U_{N-1}|, per cell
RESONANCE_TOL = 1e-12
# beyond this natural log, X is handled in the log domain only
_LOG_LINEAR_MAX = 700.0


class Transmission(NamedTuple):
    s: np.ndarray
    log10_s: np.ndarray
    resonance: np.ndarray


class Resistivity(NamedTuple):
    rho: np.ndarray
    log10_rho: np.ndarray


def _from_log_odds(log_x, x_lin):
    """Transmission and resistivity from ``ln X`` (and ``X`` where it fits)."""
    log_x = np.asarray(log_x, dtype=float)
    linear = log_x < _LOG_LINEAR_MAX
    x_safe = np.where(linear, x_lin, 0.0)
    with np.errstate(over="ignore"):
        log10_s = np.where(
            linear, -np.log1p(x_safe) / LN10,
            -(log_x + np.log1p(np.exp(-np.where(linear, 0.0, log_x)))) / LN10)
        s = np.where(linear, 1.0 / (1.0 + x_safe), 10.0 ** log10_s)
        rho = np.where(linear, x_safe, np.exp(log_x))
    return s, log10_s, rho, log_x / LN10


def _log_abs(x):
    with np.errstate(divide="ignore"):
        return np.log(np.abs(x))


def _finite_n(e, p: ModelParams):
    e = _check_energy(e)
    phi, _, c, _, _ = _cell_parts(e, p.v, p.delta_n, p.lambda_n)
    u = cheb_u(p.n - 1, phi)
    log_x = 2.0 * (_log_abs(c) + u.log_abs)
    with np.errstate(over="ignore", invalid="ignore"):
        x_lin = np.where(log_x < _LOG_LINEAR_MAX, (c * np.asarray(u.value)) ** 2, 0.0)
    resonance = np.abs(u.value) <= RESONANCE_TOL * p.n
    return log_x, x_lin, resonance


def transmission_n(e, p: ModelParams) -> Transmission:
    """Exact finite-N transmission ``S_N = [1 + (c U_{N-1}(phi))^2]^-1``."""
    log_x, x_lin, resonance = _finite_n(e, p)
    s, log10_s, _, _ = _from_log_odds(log_x, x_lin)
    return Transmission(s[()], log10_s[()], resonance[()])


def resistivity_n(e, p: ModelParams) -> Resistivity:
    """Landauer resistivity ``rho_N = (1 - S_N) / S_N``."""
    log_x, x_lin, _ = _finite_n(e, p)
    _, _, rho, log10_rho = _from_log_odds(log_x, x_lin)
    return Resistivity(rho[()], log10_rho[()])


def transmission_matrix_power(e, p: ModelParams):
    """``1 / |(M^N)_11|^2`` with ``M^N`` from binary exponentiation.

    Independent of the Chebyshev route; overflows inside deep gaps.
    """
    m = phi_kernel(e, p).m
    mn = mat2.mat_power_direct(m, p.n)
    return (1.0 / np.abs(mn[..., 0, 0]) ** 2)[()]


def _log_g(e, e_o, l):
    """``ln|g|`` and ``g`` (``g`` only where it is representable)."""
    q2 = e - e_o
    eps = EPS_C * max(1.0, e_o)
    g = np.empty_like(e)
    log_g = np.empty_like(e)

    above = q2 > eps
    below = q2 < -eps
    near = ~(above | below)

    q = np.sqrt(q2[above])
    g[above] = np.sin(l * q) / q
    log_g[above] = _log_abs(g[above])

    q = np.sqrt(-q2[below])
    b = l * q
    log_g[below] = b + np.log1p(-np.exp(-2 * b)) - math.log(2.0) - np.log(q)
    with np.errstate(over="ignore"):
        g[below] = np.where(b < _LOG_LINEAR_MAX, np.sinh(np.minimum(b, _LOG_LINEAR_MAX)) / q, np.inf)

    g[near] = l * (1.0 - q2[near] * l * l / 6.0)
    log_g[near] = np.log(g[near])
    return log_g, g


def _limit_check(e, gamma, v, l):
    e = _check_energy(e)
    if not (gamma >= 0 and v >= 0 and l > 0):
        raise DomainError("need gamma >= 0, v >= 0, l > 0")
    return e


def transmission_limit(e, gamma: float, v: float, l: float) -> Transmission:
    """Continuum-limit transmission ``S_bar = [1 + E_o^2 g^2 / (4E)]^-1``."""
    e = _limit_check(e, gamma, v, l)
    e_o = gamma * v / (1.0 + gamma)
    log_g, g = _log_g(e, e_o, l)
    log_x = 2.0 * (_log_abs(e_o) + log_g) - np.log(4.0 * e)
    with np.errstate(over="ignore", invalid="ignore"):
        x_lin = np.where(log_x < _LOG_LINEAR_MAX, e_o * e_o * g * g / (4.0 * e), 0.0)
    s, log10_s, _, _ = _from_log_odds(log_x, x_lin)
    resonance = (g == 0) | (e_o == 0)
    return Transmission(s[()], log10_s[()], np.broadcast_to(resonance, s.shape)[()])


def resistivity_limit(e, gamma: float, v: float, l: float) -> Resistivity:
    """Continuum-limit resistivity ``(V gamma)^2 / (1+gamma)^2 g^2 / (4E)``."""
    e = _limit_check(e, gamma, v, l)
    e_o = gamma * v / (1.0 + gamma)
    pref = (v * gamma) ** 2 / (1.0 + gamma) ** 2
    log_g, g = _log_g(e, e_o, l)
    with np.errstate(divide="ignore"):
        log_x = np.log(pref) + 2.0 * log_g - np.log(4.0 * e)
    with np.errstate(over="ignore", invalid="ignore"):
        x_lin = np.where(log_x < _LOG_LINEAR_MAX, pref * g * g / (4.0 * e), 0.0)
    _, _, rho, log10_rho = _from_log_odds(log_x, x_lin)
    return Resistivity(rho[()], log10_rho[()])
