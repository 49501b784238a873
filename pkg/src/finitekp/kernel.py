"""Single-cell physics of the finite Kronig-Penney chain.

A device of total length ``L`` holds ``N`` cells; each cell is a barrier of
height ``V`` and width ``lambda_n`` followed by a free well of width
``delta_n``, with ``lambda_n / delta_n = gamma``. Energies and lengths are in
model units (hbar^2/2m = 1), so ``k = sqrt(E)`` and ``z = sqrt(V - E)``.

The one-cell transfer matrix ``M`` is unimodular with ``m22 = conj(m11)`` and
``m21 = conj(m12)``. Its half-trace ``phi = Re m11`` and the factor ``c``
(``m12 = i c exp(-i k delta)``) drive everything downstream.
"""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import mat2
from .errors import DomainError

#: half-width (relative to max(1, V)) of the E ~ V window handled by series
EPS_V = 1e-8


@dataclass(frozen=True)
class ModelParams:
    """Barrier height ``v``, ratio ``gamma``, length ``l`` and cell count ``n``."""

    v: float
    gamma: float
    l: float
    n: int

    def __post_init__(self):
        if not (np.isfinite(self.v) and self.v >= 0):
            raise DomainError(f"barrier height must be >= 0, got {self.v}")
        if not (np.isfinite(self.gamma) and self.gamma >= 0):
            raise DomainError(f"gamma must be >= 0, got {self.gamma}")
        if not (np.isfinite(self.l) and self.l > 0):
            raise DomainError(f"length must be > 0, got {self.l}")
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"cell count must be a positive integer, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def delta_n(self) -> float:
        return self.l / ((1.0 + self.gamma) * self.n)

    @property
    def lambda_n(self) -> float:
        return self.gamma * self.l / ((1.0 + self.gamma) * self.n)

    @property
    def p_n(self) -> float:
        return self.l / self.n

    @property
    def e_o(self) -> float:
        return self.gamma * self.v / (1.0 + self.gamma)

    def with_n(self, n: int) -> "ModelParams":
        return ModelParams(self.v, self.gamma, self.l, n)


def cell_geometry(p: ModelParams):
    """Return ``(delta_n, lambda_n, p_n)``."""
    return p.delta_n, p.lambda_n, p.p_n


def e_threshold(p: ModelParams) -> float:
    """Continuum-limit barrier height ``E_o = gamma V / (1 + gamma)``."""
    return p.e_o


class WaveNumbers(NamedTuple):
    k: np.ndarray
    z: np.ndarray


def wave_numbers(e, p: ModelParams) -> WaveNumbers:
    """``k = sqrt(E)`` and complex ``z = sqrt(V - E)`` (imaginary above V)."""
    e = _check_energy(e)
    return WaveNumbers(np.sqrt(e)[()], np.sqrt((p.v - e).astype(complex))[()])


class PhiKernel(NamedTuple):
    phi: np.ndarray
    m11_im: np.ndarray
    c: np.ndarray
    m: np.ndarray


def _check_energy(e):
    e = np.asarray(e, dtype=float)
    if not np.all(np.isfinite(e)) or np.any(e <= 0):
        raise DomainError("energy must be finite and > 0")
    return e


def _barrier_factors(s, lam, eps):
    """``cosh(sqrt(s) lam)`` and ``sinh(sqrt(s) lam) / sqrt(s)`` for real ``s``.

    Both are entire functions of ``s``; negative ``s`` gives the
    trigonometric continuation and ``|s| <= eps`` a Taylor series.
    """
    s = np.asarray(s, dtype=float)
    ch = np.empty_like(s)
    sh = np.empty_like(s)
    above = s > eps
    below = s < -eps
    near = ~(above | below)

    r = np.sqrt(s[above])
    ch[above] = np.cosh(r * lam)
    sh[above] = np.sinh(r * lam) / r

    w = np.sqrt(-s[below])
    ch[below] = np.cos(w * lam)
    sh[below] = np.sin(w * lam) / w

    u = s[near] * lam * lam
    ch[near] = 1.0 + u / 2.0 + u * u / 24.0
    sh[near] = lam * (1.0 + u / 6.0 + u * u / 120.0)
    return ch, sh


def _cell_parts(e, v, delta, lam):
    k = np.sqrt(e)
    s = v - e
    ch, sh = _barrier_factors(s, lam, EPS_V * max(1.0, v))
    ckd = np.cos(k * delta)
    skd = np.sin(k * delta)
    mix = (s - k * k) / (2.0 * k)
    phi = ckd * ch + mix * skd * sh
    m11_im = -skd * ch + mix * ckd * sh
    c = v * sh / (2.0 * k)
    return phi, m11_im, c, ckd, skd


def phi_kernel(e, p: ModelParams) -> PhiKernel:
    """Half-trace, ``Im m11``, off-diagonal factor and full cell matrix.

    Vectorised over ``e``; the E < V, E > V and E ~ V regimes are all
    handled by the same real expressions.
    """
    e = _check_energy(e)
    phi, m11_im, c, ckd, skd = _cell_parts(e, p.v, p.delta_n, p.lambda_n)
    m11 = phi + 1j * m11_im
    m12 = c * (skd + 1j * ckd)
    m = mat2.mat2(m11, m12, np.conj(m12), np.conj(m11))
    return PhiKernel(phi[()], m11_im[()], c[()], m)


def phi_value(e, p: ModelParams):
    """Only the half-trace ``phi(E)``; cheaper than :func:`phi_kernel`."""
    e = _check_energy(e)
    return _cell_parts(e, p.v, p.delta_n, p.lambda_n)[0][()]


def m_matrix_product(e, p: ModelParams) -> np.ndarray:
    """Cell matrix assembled as an explicit product of T and Delta matrices.

    Independent of the closed-form entries in :func:`phi_kernel`; needs
    ``E != V`` and ``V > 0`` because ``T[z, 0]`` is singular at ``z = 0``.
    """
    e = _check_energy(e)
    k = np.sqrt(e).astype(complex)
    z = np.sqrt((p.v - e).astype(complex))
    ik = 1j * k
    t_ik = mat2.t_mat(ik, 0.0)
    t_z = mat2.t_mat(z, 0.0)
    return (mat2.delta_mat(-ik, p.delta_n) @ mat2.inv(t_ik) @ t_z
            @ mat2.delta_mat(-z, p.lambda_n) @ mat2.inv(t_z) @ t_ik)


@dataclass
class AmplitudeTrace:
    """Plane-wave and barrier amplitudes in every region of the device.

    ``plane_amps[l] = (A_2l, A_2l+1)`` multiplies ``(e^{ikx}, e^{-ikx})`` in
    absolute coordinates (``l = 0`` is the lead at ``x <= 0``, ``l = N`` the
    outgoing lead). ``barrier_amps[l - 1] = (b1, b2)`` multiplies
    ``(e^{z(x - x0)}, e^{-z(x - x0)})`` measured from the barrier's left node
    ``x0``; the local origin keeps the exponentials bounded for long devices.
    """

    k: float
    z: complex
    nodes: np.ndarray
    plane_amps: np.ndarray
    barrier_amps: np.ndarray

    @property
    def n(self) -> int:
        return len(self.barrier_amps)

    @property
    def transmission(self) -> float:
        return abs(self.plane_amps[-1, 0]) ** 2 / abs(self.plane_amps[0, 0]) ** 2

    def normalized(self) -> "AmplitudeTrace":
        """Rescale so the incoming amplitude ``A_0`` is real and equal to one."""
        scale = 1.0 / self.plane_amps[0, 0]
        return AmplitudeTrace(self.k, self.z, self.nodes,
                              self.plane_amps * scale, self.barrier_amps * scale)

    def _plane(self, idx, x):
        t = mat2.t_mat(1j * self.k, x)
        coef = self.plane_amps[idx]
        return t @ coef, np.abs(t[0]) @ np.abs(coef)

    def _barrier(self, idx, x):
        t = mat2.t_mat(self.z, x - self.nodes[2 * idx])
        coef = self.barrier_amps[idx]
        return t @ coef, np.abs(t[0]) @ np.abs(coef)

    def continuity_residuals(self) -> np.ndarray:
        """Relative mismatch of ``(psi, psi')`` at each node, shape ``(2N, 2)``.

        The mismatch is scaled by the larger term-wise magnitude of the two
        expansions meeting at the node (times ``|k|`` or ``|z|`` for the
        derivative), so it is a rounding-level quantity for a correct trace.
        """
        out = np.empty((2 * self.n, 2))
        for l in range(self.n):
            a, b = self.nodes[2 * l], self.nodes[2 * l + 1]
            pairs = ((self._plane(l, a), self._barrier(l, a), self.k),
                     (self._barrier(l, b), self._plane(l + 1, b), abs(self.z)))
            for j, ((lv, ls), (rv, rs), rate) in enumerate(pairs):
                scale = max(ls, rs)
                out[2 * l + j, 0] = abs(lv[0] - rv[0]) / scale
                out[2 * l + j, 1] = abs(lv[1] - rv[1]) / (rate * scale)
        return out

    def psi(self, x):
        """Wavefunction at scalar position ``x``."""
        if x <= 0:
            return self._plane(0, x)[0][0]
        if x > self.nodes[-1]:
            return self._plane(self.n, x)[0][0]
        i = int(np.searchsorted(self.nodes, x, side="left")) - 1
        l, in_well = divmod(i, 2)
        return (self._plane(l + 1, x) if in_well else self._barrier(l, x))[0][0]


def amplitude_trace(e: float, p: ModelParams, a_out: complex = 1.0) -> AmplitudeTrace:
    """Back-propagate ``(A_2N, A_2N+1) = (a_out, 0)`` through all cells.

    Matching ``psi`` and ``psi'`` at every node recovers the coefficients of
    every region, ending with the incident pair ``(A_0, A_1)``.
    """
    e = float(_check_energy(e))
    if abs(e - p.v) <= EPS_V * max(1.0, p.v):
        raise DomainError("amplitude trace undefined at E = V (z = 0)")
    if a_out == 0:
        raise DomainError("outgoing amplitude must be non-zero")
    if p.v == 0:
        # no barriers: a free wave passes through untouched
        z = 1j * np.sqrt(e)
    else:
        z = np.sqrt(complex(p.v - e))
    k = np.sqrt(e)
    lam = p.lambda_n
    n = p.n
    left = np.arange(n) * p.p_n
    nodes = np.empty(2 * n)
    nodes[0::2] = left
    nodes[1::2] = left + lam

    plane = np.zeros((n + 1, 2), dtype=complex)
    barrier = np.zeros((n, 2), dtype=complex)
    plane[n] = (a_out, 0.0)
    t_z0 = mat2.t_mat(z, 0.0)
    t_z_inv_lam = mat2.inv(mat2.t_mat(z, lam))
    for l in range(n - 1, -1, -1):
        edge = mat2.t_mat(1j * k, nodes[2 * l + 1]) @ plane[l + 1]
        barrier[l] = t_z_inv_lam @ edge
        start = t_z0 @ barrier[l]
        plane[l] = mat2.inv(mat2.t_mat(1j * k, nodes[2 * l])) @ start
    return AmplitudeTrace(k, z, nodes, plane, barrier)
