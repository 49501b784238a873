"""Band structure from the Bloch condition ``cos(xi p) = phi(E)``.

Allowed energies are those with ``|phi(E)| <= 1``. Band edges are located by
scanning ``|phi| - 1`` on a uniform energy grid and bisecting every sign
change; inside each Brillouin zone ``phi`` runs monotonically between ``+1``
and ``-1`` and ``E(xi)`` is recovered by bisection as well.

The same machinery serves the Dirac-comb model, whose left-hand side
``P sin(k delta)/(k delta) + cos(k delta)`` takes the place of ``phi`` and
whose period is ``delta``.
"""
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import BracketError, DomainError, ResolutionError
from .kernel import ModelParams, phi_value

GRID_FACTOR = 64
REFINE = 64
XI_STEPS = 129
EDGE_TOL = 1e-12
SOLVE_TOL = 1e-11
#: a local maximum of |phi| this close to 1 is a closed gap (zone boundary)
TOUCH_TOL = 1e-9
RESIDUAL_TOL = 1e-9


@dataclass
class Band:
    """One allowed band; ``zones`` are its monotone Brillouin-zone pieces.

    ``xi_samples`` is the reduced wavevector in ``[0, pi/period]``;
    ``xi_extended`` unfolds it into the extended-zone scheme.
    """

    index: int
    e_lo: float
    e_hi: float
    zones: List[Tuple[float, float]] = field(default_factory=list)
    zone_numbers: List[int] = field(default_factory=list)
    xi_samples: np.ndarray = field(default_factory=lambda: np.empty(0))
    e_samples: np.ndarray = field(default_factory=lambda: np.empty(0))
    xi_extended: np.ndarray = field(default_factory=lambda: np.empty(0))
    complete: bool = True


@dataclass
class BandStructure:
    n: Optional[int]
    period: float
    e_max: float
    bands: List[Band]
    gaps: List[Tuple[float, float]]

    def edges(self) -> np.ndarray:
        """Interior band edges (energies where ``|phi| = 1``), sorted."""
        pts = set()
        for b in self.bands:
            pts.update((b.e_lo, b.e_hi))
        for lo, hi in self.gaps:
            pts.update((lo, hi))
        pts.discard(0.0)
        pts.discard(self.e_max)
        return np.array(sorted(pts))


@dataclass(frozen=True)
class DiracCombParams:
    """Delta-barrier comb: strength ``P = Lambda delta / 2`` and spacing ``delta``."""

    p_strength: float
    delta: float

    def __post_init__(self):
        if not (np.isfinite(self.p_strength) and self.p_strength >= 0):
            raise DomainError("comb strength must be >= 0")
        if not (np.isfinite(self.delta) and self.delta > 0):
            raise DomainError("comb spacing must be > 0")

    @property
    def lambda_cap(self) -> float:
        return 2.0 * self.p_strength / self.delta

    @classmethod
    def from_intensity(cls, lambda_cap: float, delta: float) -> "DiracCombParams":
        return cls(lambda_cap * delta / 2.0, delta)


def dirac_comb_lhs(k, d: DiracCombParams):
    """``P sin(k delta)/(k delta) + cos(k delta)``."""
    kd = np.asarray(k, dtype=float) * d.delta
    if np.any(kd <= 0):
        raise DomainError("wavenumber must be > 0")
    return (d.p_strength * np.sin(kd) / kd + np.cos(kd))[()]


def continuum_dispersion(xi, e_o):
    """Continuum-limit dispersion ``E = E_o + xi^2``."""
    return e_o + np.asarray(xi, dtype=float) ** 2


def _bisect(f, lo, hi, f_lo_positive, tol):
    """Vectorised bisection of ``f(e, idx)`` on the brackets ``[lo, hi]``.

    ``idx`` holds the positions of the brackets being evaluated and
    ``f_lo_positive`` the sign of ``f`` at each ``lo``. Brackets are halved
    until narrower than ``tol`` or no longer splittable in floating point.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    f_lo_positive = np.broadcast_to(f_lo_positive, lo.shape)
    for _ in range(2100):
        mid = 0.5 * (lo + hi)
        active = np.flatnonzero((hi - lo > tol) & (mid > lo) & (mid < hi))
        if not active.size:
            break
        fm = f(mid[active], active)
        same = (fm > 0) == f_lo_positive[active]
        lo[active[same]] = mid[active[same]]
        hi[active[~same]] = mid[active[~same]]
    return 0.5 * (lo + hi)


def _gap_measure(phi_fn):
    return lambda e, idx=None: np.abs(phi_fn(e)) - 1.0


def _hidden_gap(phi_fn, a, b):
    """Look for ``|phi| > 1`` hiding between grid points ``a < b``.

    Returns ``("touch", E)``, ``("gap", (lo_bracket, hi_bracket) pairs)``
    or ``None``.
    """
    res = minimize_scalar(lambda e: -abs(float(phi_fn(e))), bounds=(a, b),
                          method="bounded", options={"xatol": 1e-15 * max(1.0, b)})
    peak = -res.fun
    if peak <= 1.0 - TOUCH_TOL:
        return None
    if peak <= 1.0 + TOUCH_TOL:
        # closed gap; rounding may leave |phi| a hair above one
        return "touch", float(res.x)
    # a gap lives inside the cell; resolve it by two refinement rounds
    lo, hi = a, b
    for _ in range(2):
        grid = np.linspace(lo, hi, REFINE + 1)
        g = np.abs(phi_fn(grid)) - 1.0
        inside = np.flatnonzero(g > 0)
        if inside.size:
            i0, i1 = inside[0], inside[-1]
            if i0 == 0 or i1 == len(grid) - 1:
                break
            return "gap", ((grid[i0 - 1], grid[i0]), (grid[i1], grid[i1 + 1]))
        j = int(np.clip(np.searchsorted(grid, res.x), 1, REFINE))
        lo, hi = grid[max(j - 1, 0)], grid[min(j + 1, REFINE)]
    raise ResolutionError(
        f"two band edges within one grid cell near E={res.x:.6g}; "
        "increase the grid density")


def _edges_generic(phi_fn: Callable, period: float, e_max: float, n_grid: int,
                   n: Optional[int]) -> BandStructure:
    if not e_max > 0:
        raise DomainError("e_max must be > 0")
    grid = np.linspace(0.0, e_max, n_grid + 1)[1:]
    phi = phi_fn(grid)
    gm = np.abs(phi) - 1.0
    in_gap = gm > 0
    measure = _gap_measure(phi_fn)

    brackets = []
    flips = np.flatnonzero(in_gap[1:] != in_gap[:-1])
    for i in flips:
        brackets.append((grid[i], grid[i + 1], bool(in_gap[i])))

    touches = []
    ap = np.abs(phi)
    peaks = np.flatnonzero((ap[1:-1] >= ap[:-2]) & (ap[1:-1] >= ap[2:]) & ~in_gap[1:-1]) + 1
    for i in peaks:
        found = _hidden_gap(phi_fn, grid[i - 1], grid[i + 1])
        if found is None:
            continue
        kind, where = found
        if kind == "touch":
            touches.append(where)
        else:
            (a0, a1), (b0, b1) = where
            brackets.append((a0, a1, False))
            brackets.append((b0, b1, True))

    brackets.sort()
    if brackets:
        lo = np.array([b[0] for b in brackets])
        hi = np.array([b[1] for b in brackets])
        pos = np.array([b[2] for b in brackets])
        edges = _bisect(measure, lo, hi, pos, 0.0)
    else:
        edges = np.empty(0)

    bounds = np.concatenate(([0.0], edges, [e_max]))
    state = bool(in_gap[0])
    bands, gaps = [], []
    for lo_e, hi_e in zip(bounds[:-1], bounds[1:]):
        if state:
            gaps.append((float(lo_e), float(hi_e)))
        else:
            bands.append(Band(len(bands) + 1, float(lo_e), float(hi_e),
                              complete=bool(hi_e < e_max)))
        state = not state

    touches = sorted(touches)
    for b in bands:
        cuts = [t for t in touches if b.e_lo < t < b.e_hi]
        pts = [b.e_lo] + cuts + [b.e_hi]
        b.zones = list(zip(pts[:-1], pts[1:]))
    _number_zones(phi_fn, bands)
    return BandStructure(n, period, e_max, bands, gaps)


def _zone_decreasing(phi_fn, lo, hi):
    q = phi_fn(np.array([lo + 0.25 * (hi - lo), lo + 0.75 * (hi - lo)]))
    return bool(q[0] > q[1])


def _number_zones(phi_fn, bands):
    """Assign extended-zone numbers: odd zones start at phi = +1."""
    last = 0
    for b in bands:
        b.zone_numbers = []
        for lo, hi in b.zones:
            want_odd = _zone_decreasing(phi_fn, lo, hi)
            z = last + 1
            if (z % 2 == 1) != want_odd:
                z += 1
            b.zone_numbers.append(z)
            last = z


def _grid_size(n, v, e_max):
    return int(GRID_FACTOR * n * (e_max / v + 1.0)) if v > 0 else int(GRID_FACTOR * n * (e_max + 1.0))


def band_edges(p: ModelParams, e_max: float) -> BandStructure:
    """Allowed bands and gaps of the N-cell model on ``(0, e_max]``.

    Only the edges are filled in; see :func:`band_structure` for samples.
    """
    n_grid = max(_grid_size(p.n, p.v, e_max), 1024)
    return _edges_generic(lambda e: phi_value(e, p), p.p_n, e_max, n_grid, p.n)


def comb_band_edges(d: DiracCombParams, e_max: float) -> BandStructure:
    """Band edges of the Dirac comb with ``phi`` replaced by the comb lhs."""
    zones = np.sqrt(e_max) * d.delta / np.pi
    n_grid = max(int(8 * GRID_FACTOR * (zones + 1.0)), 4096)
    fn = lambda e: dirac_comb_lhs(np.sqrt(e), d)
    return _edges_generic(fn, d.delta, e_max, n_grid, None)


def _zone_xi_range(phi_fn, period, lo, hi, decreasing, hi_is_edge):
    start = 1.0 if decreasing else -1.0
    end = -start if hi_is_edge else float(np.clip(phi_fn(np.array([hi]))[0], -1.0, 1.0))
    xi_lo = np.arccos(start) / period
    xi_hi = np.arccos(end) / period
    return xi_lo, xi_hi


def _solve_zone(phi_fn, period, lo, hi, xi):
    """Energies in zone ``[lo, hi]`` where ``phi(E) = cos(xi period)``.

    Raises :class:`BracketError` if a solution misses its target, which
    happens when ``phi`` is not monotone inside the zone.
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    target = np.cos(xi * period)
    decreasing = _zone_decreasing(phi_fn, lo, hi)
    f = lambda e, idx: phi_fn(e) - target[idx]
    e = _bisect(f, np.full(xi.shape, lo), np.full(xi.shape, hi), decreasing, SOLVE_TOL * 1e-3)
    # snap exact zone-boundary targets onto the boundary itself
    e = np.where(target == (1.0 if decreasing else -1.0), lo, e)
    check = e > 0
    if check.any():
        resid = np.abs(phi_fn(e[check]) - target[check])
        if resid.max() > RESIDUAL_TOL:
            raise BracketError(
                f"phi does not bracket cos(xi p) in zone [{lo:.6g}, {hi:.6g}] "
                f"(residual {resid.max():.3g}); phi is not monotone there")
    return e, decreasing


def _fill_band(phi_fn, period, band, xi_steps, e_max):
    xs, es, xext = [], [], []
    for (lo, hi), zone in zip(band.zones, band.zone_numbers):
        decreasing = _zone_decreasing(phi_fn, lo, hi)
        hi_is_edge = hi < e_max
        xi_lo, xi_hi = _zone_xi_range(phi_fn, period, lo, hi, decreasing, hi_is_edge)
        xi = np.linspace(min(xi_lo, xi_hi), max(xi_lo, xi_hi), xi_steps)
        e, _ = _solve_zone(phi_fn, period, lo, hi, xi)
        if not hi_is_edge:
            e = np.minimum(e, hi)
        order = np.diff(e)
        if not (np.all(order >= 0) if decreasing else np.all(order <= 0)):
            raise BracketError(f"non-monotone E(xi) in zone {zone}")
        xs.append(xi)
        es.append(e)
        zone_start = (zone - 1) * np.pi / period
        zone_end = zone * np.pi / period
        xext.append(zone_start + xi if zone % 2 == 1 else zone_end - xi)
    band.xi_samples = np.concatenate(xs)
    band.e_samples = np.concatenate(es)
    band.xi_extended = np.concatenate(xext)
    return band


def _structure(phi_fn, edges: BandStructure, xi_steps, max_bands):
    if xi_steps < 2:
        raise DomainError("need at least two xi samples per band")
    bands = edges.bands if max_bands is None else edges.bands[:max_bands]
    for b in bands:
        _fill_band(phi_fn, edges.period, b, xi_steps, edges.e_max)
    edges.bands = bands
    return edges


def band_structure(p: ModelParams, e_max: float, xi_steps: int = XI_STEPS,
                   max_bands: Optional[int] = None) -> BandStructure:
    """Band edges plus ``(xi, E)`` samples of every band below ``e_max``."""
    edges = band_edges(p, e_max)
    return _structure(lambda e: phi_value(e, p), edges, xi_steps, max_bands)


def comb_band_structure(d: DiracCombParams, e_max: float, xi_steps: int = XI_STEPS,
                        max_bands: Optional[int] = None) -> BandStructure:
    edges = comb_band_edges(d, e_max)
    fn = lambda e: dirac_comb_lhs(np.sqrt(e), d)
    return _structure(fn, edges, xi_steps, max_bands)


def _edges_covering(p: ModelParams, band_index: int) -> BandStructure:
    e_max = p.e_o + (band_index * np.pi / p.p_n) ** 2 + p.v + 1.0
    for _ in range(40):
        bs = band_edges(p, e_max)
        complete = [b for b in bs.bands if b.complete]
        if len(complete) >= band_index:
            return bs
        e_max *= 2.0
    raise DomainError(f"band {band_index} not found")


def band_solve(p: ModelParams, band_index: int, xi, *, zone: int = 0,
               structure: Optional[BandStructure] = None):
    """Energy of band ``band_index`` (1-based) at reduced wavevector ``xi``.

    ``xi`` may be an array and must lie in ``[0, pi/p_n]``. ``zone`` picks
    the Brillouin-zone piece for bands that span several zones (closed gaps,
    e.g. ``gamma = 0``). Pass a precomputed ``structure`` to avoid
    rescanning the edges.
    """
    xi_arr = np.asarray(xi, dtype=float)
    if np.any(xi_arr < 0) or np.any(xi_arr > np.pi / p.p_n * (1 + 1e-12)):
        raise DomainError("xi must lie in [0, pi/p_n]")
    bs = structure if structure is not None else _edges_covering(p, band_index)
    if not 1 <= band_index <= len(bs.bands):
        raise DomainError(f"band {band_index} outside the computed structure")
    band = bs.bands[band_index - 1]
    lo, hi = band.zones[zone]
    e, _ = _solve_zone(lambda x: phi_value(x, p), p.p_n, lo, hi, np.minimum(xi_arr, np.pi / p.p_n))
    return e.reshape(xi_arr.shape)[()]
