import numpy as np
import pytest

from finitekp import (DiracCombParams, ModelParams, band_edges, band_solve, band_structure,
                      comb_band_structure, continuum_dispersion, dirac_comb_lhs, phi_value)
from finitekp import dispersion
from finitekp.errors import BracketError, DomainError, ResolutionError


def test_free_particle_single_band():
    p = ModelParams(0.0, 0.1, 50.0, 10)
    bs = band_edges(p, 20.0)
    assert len(bs.bands) == 1 and not bs.gaps
    assert bs.bands[0].e_lo == 0.0 and bs.bands[0].e_hi == 20.0
    # closed gaps survive as zone boundaries at (j pi / p)^2
    inner = [hi for lo, hi in bs.bands[0].zones[:-1]]
    np.testing.assert_allclose(inner, (np.arange(1, len(inner) + 1) * np.pi / p.p_n) ** 2,
                               rtol=1e-8)


def test_free_particle_parabola():
    p = ModelParams(0.0, 0.0, 40.0, 8)
    bs = band_structure(p, 3.0, xi_steps=33)
    b = bs.bands[0]
    # zone boundaries are quadratic maxima of |phi|, located to ~sqrt(eps)
    np.testing.assert_allclose(b.e_samples, b.xi_extended ** 2, rtol=1e-7, atol=1e-12)


def test_edge_residuals_and_tiling(ref_chain):
    p = ref_chain(50)
    bs = band_edges(p, 40.0)
    edges = bs.edges()
    assert np.max(np.abs(np.abs(phi_value(edges, p)) - 1)) <= 1e-9
    spans = sorted([(b.e_lo, b.e_hi) for b in bs.bands] + list(bs.gaps))
    assert spans[0][0] == 0.0 and spans[-1][1] == 40.0
    assert all(a[1] == b[0] for a, b in zip(spans[:-1], spans[1:]))
    # bands and gaps alternate
    kinds = sorted([(b.e_lo, "b") for b in bs.bands] + [(g[0], "g") for g in bs.gaps])
    assert all(x[1] != y[1] for x, y in zip(kinds[:-1], kinds[1:]))


def test_band_samples(ref_chain):
    p = ref_chain(50)
    bs = band_structure(p, 30.0, xi_steps=65)
    for i, b in enumerate(bs.bands):
        phi = phi_value(b.e_samples[b.e_samples > 0], p)
        assert np.all(np.abs(phi) <= 1 + 1e-10)
        xi = b.xi_samples[b.e_samples > 0]
        assert np.max(np.abs(phi - np.cos(xi * p.p_n))) <= 1e-9
        steps = np.diff(b.e_samples)
        assert np.all(steps >= 0) if i % 2 == 0 else np.all(steps <= 0)


def test_band_solve_edges(ref_chain):
    p = ref_chain(50)
    bs = band_edges(p, 30.0)
    for idx in (1, 2, 3, 6):
        b = bs.bands[idx - 1]
        at0, atpi = band_solve(p, idx, [0.0, np.pi / p.p_n], structure=bs)
        lo_first = idx % 2 == 1
        assert at0 == pytest.approx(b.e_lo if lo_first else b.e_hi, rel=1e-12)
        assert atpi == pytest.approx(b.e_hi if lo_first else b.e_lo, rel=1e-12)


def test_band_solve_without_structure(ref_chain):
    p = ref_chain(20)
    e = band_solve(p, 2, 0.3 / p.p_n)
    assert phi_value(e, p) == pytest.approx(np.cos(0.3), abs=1e-9)
    with pytest.raises(DomainError):
        band_solve(p, 1, -0.1)


def test_lowest_edge_approaches_threshold(ref_chain):
    gaps = []
    for n in (50, 200, 2000):
        p = ref_chain(n)
        gaps.append(abs(band_edges(p, 3.0).bands[0].e_lo - p.e_o))
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] <= 0.01 * ref_chain(2000).e_o


def test_dispersion_tends_to_continuum(ref_chain):
    devs = []
    for n in (200, 2000):
        p = ref_chain(n)
        xi = np.linspace(0.0, 0.2, 21)
        e = band_solve(p, 1, xi)
        ref = continuum_dispersion(xi, p.e_o)
        devs.append(np.max(np.abs(e - ref) / ref))
    assert devs[1] < devs[0]
    assert devs[1] <= 0.02


def test_continuum_dispersion():
    assert continuum_dispersion(0.0, 2.5) == 2.5
    np.testing.assert_allclose(continuum_dispersion([0.5, 2.0], 0.0), [0.25, 4.0])
    assert continuum_dispersion(1.2, 1.1961722) == pytest.approx(2.6361722, abs=1e-12)


def test_comb_lhs():
    d0 = DiracCombParams(0.0, 2.0)
    k = np.linspace(0.1, 5, 11)
    np.testing.assert_allclose(dirac_comb_lhs(k, d0), np.cos(2 * k), atol=1e-15)
    assert dirac_comb_lhs(1e-9, DiracCombParams(1.5, 1.0)) == pytest.approx(2.5, abs=1e-12)
    assert dirac_comb_lhs(np.pi / 3, DiracCombParams(1.5, 3.0)) == pytest.approx(-1.0, abs=1e-15)


def test_comb_params():
    d = DiracCombParams.from_intensity(0.7, 3.0)
    assert d.p_strength == pytest.approx(0.7 * 3.0 / 2, rel=1e-14)
    assert d.lambda_cap == pytest.approx(0.7, rel=1e-14)
    with pytest.raises(DomainError):
        DiracCombParams(-1.0, 1.0)


def test_comb_bands():
    free = comb_band_structure(DiracCombParams(0.0, 10.0), 1.0, xi_steps=9)
    assert len(free.bands) == 1 and not free.gaps
    strong = comb_band_structure(DiracCombParams(5.0, 10.0), 1.0, xi_steps=9)
    assert len(strong.gaps) >= 3
    # gaps open just above the free-particle zone boundaries (j pi / delta)^2
    for j, (lo, hi) in enumerate(strong.gaps[1:4], start=1):
        assert lo == pytest.approx((j * np.pi / 10.0) ** 2, rel=1e-9)


def test_resolution_error():
    # |phi| pokes above one over ~1e-5, far below two refinements of a 0.1 grid
    phi = lambda e: 0.5 + (0.5 + 1e-7) / (1 + ((np.asarray(e) - 0.537) / 0.01) ** 2)
    with pytest.raises(ResolutionError):
        dispersion._edges_generic(phi, 1.0, 1.0, 10, None)


def test_bracket_error():
    # dips to 0.5 and climbs back: cos(xi p) = -0.9 has no solution
    phi = lambda e: 1.0 - 0.5 * np.sin(np.pi * np.asarray(e) ** 2)
    with pytest.raises(BracketError):
        dispersion._solve_zone(phi, 1.0, 0.0, 1.0, np.array([np.arccos(-0.9)]))


def test_bad_inputs(ref_chain):
    with pytest.raises(DomainError):
        band_edges(ref_chain(10), 0.0)
    with pytest.raises(DomainError):
        band_structure(ref_chain(10), 5.0, xi_steps=1)
