import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from finitekp import (ModelParams, amplitude_trace, cell_geometry, e_threshold,
                      phi_kernel, phi_value, transmission_n, units, wave_numbers)
from finitekp import mat2
from finitekp.errors import DomainError
from finitekp.kernel import m_matrix_product
from finitekp.selfcheck import branch_jump

params = st.builds(
    ModelParams,
    st.floats(0.5, 20.0), st.floats(0.05, 2.0), st.floats(1.0, 50.0), st.integers(1, 64))


@pytest.mark.parametrize("gamma, l, n, expect", [
    (0.1, 500.0, 100, (50 / 11, 5 / 11, 5.0)),
    (0.0, 10.0, 5, (2.0, 0.0, 2.0)),
    (1.0, 8.0, 4, (1.0, 1.0, 2.0)),
])
def test_cell_geometry(gamma, l, n, expect):
    got = cell_geometry(ModelParams(1.0, gamma, l, n))
    np.testing.assert_allclose(got, expect, rtol=1e-14)


def test_e_threshold(ref_chain):
    assert e_threshold(ref_chain(100)) == pytest.approx(1.1961722488038278, rel=1e-14)
    assert e_threshold(ModelParams(7.0, 0.0, 1.0, 1)) == 0.0
    assert e_threshold(ModelParams(1.0, 1e9, 1.0, 1)) == pytest.approx(1.0, rel=1e-8)


@pytest.mark.parametrize("bad", [dict(v=-1.0), dict(gamma=-0.1), dict(l=0.0), dict(n=0),
                                 dict(n=2.5), dict(v=np.nan)])
def test_params_validation(bad):
    kw = dict(v=1.0, gamma=0.1, l=10.0, n=3)
    kw.update(bad)
    with pytest.raises(DomainError):
        ModelParams(**kw)


@given(params)
def test_geometry_tiles_length(p):
    assert abs(p.n * (p.delta_n + p.lambda_n) - p.l) <= 1e-12 * p.l
    assert 0 <= p.e_o <= p.v


@given(params, st.floats(1e-3, 2.0))
def test_wave_numbers(p, frac):
    w = wave_numbers(frac * p.v, p)
    assert w.k >= 0
    assert abs(w.z ** 2 + w.k ** 2 - p.v) <= 1e-12 * p.v


def test_free_particle():
    p = ModelParams(0.0, 0.3, 20.0, 4)
    e = np.array([0.1, 1.0, 7.3])
    kern = phi_kernel(e, p)
    np.testing.assert_allclose(kern.phi, np.cos(np.sqrt(e) * p.p_n), atol=1e-14)
    np.testing.assert_array_equal(kern.c, 0.0)


def test_at_barrier_top():
    p = ModelParams(4.0, 0.5, 12.0, 3)
    k = 2.0
    expect = np.cos(k * p.delta_n) - k * p.lambda_n / 2 * np.sin(k * p.delta_n)
    assert phi_value(4.0, p) == pytest.approx(expect, abs=1e-14)


def test_matches_matrix_product(ref_chain):
    p = ref_chain(100)
    m = phi_kernel(2.0, p).m
    ref = m_matrix_product(2.0, p)
    assert np.max(np.abs(m - ref)) <= 1e-12
    assert abs(ref[1, 1] - np.conj(ref[0, 0])) <= 1e-12
    assert abs(ref[1, 0] - np.conj(ref[0, 1])) <= 1e-12


def test_rejects_nonpositive_energy(ref_chain):
    for e in (0.0, -1.0, np.nan):
        with pytest.raises(DomainError):
            phi_kernel(e, ref_chain(10))


@settings(max_examples=200)
@given(params, st.floats(1e-3, 2.0))
def test_kernel_invariants(p, frac):
    kern = phi_kernel(frac * p.v, p)
    m = kern.m
    assert m[1, 1] == np.conj(m[0, 0]) and m[1, 0] == np.conj(m[0, 1])
    assert m[0, 0].real == kern.phi and m[0, 0].imag == kern.m11_im
    scale = max(1.0, abs(m[0, 0]) ** 2)
    assert abs(mat2.det(m) - 1) <= 1e-12 * scale
    assert abs(abs(m[0, 0]) ** 2 - abs(m[0, 1]) ** 2 - 1) <= 1e-10 * scale


def test_det_random_sweep(rng):
    # rounding in det grows like eps |m11|^2; keep cells of modest opacity
    worst = 0.0
    for _ in range(1000):
        p = ModelParams(rng.uniform(0.5, 20), rng.uniform(0.05, 2), rng.uniform(1, 50),
                        int(rng.integers(8, 65)))
        m = phi_kernel(rng.uniform(1e-3, 2) * p.v, p).m
        if abs(m[0, 0]) < 10:
            worst = max(worst, abs(mat2.det(m) - 1))
    assert worst <= 1e-12


@pytest.mark.parametrize("v", [0.5, 13.157894736842104, 40.0])
@pytest.mark.parametrize("n", [1, 10, 100])
def test_branch_continuity(v, n):
    assert branch_jump(ModelParams(v, 0.1, 500.0, n)) <= 1.0


@pytest.mark.parametrize("e", [0.5, 3.0])
def test_small_cell_asymptotics(ref_chain, e):
    """``N^2 (1 - phi)`` tends to ``(E - E_o) L^2 / 2`` with a 1/N^2 error."""
    scaled = []
    for n in (10 ** 3, 10 ** 4, 10 ** 5):
        p = ref_chain(n)
        limit = (e - p.e_o) * p.l ** 2 / 2
        err = abs(n * n * (1 - phi_value(e, p)) - limit) / abs(limit)
        scaled.append(err * n * n)
    c = scaled[-1]
    assert all(abs(s - c) <= 0.05 * c for s in scaled)


def test_trace_free_particle():
    p = ModelParams(0.0, 0.2, 30.0, 5)
    tr = amplitude_trace(1.7, p, a_out=0.3 + 0.4j)
    np.testing.assert_allclose(np.abs(tr.plane_amps[:, 0]), 0.5, rtol=1e-12)
    np.testing.assert_allclose(np.abs(tr.plane_amps[:, 1]), 0.0, atol=1e-12)


def test_trace_single_barrier():
    v, e = 5.0, 2.0
    p = ModelParams(v, 0.5, 3.0, 1)
    tr = amplitude_trace(e, p)
    lam = p.lambda_n
    closed = 1 / (1 + v * v / (4 * e * (v - e)) * np.sinh(lam * np.sqrt(v - e)) ** 2)
    assert tr.transmission == pytest.approx(closed, rel=1e-12)
    assert transmission_n(e, p).s == pytest.approx(closed, rel=1e-12)


def test_trace_normalized_and_psi(ref_chain):
    tr = amplitude_trace(3.0, ref_chain(20)).normalized()
    assert tr.plane_amps[0, 0] == pytest.approx(1.0)
    x = tr.nodes[7]
    assert tr.psi(x - 1e-9) == pytest.approx(tr.psi(x + 1e-9), abs=1e-6)


def test_trace_rejects_barrier_top():
    with pytest.raises(DomainError):
        amplitude_trace(2.0, ModelParams(2.0, 0.1, 10.0, 3))
    with pytest.raises(DomainError):
        amplitude_trace(1.0, ModelParams(2.0, 0.1, 10.0, 3), a_out=0)


@settings(max_examples=60, deadline=None)
@given(params, st.floats(1e-3, 2.0))
def test_trace_continuity(p, frac):
    e = frac * p.v
    if abs(e - p.v) <= 1e-6 * p.v:
        return
    tr = amplitude_trace(e, p)
    assert tr.continuity_residuals().max() <= 1e-9
    assert tr.transmission == pytest.approx(transmission_n(e, p).s, rel=1e-8, abs=1e-300)
