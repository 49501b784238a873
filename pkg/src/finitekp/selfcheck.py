"""Embedded oracle suites run by ``finitekp selfcheck``.

Each suite returns ``(passed, detail)``; :func:`run_all` prints one
machine-readable line per suite and stops at the first failure.
"""
import sys
import time

import numpy as np

from . import mat2, units
from .chebyshev import cheb_u, m_power_cheb
from .kernel import ModelParams, phi_kernel, phi_value
from .transport import transmission_limit, transmission_matrix_power, transmission_n

SEED = 20240531


def random_cases(rng, count, n_max=64, l_range=(1.0, 50.0)):
    """Random ``(E, ModelParams)`` pairs with ``E`` in ``(0, 2V)``."""
    out = []
    for _ in range(count):
        v = rng.uniform(0.5, 20.0)
        p = ModelParams(v, rng.uniform(0.05, 2.0), rng.uniform(*l_range),
                        int(rng.integers(1, n_max + 1)))
        e = rng.uniform(1e-3, 2.0) * v
        out.append((e, p))
    return out


def _rel_err(a, b):
    return np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300))


def suite_units():
    got = units.ev_to_model(0.5)
    ok = (abs(units.ev_to_model(0.038) - 1.0) <= 1e-14
          and abs(got - 13.157894736842104) <= 1e-14 * 13.2)
    return ok, f"ev_to_model(0.5)={got:.17g}"


def suite_cheb_vs_direct(count=200):
    rng = np.random.default_rng(SEED)
    worst_m = worst_s = 0.0
    for e, p in random_cases(rng, count):
        kern = phi_kernel(e, p)
        a = m_power_cheb(kern, p.n)
        b = mat2.mat_power_direct(kern.m, p.n)
        worst_m = max(worst_m, np.max(np.abs(a - b)) / np.max(np.abs(b)))
        worst_s = max(worst_s, _rel_err(transmission_n(e, p).s, transmission_matrix_power(e, p)))
    return worst_m <= 1e-9 and worst_s <= 1e-9, f"matrix={worst_m:.2e} transmission={worst_s:.2e}"


def reference_params(n=100):
    return ModelParams(units.ev_to_model(0.5), 0.1, 500.0, n)


def sl2_sweep(n=100, points=1000):
    """Worst ``|det M - 1|`` and ``||m11|^2 - |m12|^2 - 1|`` over ``(0, 2V]``."""
    p = reference_params(n)
    e = np.linspace(2 * p.v / points, 2 * p.v, points)
    m = phi_kernel(e, p).m
    det_err = np.max(np.abs(mat2.det(m) - 1))
    mod_err = np.max(np.abs(np.abs(m[..., 0, 0]) ** 2 - np.abs(m[..., 0, 1]) ** 2 - 1))
    return det_err, mod_err


def suite_sl2():
    det_err, mod_err = sl2_sweep()
    rng = np.random.default_rng(SEED + 1)
    scaled = 0.0
    for e, p in random_cases(rng, 1000):
        m = phi_kernel(e, p).m
        scaled = max(scaled, abs(mat2.det(m) - 1) / max(1.0, abs(m[0, 0]) ** 2))
    ok = det_err <= 1e-12 and mod_err <= 1e-10 and scaled <= 1e-12
    return ok, f"det={det_err:.2e} modulus={mod_err:.2e} random_scaled={scaled:.2e}"


def branch_jump(p: ModelParams, eps=1e-6):
    """Jump of phi across ``E = V`` in units of ``10 eps`` times its slope."""
    v = p.v
    below, above = phi_value(np.array([v - eps, v + eps]), p)
    h = 1e-3 * max(1.0, v)
    lo, hi = phi_value(np.array([v - h, v + h]), p)
    slope = max(1.0, abs(hi - lo) / (2 * h))
    return abs(below - above) / (10 * eps * slope)


def suite_branch_continuity():
    worst = 0.0
    for v in (0.5, 13.157894736842104, 40.0):
        for n in (1, 10, 100):
            worst = max(worst, branch_jump(ModelParams(v, 0.1, 500.0, n)))
    return worst <= 1.0, f"scaled jump={worst:.2e}"


def suite_pell():
    x = np.linspace(-5.0, 5.0, 2001)
    worst = 0.0
    for n in range(1, 41):
        u1, u0, u2 = cheb_u(n - 1, x).value, cheb_u(n, x).value, cheb_u(n - 2, x).value
        worst = max(worst, np.max(np.abs(u1 * u1 - u0 * u2 - 1) / np.maximum(1.0, u1 * u1)))
    return worst <= 1e-9, f"max scaled residual={worst:.2e}"


def suite_convergence():
    v = units.ev_to_model(0.5)
    gamma, length = 0.1, 500.0
    e_o = gamma * v / (1 + gamma)
    ratios = []
    for factor in (3.0, 10.0):
        e = factor * e_o
        ref = transmission_limit(e, gamma, v, length).s
        errs = [abs(transmission_n(e, ModelParams(v, gamma, length, n)).s - ref)
                for n in (2000, 4000, 8000, 16000)]
        ratios += [errs[i + 1] / errs[i] for i in range(3)]
    worst = max(ratios)
    return worst <= 0.75, f"max error ratio={worst:.3f}"


SUITES = [
    ("units", suite_units),
    ("cheb_vs_direct", suite_cheb_vs_direct),
    ("sl2_determinant", suite_sl2),
    ("branch_continuity", suite_branch_continuity),
    ("chebyshev_identity", suite_pell),
    ("continuum_convergence", suite_convergence),
]


def run_all(out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    for name, fn in SUITES:
        t0 = time.perf_counter()
        ok, detail = fn()
        status = "PASS" if ok else "FAIL"
        print(f"suite={name} status={status} seconds={time.perf_counter() - t0:.2f} {detail}",
              file=out)
        if not ok:
            print(f"selfcheck failed: {name}", file=err)
            return 1
    return 0
