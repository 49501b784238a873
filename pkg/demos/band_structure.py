"""
Dispersion E(xi) of the finite chain
====================================

Invert cos(xi p) = phi(E) band by band and compare with the continuum
parabola E_o + xi^2.
"""
import numpy as np

from finitekp import ModelParams, band_structure, continuum_dispersion, units
from _plot import save

V = units.ev_to_model(0.5)
gamma, L = 0.1, 500.0

structs = {}
for n in (50, 100, 150, 200):
    p = ModelParams(V, gamma, L, n)
    bs = band_structure(p, 40.0, xi_steps=129, max_bands=6)
    structs[n] = (p, bs)
    widths = ["%.3f" % (hi - lo) for lo, hi in bs.gaps[1:4]]
    print("N=%3d  bands=%2d  first gaps (model units): %s" % (n, len(bs.bands), ", ".join(widths)))

# the first band creeps up to E_o only slowly: it is a narrow
# tight-binding band for small N
for n in (50, 200, 2000):
    p = ModelParams(V, gamma, L, n)
    b = band_structure(p, 3.0, max_bands=1).bands[0]
    print("N=%4d  first band [%.4f, %.4f]   E_o = %.4f" % (n, b.e_lo, b.e_hi, p.e_o))


def fig(plt):
    f, ax = plt.subplots(figsize=(7, 4))
    for n, (p, bs) in structs.items():
        for b in bs.bands:
            ax.plot(b.xi_extended, b.e_samples, lw=0.8, label="N=%d" % n if b.index == 1 else None)
    xi = np.linspace(0, 3.5, 300)
    ax.plot(xi, continuum_dispersion(xi, 0.0), "k--", lw=1, label="free")
    ax.set_xlabel("xi")
    ax.set_ylabel("E (model units)")
    ax.legend()
    return f


save(fig, "band_structure.png")
