"""
Transmission through a finite chain of barriers
===============================================

A 500 nm device carrying N square barriers of 0.5 eV, with barrier/well
width ratio 0.1. We sweep the energy up to 1 eV and watch the band
structure grow out of the resonances as N increases.
"""
import numpy as np

from finitekp import ModelParams, transmission_limit, transmission_n, units
from _plot import save

V = units.ev_to_model(0.5)          # 13.16 model units
gamma, L = 0.1, 500.0
e_ev = np.linspace(0.001, 1.0, 4000)
e = units.ev_to_model(e_ev)

curves = {}
for n in (50, 100, 200):
    p = ModelParams(V, gamma, L, n)
    t = transmission_n(e, p)
    curves[n] = t
    # a resonance is a local maximum that reaches S ~ 1
    s = t.s
    peaks = np.flatnonzero((s[1:-1] >= s[:-2]) & (s[1:-1] >= s[2:]) & (s[1:-1] > 0.99))
    print("N=%4d  resonances below 1 eV: %3d   deepest gap: log10 S = %.1f"
          % (n, len(peaks), t.log10_s.min()))

bar = transmission_limit(e, gamma, V, L)
print("continuum limit: E_o = %.4f eV, S_bar at E_o = %.3g"
      % (units.model_to_ev(gamma * V / (1 + gamma)), transmission_limit(gamma * V / (1 + gamma), gamma, V, L).s))

# the log10 column never underflows, even when S itself is 0.0
print("N=50 at 1 meV: S =", curves[50].s[0], " log10 S =", round(float(curves[50].log10_s[0]), 2))


def fig(plt):
    f, ax = plt.subplots(figsize=(7, 4))
    for n, t in curves.items():
        ax.plot(e_ev, t.s, lw=0.7, label="N=%d" % n)
    ax.plot(e_ev, bar.s, "k--", lw=1, label="N -> oo")
    ax.set_xlabel("E [eV]")
    ax.set_ylabel("S_N")
    ax.legend()
    return f


save(fig, "transmission_sweep.png")
