"""
Landauer resistivity versus device length
=========================================

In the continuum limit the resistivity behaves in three ways depending on
where E sits relative to E_o: exponential growth below, L^2 at E_o, and a
bounded oscillation above.
"""
import numpy as np

from finitekp import ModelParams, resistivity_limit, resistivity_n, units

V = units.ev_to_model(0.5)
gamma = 0.1
E_o = gamma * V / (1 + gamma)
ls = np.linspace(200.0, 800.0, 61)

e = 0.5 * E_o
ln_rho = np.array([resistivity_limit(e, gamma, V, l).log10_rho for l in ls]) * np.log(10)
print("E = 0.5 E_o: d ln(rho)/dL = %.4f, 2 sqrt(E_o - E) = %.4f"
      % (np.polyfit(ls, ln_rho, 1)[0], 2 * np.sqrt(E_o - e)))

rho = np.array([resistivity_limit(E_o, gamma, V, l).rho for l in ls])
print("E = E_o:     log-log exponent = %.4f" % np.polyfit(np.log(ls), np.log(rho), 1)[0])

e = 2 * E_o
rho = np.array([resistivity_limit(e, gamma, V, l).rho for l in ls])
print("E = 2 E_o:   rho in [%.3g, %.3g], ceiling %.3g"
      % (rho.min(), rho.max(), E_o ** 2 / (4 * e * (e - E_o))))

 # a finite chain with many cells tracks the limit; with few cells
# 2 E_o still sits in a gap of the chain and rho_N is astronomically large
for n in (200, 2000, 20000, 100000):
    r = resistivity_n(2 * E_o, ModelParams(V, gamma, 500.0, n))
    print("N=%6d  log10 rho_N(2 E_o, L=500) = %8.3f" % (n, r.log10_rho))
print("limit                           = %8.3f" % resistivity_limit(2 * E_o, gamma, V, 500.0).log10_rho)
