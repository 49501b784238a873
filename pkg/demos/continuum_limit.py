"""
How fast does the chain forget its cells?
=========================================

Keeping L and gamma fixed while N grows, the chain looks more and more like
a single uniform barrier of height E_o. Here we measure |S_N - S_bar| at a
few energies above E_o.
"""
import numpy as np

from finitekp import ModelParams, transmission_limit, transmission_n, units

V = units.ev_to_model(0.5)
gamma, L = 0.1, 500.0
E_o = gamma * V / (1 + gamma)
ns = [1000, 2000, 4000, 8000, 16000, 32000, 100000]

print("   E/E_o " + "".join("%11d" % n for n in ns))
for f in (1.5, 3.0, 10.0):
    e = f * E_o
    ref = transmission_limit(e, gamma, V, L).s
    errs = [abs(transmission_n(e, ModelParams(V, gamma, L, n)).s - ref) for n in ns]
    print("%8.1f " % f + "".join("%11.2e" % x for x in errs))

# closer to E_o the limit is approached late: the phase of the finite chain
# is still off by O(1) at N ~ 1e3, and only then does the 1/N^2 tail kick in.
e = 1.5 * E_o
a = abs(transmission_n(e, ModelParams(V, gamma, L, 50000)).s - transmission_limit(e, gamma, V, L).s)
b = abs(transmission_n(e, ModelParams(V, gamma, L, 100000)).s - transmission_limit(e, gamma, V, L).s)
print("asymptotic order at 1.5 E_o: %.2f" % (np.log(a / b) / np.log(2)))
