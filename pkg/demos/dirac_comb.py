"""
Dirac comb: the classic Kronig-Penney condition
===============================================

Shrinking the barriers to delta spikes of strength Lambda gives
P sin(k d)/(k d) + cos(k d) = cos(xi d). Gaps open above every
free-particle zone boundary k d = j pi and widen with P.
"""
import numpy as np

from finitekp import DiracCombParams, comb_band_structure, dirac_comb_lhs

d = 10.0
for P in (0.0, 0.5, 1.5, 5.0):
    bs = comb_band_structure(DiracCombParams(P, d), 1.0, xi_steps=33)
    gaps = ["[%.4f, %.4f]" % g for g in bs.gaps[1:3]]
    print("P=%.1f  bands=%d  gaps above the first: %s" % (P, len(bs.bands), " ".join(gaps) or "none"))

# the ground band starts where the lhs comes down to 1
for P in (0.5, 1.5, 5.0):
    k = np.linspace(1e-6, np.pi / d, 20001)
    lhs = dirac_comb_lhs(k, DiracCombParams(P, d))
    print("P=%.1f  bottom of band 1 at E = %.5f" % (P, k[np.argmax(lhs <= 1)] ** 2))
