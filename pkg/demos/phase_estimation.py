"""
Phase estimation limits
=======================

Maximum-likelihood and alignment figures of merit for the no-signaling
step window, compared with the best quantum probe.
"""

# %%
import math

import numpy as np

from nsbounds import (berry_wiseman_state, max_likelihood_ratio, ml_state,
                      ns_alignment_fidelity_exact, quantum_alignment_fidelity)

# %%
# The flat probe puts likelihood N+1 (in units of the uniform density) on the true phase.
rng = np.random.default_rng(1)
for N in (1, 4, 16):
    c = rng.normal(size=N + 1) + 1j * rng.normal(size=N + 1)
    print(N, max_likelihood_ratio(ml_state(N)), round(max_likelihood_ratio(c / np.linalg.norm(c)), 3))

# %%
# Both errors shrink as 1/N^2, with prefactors pi^2/12 and pi^2/4.
print("   N   N^2(1-F_ns)   N^2(1-F_q)")
for N in (10, 50, 200, 1000):
    ns = N * N * (1 - ns_alignment_fidelity_exact(N))
    q = N * N * (1 - quantum_alignment_fidelity(berry_wiseman_state(N)))
    print(f"{N:4d}   {ns:.5f}       {q:.5f}")
print("limits", math.pi ** 2 / 12, math.pi ** 2 / 4)
