"""
Map-and-prepare cloning
=======================

Estimate the phase, then prepare M copies. With a well chosen entangled
output state, the estimate-and-prepare route approaches the no-signaling
cloning bound, while preparing independent copies falls short by sqrt(2).
"""

# %%
from nsbounds import (gaussian_state, mp_asymptotic, mp_fidelity, mp_operator,
                      naive_mp_fidelity, ns_global_bound)

# %%
N = 4
print("       M    F_mp/bound")
for M in (10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6):
    op = mp_operator(N, M)  # banded, so M = 10^6 is cheap
    f = mp_fidelity(gaussian_state(M, M ** (1 / 3)), op)
    print(f"{M:8d}    {f / ns_global_bound(N, M):.4f}")

# %%
M = 10 ** 6
print("asymptotic", mp_asymptotic(N, M), "product copies", naive_mp_fidelity(N, M))

# %%
# The best output state is the top eigenvector; its fidelity never exceeds the bound.
op = mp_operator(N, 2000)
print(op.max_eigenvalue(), ns_global_bound(N, 2000))
