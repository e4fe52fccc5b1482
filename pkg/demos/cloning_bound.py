"""
Phase-covariant cloning under no-signaling
==========================================

How well can M copies of an equatorial qubit be produced from N copies?
The no-signaling bound sums the N+1 central binomial terms; a simple
cloner embedding the input in the middle of the output space reaches it.
"""

# %%
import numpy as np

from nsbounds import (constructive_clone, det_1toM, global_clone_fidelity,
                      ns_bound_erf, ns_global_bound)

# %%
# The bound for a few small cases, next to its Gaussian approximation.
print(" N    M     bound      erf")
for N, M in [(1, 2), (1, 3), (2, 6), (5, 100), (10, 1000)]:
    print(f"{N:2d} {M:4d}  {ns_global_bound(N, M):.6f}  {ns_bound_erf(N, M):.6f}")

# %%
# With one input copy the bound coincides with the best quantum cloner.
for M in (2, 3, 8, 9):
    print(M, ns_global_bound(1, M), det_1toM(M))

# %%
# The constructive cloner reaches the bound for every phase.
N, M = 3, 11
thetas = np.linspace(0, 2 * np.pi, 9)
fids = [global_clone_fidelity(constructive_clone(N, M, th), th) for th in thetas]
print("spread over theta:", np.ptp(fids), "bound:", ns_global_bound(N, M))

# %%
# Super-replication: M ~ N^2 keeps the fidelity finite, M ~ N^3 does not.
for N in (4, 8, 16, 32):
    print(N, round(ns_global_bound(N, N * N), 4), round(ns_global_bound(N, N ** 3), 4))
