"""
Which outcome rules would allow signaling?
==========================================

An N-level phase state only carries the first N Fourier components of a
phase ensemble. A rule that responds to higher components lets a remote
party tell apart ensembles with the same density matrix.
"""

# %%
import math

import numpy as np

from nsbounds import (CircularDistribution, ns_compatible, ns_step_distribution,
                      qubit_steering, sinc_signal)

# %%
# The sharp step window fails; its truncated Fourier series passes but goes negative.
N = 3
step = ns_step_distribution(N)
print(ns_compatible(step, N))
trunc = step.truncated(N)
print(ns_compatible(trunc, N).compatible, "min density", trunc.grid_min())

# %%
# Outcome gap between the uniform and (1 + cos M theta) ensembles.
for M in range(2, 9):
    print(M, round(sinc_signal(1, M), 4))

# %%
# Steering a qubit: Alice's choice of basis shows up in Bob's statistics.
rule = ns_step_distribution(1)
for eps in np.linspace(0.1, 1.4, 6):
    pb, px = qubit_steering(eps, rule)
    print(f"eps={eps:.2f}  gap={abs(pb - px):.4f}  expected={abs(math.sin(eps) ** 2 - 0.5) / math.pi:.4f}")

# %%
# The uniform rule never signals.
print(qubit_steering(0.4, CircularDistribution.uniform(), outcome=1.0))
