"""Replication of phase unitaries, U_theta^N -> approx. U_theta^M.

Choi states are never built in the full 4^M-dimensional space. For phase
unitaries the maximally entangled input only reaches the phase-covariant
sector, where the Choi state of U_theta^M becomes the (M+1)-vector
sqrt(C(M,m)/2^M) e^{i m theta}.
"""

from dataclasses import dataclass

import numpy as np

from .cloning import ns_global_bound
from .states import PhaseAmplitudes, apply_phase, plus_state


@dataclass(frozen=True)
class ChoiPhaseState:
    m_qubits: int
    theta: float
    amps: PhaseAmplitudes


def choi_state(M: int, theta: float) -> ChoiPhaseState:
    if M < 1:
        raise ValueError("M must be >= 1")
    return ChoiPhaseState(M, float(theta), apply_phase(plus_state(M), theta))


def process_fidelity(candidate: PhaseAmplitudes, theta: float) -> float:
    """Jamiolkowski fidelity |<choi(M, theta)|candidate>|^2."""
    target = choi_state(candidate.n_max, theta).amps
    return abs(target.overlap(candidate)) ** 2


def ns_replication_bound(N: int, M: int) -> float:
    """No-signaling bound for probabilistic replication of phase unitaries.

    Coincides with the cloning bound.
    """
    return ns_global_bound(N, M)
