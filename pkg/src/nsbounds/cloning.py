"""Phase-covariant N -> M cloning: the no-signaling global-fidelity bound,
the deterministic cloner that attains it, and reference formulas.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import erf

from ._numerics import LN2, binomial_amplitudes, binomial_pmf_half, fsum, log_binom
from .states import PhaseAmplitudes, apply_phase, plus_state


@dataclass(frozen=True)
class CloneBound:
    n_inputs: int
    m_outputs: int
    value: float
    method: str  # "exact_sum" or "erf_approx"

    def __post_init__(self):
        if self.method not in ("exact_sum", "erf_approx"):
            raise ValueError(f"unknown method {self.method!r}")
        if not 0.0 <= self.value <= 1.0 + 1e-12:
            raise ValueError(f"bound value {self.value!r} outside [0, 1]")


def _check_range(N, M):
    if not (0 <= N <= M):
        raise ValueError(f"need 0 <= N <= M, got N={N}, M={M}")


def window_offset(N: int, M: int) -> int:
    """Output index of the first input level, floor((M - N) / 2)."""
    return (M - N) // 2


def ns_global_bound(N: int, M: int) -> float:
    """No-signaling upper bound on the worst-case global cloning fidelity.

    Sum of the N+1 central terms of the binomial distribution C(M, n)/2^M,
    starting at n = floor((M - N)/2).
    """
    _check_range(N, M)
    lo = window_offset(N, M)
    terms = binomial_pmf_half(M, np.arange(lo, lo + N + 1))
    return min(fsum(terms), 1.0)


def ns_bound_erf(N: int, M: int) -> float:
    """Gaussian approximation erf((N+1)/sqrt(2M)) to :func:`ns_global_bound`."""
    if M < 1:
        raise ValueError("M must be >= 1")
    return float(erf((N + 1) / math.sqrt(2.0 * M)))


def clone_bound(N: int, M: int, method: str = "exact_sum") -> CloneBound:
    value = ns_global_bound(N, M) if method == "exact_sum" else ns_bound_erf(N, M)
    return CloneBound(N, M, value, method)


def optimal_input_state(N: int, M: int) -> PhaseAmplitudes:
    """Entangled N-qubit input with c_lam ∝ sqrt(C(M, floor((M-N)/2) + lam))."""
    _check_range(N, M)
    lo = window_offset(N, M)
    logs = log_binom(M, np.arange(lo, lo + N + 1))
    raw = np.exp(0.5 * (logs - M * LN2))
    return PhaseAmplitudes(raw)


def clone_map(state: PhaseAmplitudes, N: int, M: int) -> PhaseAmplitudes:
    """Isometry |N, lam> -> |M, floor((M-N)/2) + lam> between symmetric subspaces."""
    _check_range(N, M)
    if state.dim != N + 1:
        raise ValueError(f"input has dim {state.dim}, expected N+1={N + 1}")
    out = np.zeros(M + 1, dtype=complex)
    lo = window_offset(N, M)
    out[lo:lo + N + 1] = state.amps
    return PhaseAmplitudes(out)


def global_clone_fidelity(output: PhaseAmplitudes, theta: float) -> float:
    """|<psi(theta)^M | output>|^2 with psi(theta) = (|0> + e^{i theta}|1>)/sqrt(2)."""
    target = apply_phase(plus_state(output.n_max), theta)
    return abs(target.overlap(output)) ** 2


def constructive_clone(N: int, M: int, theta: float) -> PhaseAmplitudes:
    """Output of the deterministic cloner fed with the phase-rotated optimal input."""
    return clone_map(apply_phase(optimal_input_state(N, M), theta), N, M)


def filter_success_prob(N: int, M: int) -> float:
    """Success probability |<Phi^N | +>^N|^2 of the probabilistic filter."""
    _check_range(N, M)
    phi = optimal_input_state(N, M)
    return abs(np.vdot(phi.amps, binomial_amplitudes(N))) ** 2


def det_1toM(M: int) -> float:
    """Optimal deterministic 1 -> M phase-covariant global fidelity."""
    if M < 1:
        raise ValueError("M must be >= 1")
    if M % 2:
        return float(np.exp(log_binom(M, (M - 1) // 2) - (M - 1) * LN2))
    return float(np.exp(log_binom(M + 1, M // 2 + 1) - M * LN2))


def det_NtoM_asymptotic(N: int, M: int, warn: bool = False) -> float:
    """Large-M optimal deterministic N -> M global fidelity.

    C(M, M/2)/2^(N+M) * (sum_j sqrt(C(N, j)))**2. Only meaningful for
    M >> N; at small M it can exceed any physical fidelity (N=1, M=2 gives 1).
    """
    if M % 2:
        raise ValueError("M must be even")
    if warn and M < 10 * N * N:
        warnings.warn(f"M={M} < 10 N^2; asymptotic formula unreliable", stacklevel=2)
    s = fsum(np.exp(0.5 * log_binom(N, np.arange(N + 1))))
    return float(np.exp(log_binom(M, M // 2) - (N + M) * LN2) * s * s)


def mixed_clone_output(N: int, M: int, theta: float) -> np.ndarray:
    """rho^M(theta): the cloner output averaged over the N+1 remote-preparation outcomes."""
    rho = np.zeros((M + 1, M + 1), dtype=complex)
    for k in range(N + 1):
        out = constructive_clone(N, M, theta + 2 * np.pi * k / (N + 1)).amps
        rho += np.outer(out, out.conj())
    return rho / (N + 1)


def verify_ns_mixture(N: int, M: int, theta_a: float, theta_b: float) -> float:
    """Frobenius distance between rho^M(theta_a) and rho^M(theta_b)."""
    _check_range(N, M)
    diff = mixed_clone_output(N, M, theta_a) - mixed_clone_output(N, M, theta_b)
    return float(np.linalg.norm(diff))
