"""Measure-and-prepare (m&p) cloning and its asymptotic equivalence with
optimal global-fidelity cloning.

Bob estimates theta with a covariant measurement on an N-level probe and
prepares U_theta'|Psi^M>. The resulting global fidelity is a quadratic form
<Psi|O|Psi> with a banded operator

    O[m, m'] = s_m s_m' Delta(m' - m),    s_m = sqrt(C(M, m)/2^M),

where Delta is the probe autocorrelation (the triangle max(1-|d|/(N+1), 0)
for the flat maximum-likelihood probe). Everything is evaluated in O(M N).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvals_banded

from ._numerics import binomial_amplitudes
from .metrology import probe_autocorrelation
from .states import PhaseAmplitudes

DENSE_LIMIT = 4096


def coherence_decay(N: int, d: int) -> float:
    """Triangle kernel max(1 - |d|/(N+1), 0)."""
    if N < 0:
        raise ValueError("N must be >= 0")
    return max(1.0 - abs(d) / (N + 1), 0.0)


@dataclass(frozen=True)
class MpOperator:
    """Banded Hermitian m&p operator.

    ``bands[d, m]`` holds O[m, m + d] for d = 0..bandwidth (zero-padded at the
    right end); the lower triangle follows by Hermitian symmetry.
    """

    N: int
    M: int
    bands: np.ndarray

    @property
    def bandwidth(self) -> int:
        return self.bands.shape[0] - 1

    def to_dense(self) -> np.ndarray:
        if self.M > DENSE_LIMIT:
            raise ValueError(f"M={self.M} exceeds dense limit {DENSE_LIMIT}; use the banded form")
        dim = self.M + 1
        out = np.zeros((dim, dim), dtype=self.bands.dtype)
        for d in range(self.bandwidth + 1):
            vals = self.bands[d, : dim - d]
            out += np.diag(vals, d)
            if d:
                out += np.diag(vals.conj(), -d)
        return out

    def quadratic_form(self, state) -> float:
        """<Psi|O|Psi> in O(M * bandwidth)."""
        c = state.amps if isinstance(state, PhaseAmplitudes) else np.asarray(state, dtype=complex)
        if c.size != self.M + 1:
            raise ValueError(f"state dim {c.size} does not match M+1={self.M + 1}")
        dim = c.size
        total = float(np.sum(self.bands[0].real * np.abs(c) ** 2))
        for d in range(1, min(self.bandwidth, dim - 1) + 1):
            total += 2.0 * float(np.sum(self.bands[d, : dim - d] * c[: dim - d].conj() * c[d:]).real)
        return total

    def max_eigenvalue(self) -> float:
        """Largest eigenvalue, i.e. the best m&p fidelity over all output states."""
        if np.iscomplexobj(self.bands) and np.any(self.bands.imag):
            ab = self.bands
        else:
            ab = self.bands.real
        # scipy's upper banded layout puts the main diagonal in the last row
        upper = np.zeros_like(ab)
        for d in range(self.bandwidth + 1):
            upper[self.bandwidth - d, d:] = ab[d, : ab.shape[1] - d]
        dim = self.M + 1
        ev = eigvals_banded(upper, select="i", select_range=(dim - 1, dim - 1))
        return float(ev[-1])


def _banded_from_kernel(kernel: np.ndarray, M: int) -> np.ndarray:
    s = binomial_amplitudes(M)
    width = min(kernel.size - 1, M)
    dtype = complex if np.iscomplexobj(kernel) else float
    bands = np.zeros((width + 1, M + 1), dtype=dtype)
    for d in range(width + 1):
        bands[d, : M + 1 - d] = kernel[d] * s[: M + 1 - d] * s[d:]
    return bands


def mp_operator(N: int, M: int) -> MpOperator:
    """O_M^N for the maximum-likelihood probe, stored with bandwidth N."""
    if M < 1:
        raise ValueError("M must be >= 1")
    if N < 0:
        raise ValueError("N must be >= 0")
    kernel = np.array([coherence_decay(N, d) for d in range(N + 1)])
    return MpOperator(N, M, _banded_from_kernel(kernel, M))


def general_mp_operator(probe: PhaseAmplitudes, M: int) -> MpOperator:
    """m&p operator for an arbitrary estimation probe (kernel = probe autocorrelation)."""
    kernel = probe_autocorrelation(probe)
    if not np.any(kernel.imag):
        kernel = kernel.real
    return MpOperator(probe.n_max, M, _banded_from_kernel(kernel, M))


def mp_fidelity(output: PhaseAmplitudes, op: MpOperator) -> float:
    """Global fidelity <Psi^M|O|Psi^M> of the m&p protocol preparing ``output``."""
    return op.quadratic_form(output)


def mp_fidelity_general(probe: PhaseAmplitudes, output: PhaseAmplitudes) -> float:
    """m&p global fidelity when the estimate comes from an arbitrary probe."""
    return general_mp_operator(probe, output.n_max).quadratic_form(output)


def gaussian_state(M: int, sigma: float) -> PhaseAmplitudes:
    """Real positive amplitudes with |c_m|^2 ∝ exp(-(m - M/2)^2 / (2 sigma^2)).

    Normalized by the discrete sum rather than the continuum prefactor.
    """
    if not 0 < sigma < M:
        raise ValueError(f"need 0 < sigma < M, got sigma={sigma}, M={M}")
    m = np.arange(M + 1)
    return PhaseAmplitudes(np.exp(-((m - M / 2) ** 2) / (4 * sigma * sigma)))


def mp_asymptotic(N: int, M: int) -> float:
    """Leading-order optimal m&p global fidelity (N+1) sqrt(2) / sqrt(pi M)."""
    if M < 1:
        raise ValueError("M must be >= 1")
    return (N + 1) * math.sqrt(2.0) / math.sqrt(math.pi * M)


def naive_mp_fidelity(N: int, M: int) -> float:
    """Large-M fidelity of preparing M product copies from the ML estimate, (N+1)/sqrt(pi M)."""
    if M < 1:
        raise ValueError("M must be >= 1")
    return math.sqrt(1.0 / (math.pi * M)) * (N + 1)
