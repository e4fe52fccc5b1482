"""Phase estimation with covariant measurements and no-signaling limits.

Conventions: a probe ``c_n`` rotated by theta and measured with the covariant
POVM E(theta') = sum_{n,m} e^{i theta' (n-m)} |n><m| gives an outcome density
that depends only on delta = theta' - theta,

    p(delta) = (1/2pi) |sum_n c_n e^{-i n delta}|^2.

Likelihoods are reported either as that density or as its ratio to the
uniform density 1/2pi.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from ._numerics import sinc
from .circular import CircularDistribution
from .states import PhaseAmplitudes

WINDOW_GRID = 8192
_THETA4_SWITCH = 0.5
_TINY = 1e-16


def _as_amps(probe):
    return probe.amps if isinstance(probe, PhaseAmplitudes) else np.asarray(probe, dtype=complex)


def covariant_likelihood(probe: PhaseAmplitudes, delta):
    """Outcome density (1/radian) at offset ``delta`` from the true phase."""
    c = _as_amps(probe)
    n = np.arange(c.size)
    delta = np.asarray(delta, dtype=float)
    amp = np.exp(-1j * np.multiply.outer(delta, n)) @ c
    return np.abs(amp) ** 2 / (2 * np.pi)


@dataclass(frozen=True)
class LikelihoodKernel:
    """Covariant-POVM outcome density for a fixed probe, as a callable."""

    probe: PhaseAmplitudes

    def __call__(self, delta):
        return covariant_likelihood(self.probe, delta)

    def autocorrelation(self) -> np.ndarray:
        """Delta(d) = sum_n conj(c_n) c_{n+d} for d = 0..N."""
        return probe_autocorrelation(self.probe)

    def distribution(self) -> CircularDistribution:
        """The kernel as a circular density; only even kernels (Delta real) qualify."""
        acf = self.autocorrelation()
        if np.max(np.abs(acf.imag)) > 1e-12:
            raise ValueError("kernel is not even in delta; it has no cosine series")
        return CircularDistribution(acf[1:].real)


def probe_autocorrelation(probe) -> np.ndarray:
    """Delta(d) = sum_n conj(c_n) c_{n+d}, d = 0..N (negative d is the conjugate)."""
    c = _as_amps(probe)
    n = c.size
    return np.array([np.vdot(c[: n - d], c[d:]) for d in range(n)])


def max_likelihood_ratio(probe: PhaseAmplitudes) -> float:
    """Likelihood of the true phase relative to uniform: |sum_n c_n|^2."""
    return float(abs(np.sum(_as_amps(probe))) ** 2)


def ml_state(N: int) -> PhaseAmplitudes:
    if N < 0:
        raise ValueError("N must be >= 0")
    return PhaseAmplitudes(np.full(N + 1, 1.0 / math.sqrt(N + 1)))


def ns_step_distribution(N: int, K=None) -> CircularDistribution:
    """Window density (N+1)/2pi on |delta| <= pi/(N+1), zero outside.

    ``K`` sets how many Fourier terms are stored; the closed form stays exact.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    K = max(4 * N, 64) if K is None else K
    k = np.arange(1, K + 1)
    return CircularDistribution(sinc(k * np.pi / (N + 1)), tag="step", param=N)


def alignment_fidelity(dist: CircularDistribution) -> float:
    """Mean cos^2(delta/2) payoff, 1 - int p sin^2(delta/2) = 1/2 + p_1/2."""
    return 0.5 + 0.5 * dist.fourier_coefficient(1)


def ns_alignment_fidelity_exact(N: int) -> float:
    """Alignment fidelity of the no-signaling step window, 1 - (N+1)(a - sin a)/2pi, a = pi/(N+1)."""
    if N < 0:
        raise ValueError("N must be >= 0")
    a = np.pi / (N + 1)
    return 1.0 - (N + 1) * _a_minus_sin(a) / (2 * np.pi)


def _a_minus_sin(a):
    if a >= 1.0:
        return a - math.sin(a)
    # Taylor series; the direct difference cancels for small a
    term, total, k = a, 0.0, 1
    while True:
        term *= -a * a / ((2 * k) * (2 * k + 1))
        total -= term
        if abs(term) < 1e-17 * total:
            return total
        k += 1


def berry_wiseman_state(N: int) -> PhaseAmplitudes:
    """Optimal alignment probe, c_n ∝ sin(pi (n+1)/(N+2))."""
    if N < 0:
        raise ValueError("N must be >= 0")
    n = np.arange(N + 1)
    return PhaseAmplitudes(np.sin(np.pi * (n + 1) / (N + 2)))


def quantum_alignment_fidelity(probe: PhaseAmplitudes) -> float:
    """Alignment fidelity of the covariant measurement on ``probe``.

    1/2 + Re(sum_n conj(c_n) c_{n+1}) / 2.
    """
    c = _as_amps(probe)
    if c.size < 2:
        return 0.5
    return 0.5 + 0.5 * float(np.vdot(c[:-1], c[1:]).real)


def diffusion_prior(t: float, K=None) -> CircularDistribution:
    """Prior p_k = exp(-k^2 t), a delta peak diffused for time t.

    Coefficients are kept until they drop below 1e-16 (or up to ``K``).
    """
    if t <= 0:
        raise ValueError("diffusion time t must be > 0")
    k_tail = int(math.floor(math.sqrt(-math.log(_TINY) / t)))
    K = max(1, k_tail if K is None else min(K, k_tail))
    k = np.arange(1, K + 1)
    return CircularDistribution(np.exp(-(k * k) * t), tag="diffusion", param=float(t))


def prior_error(t: float) -> float:
    """Mean sin^2(theta/2) under the diffusion prior, (1 - e^{-t})/2."""
    if t <= 0:
        raise ValueError("t must be > 0")
    return -0.5 * math.expm1(-t)


def jacobi_theta4(t: float) -> float:
    """theta_4(0, e^{-t}) = 1 + 2 sum_{n>=1} (-1)^n e^{-n^2 t}.

    Below t = 0.5 the alternating series is swapped for its modular dual
    2 sqrt(pi/t) sum_{n>=0} exp(-pi^2 (n + 1/2)^2 / t).
    """
    if t <= 0:
        raise ValueError("t must be > 0")
    if t < _THETA4_SWITCH:
        total, n = 0.0, 0
        while True:
            term = math.exp(-(math.pi * (n + 0.5)) ** 2 / t)
            total += term
            if term < _TINY * max(total, _TINY):
                break
            n += 1
        return 2.0 * math.sqrt(math.pi / t) * total
    total, n = 1.0, 1
    while True:
        term = 2.0 * math.exp(-n * n * t)
        total += -term if n % 2 else term
        if term < _TINY:
            break
        n += 1
    return total


def ns_diffused_bound(N: int, t: float) -> float:
    """Large-N no-signaling bound on alignment fidelity under the diffusion prior."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return 1.0 - math.pi ** 2 / (12 * N * N) * jacobi_theta4(t)


def diffused_bound_error(N: int, t: float) -> float:
    """1 - ns_diffused_bound(N, t), evaluated without cancellation."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return math.pi ** 2 / (12 * N * N) * jacobi_theta4(t)


@dataclass(frozen=True)
class StationarityWindow:
    """Interval around the estimate where sin^2(delta/2) p(theta; t) keeps rising.

    ``width`` is Delta = 2 atan(min_density / max_slope); ``threshold`` is the
    bound m^3/(slope^2 + m^2) on sin^2(delta/2); ``n_threshold`` is the
    smallest N whose step window pi/(N+1) fits inside ``width``.
    """

    t: float
    width: float
    threshold: float
    min_density: float
    max_slope: float
    n_threshold: int


def _refined_extremum(f, grid, idx):
    lo = grid[max(idx - 1, 0)]
    hi = grid[min(idx + 1, grid.size - 1)]
    res = minimize_scalar(f, bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
    return min(float(res.fun), float(f(grid[idx])))


def stationarity_window(t: float, grid_points: int = WINDOW_GRID) -> StationarityWindow:
    if t <= 0:
        raise ValueError("t must be > 0")
    prior = diffusion_prior(t)
    grid = np.linspace(-np.pi, np.pi, grid_points + 1)

    dens = prior.density(grid)
    m = _refined_extremum(lambda x: float(prior.density(x)), grid, int(np.argmin(dens)))

    slope = np.abs(prior.density_derivative(grid))
    neg = _refined_extremum(lambda x: -abs(float(prior.density_derivative(x))), grid,
                            int(np.argmax(slope)))
    big_m = -neg

    width = 2.0 * math.atan2(m, big_m)
    threshold = m ** 3 / (big_m ** 2 + m ** 2)
    n_thr = max(int(math.ceil(math.pi / width)) - 1, 0)
    return StationarityWindow(float(t), width, threshold, m, big_m, n_thr)
