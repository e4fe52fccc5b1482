"""Signaling tests for candidate phase-estimation outcome rules.

A rule is a conditional outcome density p(theta' | theta) that depends only
on theta' - theta, held as a :class:`CircularDistribution`. An ensemble of
N-level phase states with weights p(theta) only reveals the Fourier
components p_1..p_N, so a rule whose own components beyond N are nonzero
lets Bob tell apart ensembles with equal density matrices.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ._numerics import sinc
from .circular import CircularDistribution
from .states import PhaseAmplitudes, SymmetricBlockDensity


@dataclass(frozen=True)
class SignalVerdict:
    """Outcome of :func:`ns_compatible`.

    ``magnitude`` is the largest outcome-density difference Bob can see
    between two indistinguishable ensembles, in units of the uniform density
    1/2pi; it equals ``worst_component``.
    """

    compatible: bool
    worst_k: int
    worst_component: float
    magnitude: float
    tolerance: float


def default_truncation(N: int) -> int:
    return max(4 * N, 64)


def fourier_component(dist: CircularDistribution, k: int) -> float:
    """p_k = int p(theta) cos(k theta) dtheta."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return dist.fourier_coefficient(k)


def ns_compatible(dist: CircularDistribution, N: int, tol: float = 1e-10, K=None) -> SignalVerdict:
    """Check that every Fourier component with N < k <= K vanishes within ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be > 0")
    if K is None:
        K = dist.K if dist.tag == "generic" else max(dist.K, default_truncation(N))
    ks = np.arange(N + 1, K + 1)
    if ks.size == 0:
        return SignalVerdict(True, N + 1, 0.0, 0.0, tol)
    comps = np.abs([dist.fourier_coefficient(int(k)) for k in ks])
    i = int(np.argmax(comps))
    worst = float(comps[i])
    return SignalVerdict(worst <= tol, int(ks[i]), worst, worst, tol)


def ensemble_density(dist: CircularDistribution, seed: PhaseAmplitudes) -> SymmetricBlockDensity:
    """Density of the continuous ensemble {p(theta), U_theta|seed>}: rho[n,m] = c_n c_m* p_|n-m|."""
    c = seed.amps
    n = np.arange(seed.dim)
    p = dist.coefficients(seed.n_max)
    rho = np.outer(c, c.conj()) * p[np.abs(n[:, None] - n[None, :])]
    return SymmetricBlockDensity(rho)


def mixture_outcome_density(rule: CircularDistribution, ensemble: CircularDistribution,
                            outcome: float) -> float:
    """Outcome density at ``outcome`` when the rule acts on every member of the ensemble.

    int ensemble(theta) rule(outcome - theta) dtheta, evaluated as a Fourier
    product over the ensemble's (finite) spectrum.
    """
    K = ensemble.K
    k = np.arange(1, K + 1)
    prod = np.array([ensemble.fourier_coefficient(j) * rule.fourier_coefficient(j) for j in k])
    return float((1.0 + 2.0 * np.sum(prod * np.cos(k * outcome))) / (2 * np.pi))


def cosine_ensemble(M: int) -> CircularDistribution:
    """Weights (1 + cos(M theta))/2pi: same density matrix as uniform for N < M."""
    f = np.zeros(M)
    f[M - 1] = 0.5
    return CircularDistribution(f)


def sinc_signal(N: int, M: int) -> float:
    """|sinc(M pi/(N+1))|: how well the step rule separates the uniform and cosine ensembles."""
    if M <= N:
        raise ValueError("need M > N")
    return float(abs(sinc(M * np.pi / (N + 1))))


def aligned_outcome(epsilon: float) -> float:
    """Outcome angle putting |1>, |+eps> inside and |0>, |-eps> outside the N=1 window."""
    return math.pi / 2 + min(epsilon, math.pi / 2 - epsilon)


def qubit_steering(epsilon: float, rule: CircularDistribution, outcome=None) -> Tuple[float, float]:
    """Outcome densities for Bob's two steered qubit ensembles.

    Alice shares cos(eps)|00> + sin(eps)|11> and measures either in the
    computational basis (Bob gets {cos^2 eps: |0>, sin^2 eps: |1>}) or in the
    x basis (Bob gets {1/2: |+eps>, 1/2: |-eps>}). All four states sit on one
    great circle of the Bloch sphere, at angles 0, pi, 2 eps and -2 eps, and
    the rule is applied to the offset between ``outcome`` and each angle.

    Returns
    -------
    (p_basis, p_x) : tuple of float
    """
    if not 0 < epsilon < math.pi / 2:
        raise ValueError("epsilon must lie in (0, pi/2)")
    theta_out = aligned_outcome(epsilon) if outcome is None else float(outcome)

    def p(angle):
        return float(rule.density(theta_out - angle))

    c2, s2 = math.cos(epsilon) ** 2, math.sin(epsilon) ** 2
    p_basis = c2 * p(0.0) + s2 * p(math.pi)
    p_x = 0.5 * p(2 * epsilon) + 0.5 * p(-2 * epsilon)
    return p_basis, p_x
