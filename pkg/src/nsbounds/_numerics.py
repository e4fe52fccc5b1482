"""Shared numerical helpers: log-space binomials, compensated sums, sinc."""

import math

import numpy as np
from scipy.special import gammaln

LN2 = math.log(2.0)


def log_binom(n, k):
    """Natural log of the binomial coefficient C(n, k) via log-gamma.

    Works elementwise on arrays; entries with k outside [0, n] give -inf.
    """
    n = np.asarray(n, dtype=float)
    k = np.asarray(k, dtype=float)
    out = np.full(np.broadcast(n, k).shape, -np.inf)
    valid = (k >= 0) & (k <= n)
    nb, kb = np.broadcast_arrays(n, k)
    out[valid] = (gammaln(nb[valid] + 1.0) - gammaln(kb[valid] + 1.0)
                  - gammaln(nb[valid] - kb[valid] + 1.0))
    return out if out.shape else float(out)


def binomial_pmf_half(M, k):
    """C(M, k) / 2**M, the symmetric binomial distribution, evaluated in log space."""
    return np.exp(log_binom(M, k) - M * LN2)


def binomial_amplitudes(M):
    """Amplitudes sqrt(C(M, m) / 2**M) for m = 0..M (the |+>^M state on the symmetric subspace)."""
    m = np.arange(M + 1)
    return np.exp(0.5 * (log_binom(M, m) - M * LN2))


def fsum(values):
    # math.fsum tracks partials exactly, which is stronger than Kahan summation
    return math.fsum(np.asarray(values, dtype=float).ravel().tolist())


def sinc(x):
    """Unnormalized sinc, sin(x)/x with sinc(0) = 1."""
    return np.sinc(np.asarray(x, dtype=float) / np.pi)
