"""2*pi-periodic probability densities held as cosine Fourier series.

A density is stored as

    p(theta) = (1/2pi) * (1 + 2 * sum_{k>=1} p_k cos(k theta)),

so ``p_k = int p(theta) cos(k theta) dtheta`` and p_0 = 1. Densities with a
closed form (the no-signaling step window and the diffusion kernel) carry a
tag so that densities and Fourier components beyond the stored truncation
are evaluated exactly.
"""

import numpy as np

from ._numerics import sinc

GRID_POINTS = 4096
NONNEG_TOL = 1e-9
# below this diffusion time the cosine series cancels badly; use wrapped Gaussians
DIFFUSION_DUAL_T = 0.5
_TAGS = ("generic", "step", "diffusion")


class CircularDistribution:
    """Even circular density given by its cosine coefficients p_1..p_K.

    Parameters
    ----------
    fourier : array_like
        Coefficients ``p_1..p_K``; p_0 = 1 is implicit.
    tag : {"generic", "step", "diffusion"}
        Closed form, if any.
    param : float, optional
        N for the step window, t for the diffusion kernel.
    """

    def __init__(self, fourier=(), tag="generic", param=None):
        if tag not in _TAGS:
            raise ValueError(f"unknown tag {tag!r}")
        if tag != "generic" and param is None:
            raise ValueError(f"tag {tag!r} needs a parameter")
        f = np.array(fourier, dtype=float).ravel()
        f.setflags(write=False)
        self.fourier = f
        self.tag = tag
        self.param = param

    def __repr__(self):
        extra = "" if self.tag == "generic" else f", {self.tag}={self.param!r}"
        return f"CircularDistribution(K={self.K}{extra})"

    @classmethod
    def uniform(cls):
        return cls(())

    @property
    def K(self) -> int:
        return self.fourier.size

    def fourier_coefficient(self, k: int) -> float:
        """p_k; exact for tagged densities, series lookup otherwise (0 past K)."""
        k = abs(int(k))
        if k == 0:
            return 1.0
        if self.tag == "step":
            return float(sinc(k * np.pi / (self.param + 1)))
        if self.tag == "diffusion":
            return float(np.exp(-k * k * self.param))
        return float(self.fourier[k - 1]) if k <= self.K else 0.0

    def coefficients(self, K=None) -> np.ndarray:
        """Array ``[p_0, p_1, ..., p_K]`` (K defaults to the stored truncation)."""
        K = self.K if K is None else K
        return np.array([self.fourier_coefficient(k) for k in range(K + 1)])

    def series_density(self, theta) -> np.ndarray:
        """Truncated Fourier-series evaluation, ignoring any closed form."""
        theta = np.asarray(theta, dtype=float)
        k = np.arange(1, self.K + 1)
        s = np.cos(np.multiply.outer(theta, k)) @ self.fourier if self.K else 0.0
        return (1.0 + 2.0 * s) / (2 * np.pi)

    def density(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        if self.tag == "step":
            half = np.pi / (self.param + 1)
            wrapped = np.angle(np.exp(1j * theta))
            # keep the window edges closed on both sides despite wrapping noise
            inside = np.abs(wrapped) <= half * (1 + 1e-14)
            return np.where(inside, (self.param + 1) / (2 * np.pi), 0.0)
        if self.tag == "diffusion" and self.param < DIFFUSION_DUAL_T:
            x, t = self._wrapped(theta)
            return np.sum(np.exp(-x * x / (4 * t)), axis=-1) / np.sqrt(4 * np.pi * t)
        return self.series_density(theta)

    def _wrapped(self, theta):
        t = self.param
        # images beyond this many periods contribute below exp(-pi^2 n^2 / t) ~ 0
        n_img = int(np.ceil(np.sqrt(40.0 * t) / np.pi)) + 1
        shifts = 2 * np.pi * np.arange(-n_img, n_img + 1)
        wrapped = np.angle(np.exp(1j * theta))
        return np.add.outer(wrapped, shifts), t

    def density_derivative(self, theta) -> np.ndarray:
        """d/dtheta of the density (smooth tags only)."""
        theta = np.asarray(theta, dtype=float)
        if self.tag == "diffusion" and self.param < DIFFUSION_DUAL_T:
            x, t = self._wrapped(theta)
            g = np.exp(-x * x / (4 * t)) * (-x / (2 * t))
            return np.sum(g, axis=-1) / np.sqrt(4 * np.pi * t)
        k = np.arange(1, self.K + 1)
        if not self.K:
            return np.zeros_like(theta)
        return -(np.sin(np.multiply.outer(theta, k)) @ (k * self.fourier)) / np.pi

    def grid_min(self, n=GRID_POINTS) -> float:
        grid = np.linspace(-np.pi, np.pi, n, endpoint=False)
        return float(self.density(grid).min())

    def is_nonnegative(self, tol=NONNEG_TOL) -> bool:
        return self.grid_min() >= -tol

    def truncated(self, K: int) -> "CircularDistribution":
        """Generic copy keeping only p_1..p_K."""
        return CircularDistribution(self.coefficients(K)[1:])
