"""States, phase rotations and twirls on the symmetric subspace.

Everything is expressed in the excitation-number basis |n> (n qubits in |1>),
on which the phase rotation acts as ``|n> -> exp(i n theta) |n>``.
"""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ._numerics import binomial_amplitudes

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
POSITIVITY_TOL = 1e-10


class PhaseAmplitudes:
    """Normalized complex amplitude vector ``c_0..c_D`` over the number basis.

    The input is rescaled to unit norm on construction; the norm it had
    before rescaling is kept in ``raw_norm`` (unnormalized constructions such
    as the optimal cloner input need it).
    """

    __slots__ = ("amps", "raw_norm")

    def __init__(self, amps, normalize=True):
        a = np.array(amps, dtype=complex).ravel()
        if a.size < 1:
            raise ValueError("PhaseAmplitudes needs at least one amplitude")
        norm = float(np.linalg.norm(a))
        if norm == 0.0 or not np.isfinite(norm):
            raise ValueError("amplitude vector has zero or non-finite norm")
        if normalize:
            a = a / norm
        elif abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"amplitudes not normalized (norm={norm!r})")
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)
        object.__setattr__(self, "raw_norm", norm)

    def __setattr__(self, name, value):
        raise AttributeError("PhaseAmplitudes is immutable")

    @property
    def dim(self) -> int:
        return self.amps.size

    @property
    def n_max(self) -> int:
        """Largest excitation number D (``dim - 1``)."""
        return self.amps.size - 1

    def __len__(self):
        return self.amps.size

    def __array__(self, dtype=None, copy=None):
        return self.amps if dtype is None else self.amps.astype(dtype)

    def __repr__(self):
        return f"PhaseAmplitudes({np.array2string(self.amps, precision=6)})"

    def overlap(self, other: "PhaseAmplitudes") -> complex:
        """Inner product <self|other>."""
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return complex(np.vdot(self.amps, other.amps))

    def projector(self) -> np.ndarray:
        return np.outer(self.amps, self.amps.conj())

    def equals_up_to_phase(self, other: "PhaseAmplitudes", atol=1e-12) -> bool:
        if other.dim != self.dim:
            return False
        ov = self.overlap(other)
        if abs(ov) == 0.0:
            return False
        phase = ov / abs(ov)
        return bool(np.allclose(self.amps * phase, other.amps, atol=atol, rtol=0))


class SymmetricBlockDensity:
    """Density operator on a (D+1)-dimensional symmetric subspace.

    Always stored as a full Hermitian matrix; twirled densities simply carry
    zeros off the surviving blocks.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix, validate=True):
        rho = np.array(matrix, dtype=complex)
        if rho.ndim == 1:
            rho = np.diag(rho)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ValueError(f"density must be square, got shape {rho.shape}")
        if validate:
            if np.max(np.abs(rho - rho.conj().T), initial=0.0) > HERMITIAN_TOL:
                raise ValueError("density is not Hermitian")
            tr = np.trace(rho).real
            if abs(tr - 1.0) > NORM_TOL:
                raise ValueError(f"density trace is {tr!r}, expected 1")
            if np.linalg.eigvalsh(rho).min() < -POSITIVITY_TOL:
                raise ValueError("density has negative eigenvalues")
        rho.setflags(write=False)
        object.__setattr__(self, "matrix", rho)

    def __setattr__(self, name, value):
        raise AttributeError("SymmetricBlockDensity is immutable")

    @classmethod
    def pure(cls, state: PhaseAmplitudes) -> "SymmetricBlockDensity":
        return cls(state.projector(), validate=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(self.matrix).real.copy()

    def is_diagonal(self, atol=1e-14) -> bool:
        off = self.matrix - np.diag(np.diag(self.matrix))
        return bool(np.max(np.abs(off), initial=0.0) <= atol)

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    def __repr__(self):
        return f"SymmetricBlockDensity(dim={self.dim})"


@dataclass(frozen=True)
class Ensemble:
    """Weighted list of pure states ``[(prob, PhaseAmplitudes), ...]``."""

    members: Tuple[Tuple[float, PhaseAmplitudes], ...]

    def __post_init__(self):
        if not self.members:
            raise ValueError("empty ensemble")
        probs = np.array([p for p, _ in self.members], dtype=float)
        if np.any(probs < 0) or np.any(probs > 1):
            raise ValueError("ensemble weights must lie in [0, 1]")
        if abs(probs.sum() - 1.0) > NORM_TOL:
            raise ValueError(f"ensemble weights sum to {probs.sum()!r}")
        dims = {s.dim for _, s in self.members}
        if len(dims) != 1:
            raise ValueError(f"ensemble mixes dimensions {sorted(dims)}")

    def __len__(self):
        return len(self.members)

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([p for p, _ in self.members])

    @property
    def states(self) -> List[PhaseAmplitudes]:
        return [s for _, s in self.members]

    def density(self) -> SymmetricBlockDensity:
        """Average density sum_k p_k |psi_k><psi_k|."""
        rho = sum(p * s.projector() for p, s in self.members)
        return SymmetricBlockDensity(rho)


def as_matrix(rho) -> np.ndarray:
    if isinstance(rho, SymmetricBlockDensity):
        return rho.matrix
    if isinstance(rho, PhaseAmplitudes):
        return rho.projector()
    return np.asarray(rho, dtype=complex)


def plus_state(M: int) -> PhaseAmplitudes:
    """|+>^M restricted to the symmetric subspace: amplitudes sqrt(C(M,n)/2^M)."""
    return PhaseAmplitudes(binomial_amplitudes(M))


def apply_phase(state: PhaseAmplitudes, theta: float) -> PhaseAmplitudes:
    """Rotate ``state`` by ``U_theta``: ``c_n -> exp(i n theta) c_n``."""
    n = np.arange(state.dim)
    return PhaseAmplitudes(state.amps * np.exp(1j * n * theta))


def twirl_u1(rho) -> SymmetricBlockDensity:
    """Continuous phase average; keeps only the populations."""
    return SymmetricBlockDensity(np.diag(np.diag(as_matrix(rho))))


def twirl_zn(rho, n_sites: int) -> SymmetricBlockDensity:
    """Average over the discrete phases 2*pi*k/(N+1), k = 0..N.

    Equivalent to zeroing every element [m, m'] with (m - m') not a multiple
    of N + 1.
    """
    if n_sites < 0:
        raise ValueError("n_sites must be >= 0")
    mat = as_matrix(rho)
    idx = np.arange(mat.shape[0])
    keep = (idx[:, None] - idx[None, :]) % (n_sites + 1) == 0
    return SymmetricBlockDensity(np.where(keep, mat, 0.0))


def _psd_sqrt(mat):
    w, v = np.linalg.eigh((mat + mat.conj().T) / 2)
    # eigenvalue noise ~1e-16 would otherwise leak into the fidelity as ~1e-8
    w = np.where(w > 1e-13 * max(w.max(), 0.0), w, 0.0)
    return (v * np.sqrt(w)) @ v.conj().T


def uhlmann_fidelity(rho, sigma) -> float:
    """Uhlmann fidelity tr sqrt(sqrt(sigma) rho sqrt(sigma)).

    Note this is the *root* fidelity; for pure inputs it equals |<psi|phi>|.
    Accepts densities, pure states or raw matrices (which need not be
    normalized, e.g. the unnormalized Z_{N+1} sector states).
    """
    a, b = as_matrix(rho), as_matrix(sigma)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    # nuclear norm of sqrt(rho) sqrt(sigma) equals tr sqrt(sqrt(sigma) rho sqrt(sigma))
    return float(np.sum(np.linalg.svd(_psd_sqrt(a) @ _psd_sqrt(b), compute_uv=False)))


def zn_sector_states(M: int, N: int) -> np.ndarray:
    """Unnormalized sector vectors phi^(lambda) of the Z_{N+1}-twirled |+>^M.

    Row ``lam`` holds sqrt(C(M,n)/2^M) on every n with n mod (N+1) == lam.
    """
    amps = binomial_amplitudes(M)
    n = np.arange(M + 1)
    return np.array([np.where(n % (N + 1) == lam, amps, 0.0) for lam in range(N + 1)])


def block_fidelity(rho, N: int) -> float:
    """Root fidelity between a U(1)-twirled density and the Z_{N+1}-twirled |+>^M.

    Uses the block structure: sum over sectors of sqrt(<phi^lam| rho |phi^lam>).
    """
    mat = as_matrix(twirl_u1(rho))
    M = mat.shape[0] - 1
    phis = zn_sector_states(M, N)
    vals = np.einsum("li,ij,lj->l", phis.conj(), mat, phis).real
    return float(np.sum(np.sqrt(np.clip(vals, 0.0, None))))


def remote_prepare(seed: PhaseAmplitudes, theta: float) -> Ensemble:
    """Ensemble Bob holds after Alice's Fourier-basis measurement.

    The N+1 outcomes are equally likely and leave Bob with
    ``apply_phase(seed, theta + 2*pi*k/(N+1))``.
    """
    n_out = seed.dim
    members = tuple(
        (1.0 / n_out, apply_phase(seed, theta + 2 * np.pi * k / n_out)) for k in range(n_out)
    )
    return Ensemble(members)
