"""Operator-space algebra over d x d matrices.

Operators are plain complex (or real) numpy arrays regarded as vectors in
the d^2-dimensional operator space with the unnormalized Hilbert-Schmidt
inner product Tr(A^dag B).  Heisenberg evolution uses the sign convention
O(t) = exp(-iHt) O exp(+iHt); every quantity exported by this package is
insensitive to that choice for Hermitian H with real spectrum symmetric
entries, but the convention is fixed here once and documented.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def hs_inner(o1: np.ndarray, o2: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product Tr(o1^dag o2)."""
    if o1.shape != o2.shape:
        raise ValueError(f"dimension mismatch: {o1.shape} vs {o2.shape}")
    return complex(np.vdot(o1, o2))


def hs_norm(o: np.ndarray) -> float:
    """Hilbert-Schmidt norm sqrt(Tr(o^dag o)) (Frobenius norm)."""
    return float(np.linalg.norm(o))


def liouvillian_apply(h: np.ndarray, o: np.ndarray) -> np.ndarray:
    """Commutator [H, O] = HO - OH, the Liouvillian acting on O."""
    if h.shape != o.shape:
        raise ValueError(f"dimension mismatch: {h.shape} vs {o.shape}")
    return h @ o - o @ h


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigendecomposition H = V diag(E) V^dag of a Hermitian matrix.

    eigenvalues are ascending; eigenvector columns are orthonormal.
    Immutable and shareable across workers.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @classmethod
    def from_hamiltonian(cls, h: np.ndarray) -> "SpectralDecomposition":
        evals, evecs = np.linalg.eigh(h)
        return cls(eigenvalues=evals, eigenvectors=evecs)

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def hamiltonian(self) -> np.ndarray:
        """Reconstruct the Hamiltonian V diag(E) V^dag."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def to_eigenbasis(self, o: np.ndarray) -> np.ndarray:
        return self.eigenvectors.conj().T @ o @ self.eigenvectors

    def from_eigenbasis(self, o_eig: np.ndarray) -> np.ndarray:
        return self.eigenvectors @ o_eig @ self.eigenvectors.conj().T


def evolve_operator(spec: SpectralDecomposition, o: np.ndarray, t: float) -> np.ndarray:
    """Heisenberg-evolved operator exp(-iHt) O exp(+iHt).

    Computed in the eigenbasis, where entry (m, n) picks up the phase
    exp(-i (E_m - E_n) t).
    """
    if not np.isfinite(t):
        raise ValueError("time must be finite")
    e = spec.eigenvalues
    o_eig = spec.to_eigenbasis(o)
    phases = np.exp(-1j * t * (e[:, None] - e[None, :]))
    return spec.from_eigenbasis(o_eig * phases)


def autocorrelation(spec: SpectralDecomposition, o: np.ndarray, t: float) -> complex:
    """Autocorrelation G(t) = (O | O(t)) under the HS inner product."""
    e = spec.eigenvalues
    o_eig = spec.to_eigenbasis(o)
    phases = np.exp(-1j * t * (e[:, None] - e[None, :]))
    return complex(np.sum(np.abs(o_eig) ** 2 * phases))
