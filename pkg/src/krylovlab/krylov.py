"""Lanczos algorithm over operator space and Krylov complexity.

Operators are flattened to d^2-component vectors; the Liouvillian acts by
dense commutators.  The recursion keeps full reorthogonalization (two
Gram-Schmidt passes against the whole stored basis), which at desk scale
is what keeps the b_n plateaus clean.

For a real symmetric Hamiltonian and a real symmetric seed the Krylov
chain alternates exactly between symmetric and antisymmetric operators,
and opposite-parity vectors are orthogonal by construction.  The
implementation detects that case and stores each vector in a packed
half-triangle layout, reorthogonalizing only against same-parity
vectors.  This cuts the dominant memory traffic by a factor of four
while reproducing the generic recursion to roundoff.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .operator_space import SpectralDecomposition, evolve_operator, hs_norm


class _ParityBasis:
    """Krylov vectors split by matrix parity in packed triangle storage.

    Even-index vectors are symmetric matrices stored as
    [diagonal, sqrt(2) * upper triangle]; odd-index vectors are
    antisymmetric, stored as [sqrt(2) * upper triangle].  The scaling
    makes packed dot products equal Hilbert-Schmidt inner products.
    """

    def __init__(self, even: np.ndarray, odd: np.ndarray, dim: int):
        self.even = even
        self.odd = odd
        self.dim = dim
        iu = np.triu_indices(dim, 1)
        self._iu = iu
        self._il = (iu[1], iu[0])

    def __len__(self) -> int:
        return self.even.shape[0] + self.odd.shape[0]

    def pack_sym(self, mat: np.ndarray) -> np.ndarray:
        upper = (mat[self._iu] + mat[self._il]) / np.sqrt(2.0)
        return np.concatenate([mat.diagonal(), upper])

    def pack_antisym(self, mat: np.ndarray) -> np.ndarray:
        return (mat[self._iu] - mat[self._il]) / np.sqrt(2.0)

    def unpack(self, n: int) -> np.ndarray:
        d = self.dim
        mat = np.zeros((d, d))
        if n % 2 == 0:
            packed = self.even[n // 2]
            mat[self._iu] = packed[d:] / np.sqrt(2.0)
            mat += mat.T
            mat[np.arange(d), np.arange(d)] = packed[:d]
        else:
            mat[self._iu] = self.odd[n // 2] / np.sqrt(2.0)
            mat -= mat.T
        return mat

    def project(self, flat: np.ndarray) -> np.ndarray:
        """Inner products (K_n | A) for a flattened d x d matrix A."""
        mat = flat.reshape(self.dim, self.dim)
        sym = np.concatenate([mat.diagonal(),
                              (mat[self._iu] + mat[self._il]) / np.sqrt(2.0)])
        anti = (mat[self._iu] - mat[self._il]) / np.sqrt(2.0)
        out = np.empty(len(self), dtype=np.result_type(flat.dtype, float))
        out[0::2] = self.even @ sym
        out[1::2] = self.odd @ anti
        return out


@dataclass
class LanczosResult:
    """Lanczos coefficients b_n, orthonormal Krylov basis, D_K.

    The basis rows are the flattened Krylov operators K_0 .. K_{D_K - 1},
    held either as a dense array or in packed parity storage; tridiagonal
    is the Liouvillian restricted to the Krylov subspace (zero diagonal,
    b on the off-diagonals).  truncated marks runs that hit max_steps
    before breakdown.
    """

    b: np.ndarray
    dim: int
    truncated: bool = False
    _store: object = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def krylov_dim(self) -> int:
        return len(self._store)

    @property
    def tridiagonal(self) -> np.ndarray:
        t = np.zeros((self.krylov_dim, self.krylov_dim))
        if len(self.b):
            idx = np.arange(len(self.b))
            t[idx, idx + 1] = self.b
            t[idx + 1, idx] = self.b
        return t

    def operator(self, n: int) -> np.ndarray:
        """The n-th Krylov basis operator as a d x d matrix."""
        if isinstance(self._store, _ParityBasis):
            return self._store.unpack(n)
        return self._store[n].reshape(self.dim, self.dim)

    def basis_matrix(self) -> np.ndarray:
        """All Krylov vectors as rows of a (D_K, d^2) array."""
        if isinstance(self._store, _ParityBasis):
            rows = np.empty((self.krylov_dim, self.dim * self.dim))
            for n in range(self.krylov_dim):
                rows[n] = self._store.unpack(n).ravel()
            return rows
        return self._store

    def project(self, flat: np.ndarray) -> np.ndarray:
        """Inner products (K_n | A) of a flattened matrix with every K_n."""
        if isinstance(self._store, _ParityBasis):
            return self._store.project(flat)
        return self._store.conj() @ flat

    def tridiagonal_eig(self):
        """Cached eigendecomposition of the tridiagonal Liouvillian."""
        if "eig" not in self._cache:
            if len(self.b):
                lam, w = scipy.linalg.eigh_tridiagonal(
                    np.zeros(self.krylov_dim), np.asarray(self.b, dtype=float)
                )
            else:
                lam, w = np.zeros(1), np.eye(1)
            self._cache["eig"] = (lam, w)
        return self._cache["eig"]


@dataclass(frozen=True)
class KrylovAmplitudes:
    """phi[t_index, n] = (K_n | O(t)) / ||O|| on a fixed time grid."""

    times: np.ndarray
    phi: np.ndarray


def _lanczos_generic(h: np.ndarray, o: np.ndarray, tol: float,
                     max_steps: int) -> LanczosResult:
    """Dense-row recursion for complex or non-symmetric inputs."""
    d = h.shape[0]
    real = np.isrealobj(h) and np.isrealobj(o)
    dtype = np.float64 if real else np.complex128
    h = h.astype(dtype, copy=False)

    def apply_liouvillian(vec: np.ndarray) -> np.ndarray:
        k = vec.reshape(d, d)
        return (h @ k - k @ h).ravel()

    basis = np.empty((min(max_steps + 1, d * d), d * d), dtype=dtype)
    basis[0] = (o / hs_norm(o)).astype(dtype).ravel()

    b: list[float] = []
    w = apply_liouvillian(basis[0])
    threshold = tol * np.linalg.norm(w)
    if threshold == 0.0:
        # [H, O] = 0: the Krylov space is one-dimensional
        return LanczosResult(b=np.zeros(0), dim=d, _store=basis[:1].copy())

    truncated = False
    n = 1
    while True:
        if n >= 2:
            w -= b[-1] * basis[n - 2]
        for _ in range(2):  # two full Gram-Schmidt passes
            # (K_m | w) = conj(B @ conj(w)); avoids materializing conj(B)
            coeffs = np.conj(basis[:n] @ np.conj(w))
            w -= basis[:n].T @ coeffs
        beta = np.linalg.norm(w)
        if beta < threshold or n >= basis.shape[0]:
            truncated = beta >= threshold
            break
        basis[n] = w / beta
        b.append(float(beta))
        if n >= max_steps:
            truncated = True
            n += 1
            break
        w = apply_liouvillian(basis[n])
        n += 1

    return LanczosResult(b=np.asarray(b), dim=d, truncated=truncated,
                         _store=basis[:n].copy())


def _lanczos_parity(h: np.ndarray, o: np.ndarray, tol: float,
                    max_steps: int) -> LanczosResult:
    """Packed recursion for exactly symmetric real h and o."""
    d = h.shape[0]
    h = h.astype(np.float64, copy=False)
    iu = np.triu_indices(d, 1)
    il = (iu[1], iu[0])
    sqrt2 = np.sqrt(2.0)
    m = iu[0].size

    def apply_even(packed: np.ndarray) -> np.ndarray:
        # symmetric input, antisymmetric commutator output
        s = np.zeros((d, d))
        s[iu] = packed[d:] / sqrt2
        s += s.T
        s[np.arange(d), np.arange(d)] = packed[:d]
        w = h @ s - s @ h
        return (w[iu] - w[il]) / sqrt2

    def apply_odd(packed: np.ndarray) -> np.ndarray:
        # antisymmetric input, symmetric commutator output
        a = np.zeros((d, d))
        a[iu] = packed / sqrt2
        a -= a.T
        w = h @ a - a @ h
        return np.concatenate([w.diagonal(), (w[iu] + w[il]) / sqrt2])

    total_max = min(max_steps + 1, d * d)
    even = np.empty((total_max // 2 + 1, d + m))
    odd = np.empty((total_max // 2 + 1, m))
    o = np.asarray(o, dtype=np.float64) / hs_norm(o)
    even[0] = np.concatenate([o.diagonal(), (o[iu] + o[il]) / sqrt2])

    b: list[float] = []
    w = apply_even(even[0])
    threshold = tol * np.linalg.norm(w)
    if threshold == 0.0:
        store = _ParityBasis(even[:1].copy(), odd[:0].copy(), d)
        return LanczosResult(b=np.zeros(0), dim=d, _store=store)

    truncated = False
    n = 1
    while True:
        parity = n % 2
        block = odd if parity else even
        stored = n // 2 if parity else (n + 1) // 2
        if n >= 2:
            w -= b[-1] * block[n // 2 - 1]
        for _ in range(2):  # two Gram-Schmidt passes, same-parity rows only
            coeffs = block[:stored] @ w
            w -= block[:stored].T @ coeffs
        beta = np.linalg.norm(w)
        if beta < threshold or n >= total_max:
            truncated = beta >= threshold
            break
        block[n // 2] = w / beta
        b.append(float(beta))
        if n >= max_steps:
            truncated = True
            n += 1
            break
        w = apply_odd(block[n // 2]) if parity else apply_even(block[n // 2])
        n += 1

    store = _ParityBasis(even[:(n + 1) // 2].copy(), odd[:n // 2].copy(), d)
    return LanczosResult(b=np.asarray(b), dim=d, truncated=truncated,
                         _store=store)


def lanczos(h: np.ndarray, o: np.ndarray, tol: float = 1e-8,
            max_steps: int | None = None) -> LanczosResult:
    """Operator-space Lanczos with full reorthogonalization.

    Three-term recursion A_{n+1} = L K_n - b_n K_{n-1} followed by two
    re-projection passes against all stored basis vectors.  Terminates
    when the residual norm drops below tol * ||L K_0|| or after
    max_steps new vectors (result flagged truncated).
    """
    if not 0 < tol <= 1e-4:
        raise ValueError("tol must lie in (0, 1e-4]")
    d = h.shape[0]
    if max_steps is None:
        max_steps = d * d
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    if hs_norm(o) == 0.0:
        raise ValueError("starting operator is zero")

    if (np.isrealobj(h) and np.isrealobj(o)
            and np.array_equal(h, h.T) and np.array_equal(o, o.T)):
        return _lanczos_parity(h, o, tol, max_steps)
    return _lanczos_generic(h, o, tol, max_steps)


def krylov_evolve(result: LanczosResult, times: np.ndarray) -> KrylovAmplitudes:
    """Krylov amplitudes phi(t) = exp(-i T t) e_0 via the tridiagonal eigenbasis."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    lam, w = result.tridiagonal_eig()
    # phi_n(t) = sum_a W[n,a] exp(-i lam_a t) W[0,a]
    angles = np.outer(lam, times)
    scaled = np.ascontiguousarray(w * w[0])
    # split the complex phases so BLAS sees two contiguous real operands
    phi = scaled @ np.cos(angles) - 1j * (scaled @ np.sin(angles))
    return KrylovAmplitudes(times=times, phi=phi.T)


def krylov_amplitudes_direct(result: LanczosResult, spec: SpectralDecomposition,
                             o: np.ndarray, times: np.ndarray) -> KrylovAmplitudes:
    """Cross-validation route: explicit projections (K_n | O(t)) / ||O||."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    norm0 = hs_norm(o)
    phi = np.empty((len(times), result.krylov_dim), dtype=complex)
    for i, t in enumerate(times):
        ot = evolve_operator(spec, o, t).ravel() / norm0
        phi[i] = result.project(ot)
    return KrylovAmplitudes(times=times, phi=phi)


def k_complexity(amps: KrylovAmplitudes) -> np.ndarray:
    """Krylov complexity C_K(t) = sum_n n |phi_n(t)|^2 on the amplitude grid."""
    positions = np.arange(amps.phi.shape[1])
    return (np.abs(amps.phi) ** 2) @ positions


def complexity_matrix(krylov_dim: int) -> np.ndarray:
    """Complexity operator diag(0, 1, ..., D_K - 1) in the Krylov basis."""
    if krylov_dim < 1:
        raise ValueError("krylov_dim must be at least 1")
    return np.diag(np.arange(krylov_dim, dtype=float))


def save_bn_csv(result: LanczosResult, path) -> None:
    """Write the Lanczos coefficients as a two-column CSV (n, b_n)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "b_n"])
        for n, bn in enumerate(result.b, start=1):
            writer.writerow([n, repr(float(bn))])


def save_lanczos_npz(result: LanczosResult, path) -> None:
    """Binary dump of (b, tridiagonal, D_K)."""
    np.savez(path, b=result.b, tridiagonal=result.tridiagonal,
             krylov_dim=result.krylov_dim)
