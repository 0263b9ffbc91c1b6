"""Hamiltonian families: GOE matrices, type-1 integrable matrices, ANNI chain.

All sampling routines are pure functions of (parameters, seed) and return
dense real-symmetric numpy arrays in dimensionless energy units.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class SingularParametrizationError(ValueError):
    """Raised when coincident e-values make the type-1 formula singular."""


def check_hermitian(h: np.ndarray, tol: float = 1e-12) -> None:
    """Raise if H deviates from Hermiticity by more than tol * max|H|."""
    scale = max(np.abs(h).max(), 1.0)
    dev = np.abs(h - h.conj().T).max()
    if dev > tol * scale:
        raise ValueError(f"matrix is not Hermitian (deviation {dev:.3e})")


@dataclass(frozen=True)
class Type1Params:
    """Parameters of a type-1 integrable matrix H(x) = xT + V.

    gamma must have unit Euclidean norm; the e-values must be pairwise
    distinct (they appear in denominators).
    """

    dim: int
    x: float
    gamma: np.ndarray
    d_values: np.ndarray
    e_values: np.ndarray

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        for name in ("gamma", "d_values", "e_values"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (self.dim,):
                raise ValueError(f"{name} must be a length-{self.dim} vector")
            object.__setattr__(self, name, v)
        if abs(np.linalg.norm(self.gamma) - 1.0) > 1e-10:
            raise ValueError("gamma must have unit Euclidean norm")
        _check_distinct(self.e_values, "e_values")


def _check_distinct(values: np.ndarray, name: str) -> None:
    v = np.sort(values)
    scale = max(v[-1] - v[0], 1.0) if len(v) > 1 else 1.0
    if len(v) > 1 and np.min(np.diff(v)) <= 1e-12 * scale:
        raise SingularParametrizationError(f"{name} contains (numerically) coincident entries")


@dataclass(frozen=True)
class AnniParams:
    """ANNI chain: L sites, next-nearest XX coupling g, transverse field h."""

    L: int
    g: float
    h: float
    max_sites: int = 14

    def __post_init__(self):
        if self.L < 2:
            raise ValueError("L must be at least 2")
        if self.L > self.max_sites:
            raise ValueError(f"L={self.L} exceeds the memory budget (max {self.max_sites})")


def sample_goe(dim: int, seed: int) -> np.ndarray:
    """GOE sample H = (A + A^T)/2 with A of i.i.d. standard normal entries."""
    if dim < 1:
        raise ValueError("dim must be positive")
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((dim, dim))
    return (a + a.T) / 2.0


def build_type1(params: Type1Params) -> np.ndarray:
    """Dense real-symmetric type-1 matrix from its (gamma, d, e, x) data.

    H_ij = x g_i g_j (d_i - d_j)/(e_i - e_j) off the diagonal and
    H_jj = d_j - x sum_{k != j} g_k^2 (d_j - d_k)/(e_j - e_k).
    """
    g, d, e, x = params.gamma, params.d_values, params.e_values, params.x
    dd = d[:, None] - d[None, :]
    ee = e[:, None] - e[None, :]
    np.fill_diagonal(ee, 1.0)  # avoid 0/0 on the diagonal; overwritten below
    ratio = dd / ee
    h = x * np.outer(g, g) * ratio
    diag = d - x * (ratio.T * g[:, None] ** 2).sum(axis=0)
    np.fill_diagonal(h, diag)
    return h


# Coupling scale of the crossover ensemble.  With a unit-norm gamma the
# type-1 mixing term carries a 1/dim suppression, so the bare x in [0, 1]
# barely perturbs diag(d); an effective coupling of order 0.1 * dim is where
# the gap statistics of the spectrum complete the Poisson/Wigner-Dyson
# crossover (calibrated numerically at dim = 100, see tests).
_TYPE1_COUPLING_SCALE = 0.1


def sample_type1_ensemble(dim: int, x: float, seed: int) -> np.ndarray:
    """Sample the type-1 crossover ensemble at level-repulsion parameter x.

    gamma is uniform on the unit sphere; e and d are sorted eigenvalue sets
    of two independent GOE samples.  The type-1 mixing coupling decreases
    with x (0.1 * dim * (1 - x)): at x = 0 the strong mixing scrambles the
    spectrum into Poisson gap statistics (<r> ~ 0.386), while x = 1 leaves
    the bare GOE eigenvalue set diag(d) with Wigner-Dyson statistics
    (<r> ~ 0.53).  Resamples internally (up to 10 times) on a degenerate
    e-set; deterministic per seed.
    """
    if dim < 2:
        raise ValueError("dim must be at least 2")
    coupling = _TYPE1_COUPLING_SCALE * dim * (1.0 - x)
    ss = np.random.SeedSequence([int(seed), 0x7471])
    for child in ss.spawn(10):
        rng = np.random.default_rng(child)
        gamma = rng.standard_normal(dim)
        gamma /= np.linalg.norm(gamma)
        e = np.sort(np.linalg.eigvalsh(sample_goe(dim, rng.integers(2 ** 63))))
        d = np.sort(np.linalg.eigvalsh(sample_goe(dim, rng.integers(2 ** 63))))
        try:
            params = Type1Params(dim=dim, x=coupling, gamma=gamma, d_values=d, e_values=e)
        except SingularParametrizationError:
            continue
        return build_type1(params)
    raise SingularParametrizationError("could not sample a nondegenerate e-set in 10 attempts")


def randomize_eigenvectors(h: np.ndarray, seed: int) -> np.ndarray:
    """Replace the eigenvectors of H by a Haar-random orthogonal frame.

    Returns Q diag(E) Q^T with E the spectrum of H and Q drawn from the
    Haar measure (QR of a Gaussian matrix, R-diagonal signs fixed).
    """
    check_hermitian(h)
    evals = np.linalg.eigvalsh(h)
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal(h.shape))
    q = q * np.sign(np.diag(r))
    out = (q * evals) @ q.T
    # resymmetrize exactly; the matmul alone is symmetric only to roundoff
    return (out + out.T) / 2.0


# single-site Pauli matrices, real where possible
_X = np.array([[0.0, 1.0], [1.0, 0.0]])
_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


def _site_op(op: np.ndarray, site: int, L: int) -> np.ndarray:
    """Embed a single-site operator at `site` (1-indexed) in an L-site chain."""
    out = np.eye(2 ** (site - 1))
    out = np.kron(out, op)
    return np.kron(out, np.eye(2 ** (L - site)))


def pauli_x(site: int, L: int) -> np.ndarray:
    return _site_op(_X, site, L)


def pauli_z(site: int, L: int) -> np.ndarray:
    return _site_op(_Z, site, L)


def build_anni(params: AnniParams) -> np.ndarray:
    """ANNI Hamiltonian with open boundaries, dense 2^L x 2^L real symmetric.

    H = - sum_{i<L} Z_i Z_{i+1} - h sum_i X_i - g sum_{i<=L-2} X_i X_{i+2};
    couplings that would reach past the open end are dropped.
    """
    L, g, h = params.L, params.g, params.h
    dim = 2 ** L
    ham = np.zeros((dim, dim))
    for i in range(1, L):
        ham -= pauli_z(i, L) @ pauli_z(i + 1, L)
    for i in range(1, L + 1):
        ham -= h * pauli_x(i, L)
    for i in range(1, L - 1):
        ham -= g * pauli_x(i, L) @ pauli_x(i + 2, L)
    return ham


def mean_gap_ratio(eigenvalues: np.ndarray) -> float:
    """Mean consecutive-gap ratio <r> = <min(s_i, s_{i+1}) / max(s_i, s_{i+1})>.

    ~0.386 for Poisson spectra, ~0.531 for GOE.  Pairs where both adjacent
    gaps vanish (below 1e-13 of the spectral range) are skipped; a single
    vanishing gap contributes r = 0.
    """
    e = np.sort(np.asarray(eigenvalues, dtype=float))
    if e.size < 3:
        raise ValueError("need at least 3 eigenvalues")
    s = np.diff(e)
    tiny = 1e-13 * max(e[-1] - e[0], 1.0)
    lo = np.minimum(s[:-1], s[1:])
    hi = np.maximum(s[:-1], s[1:])
    keep = hi > tiny
    if not np.any(keep):
        raise ValueError("spectrum is fully degenerate")
    return float(np.mean(lo[keep] / hi[keep]))
