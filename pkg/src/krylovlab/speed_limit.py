"""Operator quantum speed limits and spectral resonance diagnostics.

The basic bound compares the geodesic distance on the constant-norm sphere
in operator space against the path length traversed under Heisenberg
evolution.  The refined bound removes the part of the operator that is
stationary under the Liouvillian flow; the complexity-operator bounds live
entirely in the D_K-dimensional Krylov subspace.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .krylov import LanczosResult
from .operator_space import (SpectralDecomposition, evolve_operator, hs_inner,
                             hs_norm, liouvillian_apply)

_trapezoid = getattr(np, "trapezoid", None) or np.trapz


class StationaryOperatorError(ValueError):
    """Raised when the (reduced) operator does not move under the flow."""


@dataclass(frozen=True)
class OqslResult:
    """Speed-limit evaluation at horizon tau.

    tau_qsl is the basic bound, tau_ref the refined one (they coincide when
    nothing stationary was subtracted); stationary_norm is the norm of the
    subtracted stationary part.
    """

    tau: float
    geodesic: float
    path_speed: float
    tau_qsl: float
    tau_ref: float
    stationary_norm: float


@dataclass(frozen=True)
class ResonanceReport:
    """Counts of 1-resonances (E_m = E_n) and 2-resonances
    (E_j + E_k = E_m + E_n over distinct unordered index pairs)."""

    count1: int
    count2: int
    tol: float


def geodesic_distance(o: np.ndarray, u: np.ndarray) -> float:
    """Geodesic distance ||O|| arccos(Re(O|U) / ||O||^2) on the norm sphere."""
    n1, n2 = hs_norm(o), hs_norm(u)
    if abs(n1 - n2) > 1e-8 * max(n1, 1.0):
        raise ValueError(f"operators lie on different spheres: {n1} vs {n2}")
    overlap = hs_inner(o, u).real / n1 ** 2
    return n1 * float(np.arccos(np.clip(overlap, -1.0, 1.0)))


def average_speed(spec: SpectralDecomposition, o: np.ndarray, tau: float,
                  grid_points: int = 64) -> float:
    """Average evolution speed V(tau) = (1/tau) int_0^tau ||L O(t)|| dt.

    Trapezoidal quadrature; for time-independent H the integrand is constant
    (unitary invariance), so this equals ||[H, O]|| up to round-off.
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    h = spec.hamiltonian()
    ts = np.linspace(0.0, tau, grid_points)
    vals = np.array([hs_norm(liouvillian_apply(h, evolve_operator(spec, o, t)))
                     for t in ts])
    return float(_trapezoid(vals, ts) / tau)


def oqsl(spec: SpectralDecomposition, o: np.ndarray, tau: float,
         grid_points: int = 64) -> OqslResult:
    """Basic operator quantum speed limit at horizon tau."""
    return _oqsl(spec, o, tau, grid_points, refine=False)


def refined_oqsl(spec: SpectralDecomposition, o: np.ndarray, tau: float,
                 grid_points: int = 64,
                 degeneracy_tol: float | None = None) -> OqslResult:
    """Refined bound: subtract the projection of O onto Ker(L) first.

    The kernel projection keeps eigenbasis entries (m, n) with
    |E_m - E_n| <= degeneracy_tol (default 1e-10 * spectral range).
    """
    return _oqsl(spec, o, tau, grid_points, refine=True,
                 degeneracy_tol=degeneracy_tol)


def _oqsl(spec, o, tau, grid_points, refine, degeneracy_tol=None):
    if tau <= 0:
        raise ValueError("tau must be positive")
    g0 = hs_norm(o) ** 2
    speed = average_speed(spec, o, tau, grid_points)
    if speed <= 1e-13 * np.sqrt(g0):
        raise StationaryOperatorError("operator is stationary under the flow")
    gt = hs_inner(o, evolve_operator(spec, o, tau)).real
    angle = float(np.arccos(np.clip(gt / g0, -1.0, 1.0)))
    tau_qsl = np.sqrt(g0) * angle / speed
    if not refine:
        geo = np.sqrt(g0) * angle
        return OqslResult(tau=tau, geodesic=geo, path_speed=speed,
                          tau_qsl=tau_qsl, tau_ref=tau_qsl, stationary_norm=0.0)

    e = spec.eigenvalues
    if degeneracy_tol is None:
        degeneracy_tol = 1e-10 * max(e[-1] - e[0], 1.0)
    o_eig = spec.to_eigenbasis(o)
    kernel = np.abs(e[:, None] - e[None, :]) <= degeneracy_tol
    s_norm_sq = float(np.sum(np.abs(o_eig[kernel]) ** 2))
    g0_red = g0 - s_norm_sq
    if g0_red <= 1e-13 * g0:
        raise StationaryOperatorError("operator lies entirely in Ker(L)")
    angle_red = float(np.arccos(np.clip((gt - s_norm_sq) / g0_red, -1.0, 1.0)))
    tau_ref = np.sqrt(g0_red) * angle_red / speed
    return OqslResult(tau=tau, geodesic=np.sqrt(g0_red) * angle_red,
                      path_speed=speed, tau_qsl=tau_qsl, tau_ref=tau_ref,
                      stationary_norm=float(np.sqrt(s_norm_sq)))


def _complexity_frame(result: LanczosResult):
    """Cached Krylov-frame data for the complexity-operator bounds.

    Returns (lam, m, p) with lam the tridiagonal eigenvalues, m the
    traceless complexity operator in that eigenbasis and p = m ** 2.
    """
    if "kframe" not in result._cache:
        dk = result.krylov_dim
        lam, w = result.tridiagonal_eig()
        k = np.arange(dk, dtype=float)
        k -= k.mean()  # subtract the identity component
        m = (w.T * k) @ w
        result._cache["kframe"] = (lam, m, m ** 2)
    return result._cache["kframe"]


def _koqsl_eval(lam: np.ndarray, p: np.ndarray, taus: np.ndarray):
    """tau_ref(tau) for a (possibly reduced) complexity operator.

    p holds the squared eigenbasis matrix elements; the overlap is
    Re sum_ab p_ab exp(-i (lam_a - lam_b) tau) and the speed is
    sqrt(sum_ab (lam_a - lam_b)^2 p_ab), both Frobenius-based.
    """
    norm_sq = float(p.sum())
    if norm_sq <= 0.0:
        raise StationaryOperatorError("complexity operator has no moving part")
    row, col = p.sum(axis=1), p.sum(axis=0)
    lam2 = lam ** 2
    speed_sq = float(lam2 @ row + lam2 @ col - 2.0 * (lam @ p @ lam))
    speed = np.sqrt(max(speed_sq, 0.0))
    if speed <= 1e-13 * np.sqrt(norm_sq):
        raise StationaryOperatorError("complexity operator is stationary")
    angles = np.outer(lam, np.atleast_1d(taus))
    # cos((lam_a - lam_b) tau) split into real BLAS-friendly products
    c, s = np.cos(angles), np.sin(angles)
    overlap = np.einsum("at,at->t", c, p @ c) + np.einsum("at,at->t", s, p @ s)
    angle = np.arccos(np.clip(overlap / norm_sq, -1.0, 1.0))
    norm = np.sqrt(norm_sq)
    return norm * angle / speed, norm * angle, speed


def complexity_oqsl(result: LanczosResult, tau: float) -> OqslResult:
    """OQSL of the complexity operator restricted to the Krylov subspace.

    Works with the traceless shift K - (Tr K / D_K) I evolved by the
    tridiagonal Liouvillian; Frobenius norms throughout.
    """
    if result.krylov_dim < 2:
        raise ValueError("complexity operator is trivial for D_K = 1")
    lam, _, p = _complexity_frame(result)
    bounds, geos, speed = _koqsl_eval(lam, p, np.asarray(tau, dtype=float))
    val = float(bounds[0])
    return OqslResult(tau=float(tau), geodesic=float(geos[0]), path_speed=speed,
                      tau_qsl=val, tau_ref=val, stationary_norm=0.0)


def complexity_oqsl_curve(result: LanczosResult, taus: np.ndarray) -> np.ndarray:
    """Vectorized complexity_oqsl over a horizon grid; returns tau_ref values."""
    if result.krylov_dim < 2:
        raise ValueError("complexity operator is trivial for D_K = 1")
    lam, _, p = _complexity_frame(result)
    return _koqsl_eval(lam, p, np.asarray(taus, dtype=float))[0]


def _kernel_reduced(result: LanczosResult, tol: float | None):
    lam, m, _ = _complexity_frame(result)
    if tol is None:
        tol = 1e-10 * max(lam[-1] - lam[0], 1.0)
    stationary = np.abs(lam[:, None] - lam[None, :]) <= tol
    m_red = np.where(stationary, 0.0, m)
    stat_norm = float(np.sqrt(np.sum(m[stationary] ** 2)))
    return lam, m_red ** 2, stat_norm


def kernel_refined_complexity_oqsl(result: LanczosResult, tau: float,
                                   tol: float | None = None) -> OqslResult:
    """Complexity-operator bound with the ker([T, .]) projection removed.

    In the eigenbasis of the tridiagonal Liouvillian T the stationary part
    of the (traceless) complexity operator consists of the entries whose
    eigenvalue difference vanishes within tol; those entries are subtracted
    before applying the bound.
    """
    if result.krylov_dim < 2:
        raise ValueError("complexity operator is trivial for D_K = 1")
    lam, p_red, stat_norm = _kernel_reduced(result, tol)
    bounds, geos, speed = _koqsl_eval(lam, p_red, np.asarray(tau, dtype=float))
    val = float(bounds[0])
    return OqslResult(tau=float(tau), geodesic=float(geos[0]), path_speed=speed,
                      tau_qsl=val, tau_ref=val, stationary_norm=stat_norm)


def kernel_refined_complexity_oqsl_curve(result: LanczosResult, taus: np.ndarray,
                                         tol: float | None = None):
    """Vectorized kernel-refined bound; returns (tau_ref array, stationary_norm)."""
    if result.krylov_dim < 2:
        raise ValueError("complexity operator is trivial for D_K = 1")
    lam, p_red, stat_norm = _kernel_reduced(result, tol)
    return _koqsl_eval(lam, p_red, np.asarray(taus, dtype=float))[0], stat_norm


def _pairs_within(sorted_vals: np.ndarray, tol: float) -> int:
    """Unordered pairs i < j with sorted_vals[j] - sorted_vals[i] <= tol."""
    hi = np.searchsorted(sorted_vals, sorted_vals + tol, side="right")
    return int(np.sum(hi - np.arange(1, len(sorted_vals) + 1)))


def count_resonances(eigenvalues: np.ndarray, tol: float) -> ResonanceReport:
    """Count 1- and 2-resonances of a spectrum at absolute tolerance tol.

    2-resonances run over unordered pairs {j, k} (j = k allowed) of
    unordered index pairs with {j, k} != {m, n} and
    |E_j + E_k - E_m - E_n| <= tol.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    e = np.sort(np.asarray(eigenvalues, dtype=float))
    count1 = _pairs_within(e, tol)
    iu, ju = np.triu_indices(len(e))
    sums = np.sort(e[iu] + e[ju])
    count2 = _pairs_within(sums, tol)
    return ResonanceReport(count1=count1, count2=count2, tol=float(tol))
