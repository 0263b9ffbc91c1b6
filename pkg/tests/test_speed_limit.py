"""Operator quantum speed limits and resonance counting."""

import numpy as np
import pytest

from krylovlab.hamiltonians import sample_goe
from krylovlab.krylov import lanczos
from krylovlab.operator_space import SpectralDecomposition, evolve_operator
from krylovlab.speed_limit import (StationaryOperatorError, average_speed,
                                   complexity_oqsl, complexity_oqsl_curve,
                                   count_resonances, geodesic_distance,
                                   kernel_refined_complexity_oqsl, oqsl,
                                   refined_oqsl)

from conftest import X, Z, random_hermitian


def _spec(h):
    return SpectralDecomposition.from_hamiltonian(h)


class TestGeodesicDistance:
    def test_same_operator(self):
        # arccos near 1 amplifies rounding as sqrt(2 eps) ~ 2e-8
        assert geodesic_distance(X, X) == pytest.approx(0.0, abs=1e-6)

    def test_orthogonal_equal_norm(self):
        d = geodesic_distance(X, Z)
        assert d == pytest.approx(np.sqrt(2.0) * np.pi / 2, abs=1e-12)

    def test_x_evolved_closed_form(self):
        t = 0.3
        u = evolve_operator(_spec(Z), X, t)
        d = geodesic_distance(X, u)
        assert d == pytest.approx(0.6 * np.sqrt(2.0), abs=1e-10)

    def test_norm_mismatch(self):
        with pytest.raises(ValueError):
            geodesic_distance(X, 2 * Z)


class TestAverageSpeed:
    def test_stationary(self):
        assert average_speed(_spec(Z), Z, 1.0) == pytest.approx(0.0, abs=1e-12)

    def test_single_qubit_constant(self):
        for tau in (0.2, 1.0, 4.0):
            v = average_speed(_spec(Z), X, tau)
            assert v == pytest.approx(2 * np.sqrt(2.0), abs=1e-10)

    def test_integrand_constancy(self, rng):
        h = random_hermitian(rng, 8)
        o = random_hermitian(rng, 8)
        spec = _spec(h)
        from krylovlab.operator_space import hs_norm, liouvillian_apply
        vals = [hs_norm(liouvillian_apply(h, evolve_operator(spec, o, t)))
                for t in np.linspace(0.0, 5.0, 10)]
        assert np.max(np.abs(np.array(vals) - vals[0])) < 1e-10

    def test_invalid_horizon(self):
        with pytest.raises(ValueError):
            average_speed(_spec(Z), X, 0.0)


class TestOqsl:
    def test_saturation_on_geodesic(self):
        res = oqsl(_spec(Z), X, 0.5)
        assert res.tau_qsl == pytest.approx(0.5, abs=1e-9)

    def test_loose_past_branch(self):
        res = oqsl(_spec(Z), X, 2.0)
        assert res.tau_qsl < 2.0

    def test_bound_random_instance(self, rng):
        h = random_hermitian(rng, 8)
        o = random_hermitian(rng, 8)
        res = oqsl(_spec(h), o, 1.5)
        assert res.tau_qsl <= 1.5 + 1e-9


class TestRefinedOqsl:
    def test_fully_stationary(self):
        with pytest.raises(StationaryOperatorError):
            refined_oqsl(_spec(Z), Z, 1.0)

    def test_empty_kernel_component(self):
        basic = oqsl(_spec(Z), X, 0.7)
        refined = refined_oqsl(_spec(Z), X, 0.7)
        assert refined.stationary_norm == pytest.approx(0.0, abs=1e-12)
        assert refined.tau_ref == pytest.approx(basic.tau_qsl, abs=1e-10)

    def test_kernel_projection_by_hand(self):
        # O = X + Z under H = Z: the Z part is stationary, the reduced
        # dynamics is the pure-X geodesic, so the refined bound saturates.
        res = refined_oqsl(_spec(Z), X + Z, 0.5)
        assert res.stationary_norm == pytest.approx(np.sqrt(2.0), abs=1e-10)
        assert res.tau_ref == pytest.approx(0.5, abs=1e-9)

    def test_refined_bound_valid(self, rng):
        h = random_hermitian(rng, 8)
        o = random_hermitian(rng, 8)
        refined = refined_oqsl(_spec(h), o, 1.0)
        assert refined.tau_ref <= 1.0 + 1e-9
        assert refined.geodesic >= 0.0


class TestComplexityOqsl:
    def test_two_level_saturation(self):
        res = lanczos(Z, X)
        for tau in (0.05, 0.2, np.pi / 8):
            out = complexity_oqsl(res, tau)
            assert out.tau_ref == pytest.approx(tau, abs=1e-8)

    def test_zero_horizon(self):
        res = lanczos(Z, X)
        curve = complexity_oqsl_curve(res, np.array([1e-12]))
        assert curve[0] == pytest.approx(0.0, abs=1e-9)

    def test_trivial_krylov_space(self):
        res = lanczos(Z, Z + np.eye(2))
        with pytest.raises(ValueError):
            complexity_oqsl(res, 1.0)

    def test_bound_on_anni_grid(self):
        h = sample_goe(12, seed=1)
        o = sample_goe(12, seed=2)
        res = lanczos(h, o)
        taus = np.linspace(0.05, 5.0, 50)
        curve = complexity_oqsl_curve(res, taus)
        assert np.all(curve <= taus + 1e-9)

    def test_rescaling_identity(self):
        # T -> 2T compresses the bound: tau_ref_{2H}(tau) = tau_ref_H(2 tau) / 2,
        # the dimensional content of the bound formula
        h = sample_goe(8, seed=3)
        o = sample_goe(8, seed=4)
        res1 = lanczos(h, o)
        res2 = lanczos(2 * h, o)
        for tau in (0.02, 0.1, 0.5):
            a = complexity_oqsl(res2, tau).tau_ref
            b = complexity_oqsl(res1, 2 * tau).tau_ref / 2
            assert a == pytest.approx(b, rel=1e-6)


class TestKernelRefinedComplexityOqsl:
    def test_two_level_no_stationary_part(self):
        res = lanczos(Z, X)
        plain = complexity_oqsl(res, 0.2)
        refined = kernel_refined_complexity_oqsl(res, 0.2)
        assert refined.stationary_norm == pytest.approx(0.0, abs=1e-10)
        assert refined.tau_ref == pytest.approx(plain.tau_ref, abs=1e-9)

    def test_zero_horizon(self):
        res = lanczos(Z, X)
        out = kernel_refined_complexity_oqsl(res, 1e-12)
        assert out.tau_ref == pytest.approx(0.0, abs=1e-9)

    def test_goe_refinement_tightens(self):
        h = sample_goe(30, seed=5)
        o = sample_goe(30, seed=6)
        res = lanczos(h, o)
        plain = complexity_oqsl(res, 1.0)
        refined = kernel_refined_complexity_oqsl(res, 1.0)
        assert refined.stationary_norm > 0.0
        assert refined.tau_ref >= plain.tau_ref - 1e-9

    def test_super_liouvillian_spectrum(self):
        # eigenvalues of S = [T, .] are the pairwise differences of T's
        h = sample_goe(6, seed=7)
        o = sample_goe(6, seed=8)
        res = lanczos(h, o)
        dk = res.krylov_dim
        assert dk <= 40
        t = res.tridiagonal
        s = np.kron(t, np.eye(dk)) - np.kron(np.eye(dk), t.T)
        lam = np.linalg.eigvalsh((s + s.T) / 2)
        tl = np.linalg.eigvalsh(t)
        diffs = np.sort((tl[:, None] - tl[None, :]).ravel())
        assert np.max(np.abs(np.sort(lam) - diffs)) < 1e-8


class TestCountResonances:
    def test_three_level_example(self):
        rep = count_resonances(np.array([0.0, 1.0, 2.0]), tol=1e-12)
        assert (rep.count1, rep.count2) == (0, 1)

    def test_degenerate_pair(self):
        rep = count_resonances(np.array([0.0, 0.0]), tol=1e-12)
        assert rep.count1 == 1

    def test_monotone_in_tolerance(self):
        ev = np.linalg.eigvalsh(sample_goe(20, seed=9))
        loose = count_resonances(ev, tol=1e-6)
        tight = count_resonances(ev, tol=1e-12)
        assert loose.count1 >= tight.count1
        assert loose.count2 >= tight.count2

    def test_brute_force_oracle(self, rng):
        ev = rng.uniform(0.0, 1.0, size=7)
        tol = 0.05
        c1 = sum(abs(ev[m] - ev[n]) <= tol
                 for m in range(7) for n in range(m + 1, 7))
        pairs = [(j, k) for j in range(7) for k in range(j, 7)]
        c2 = sum(abs(ev[j] + ev[k] - ev[m] - ev[n]) <= tol
                 for i, (j, k) in enumerate(pairs)
                 for (m, n) in pairs[i + 1:])
        rep = count_resonances(ev, tol=tol)
        assert (rep.count1, rep.count2) == (c1, c2)
