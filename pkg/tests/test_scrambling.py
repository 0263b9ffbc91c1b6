"""Pauli decomposition, influence, IPR, size maps and operator entanglement."""

import numpy as np
import pytest
import scipy.stats

from krylovlab.scrambling import (influence, ipr, opee, pauli_decompose,
                                  pauli_reconstruct, pauli_size, pauli_sizes,
                                  size_resolved_map)

from conftest import (I2, X, Y, Z, kron_chain, pauli_trace_oracle,
                      random_hermitian)


def _label(digits):
    """Base-4 label from per-site digits (site 1 most significant)."""
    a = 0
    for d in digits:
        a = 4 * a + d
    return a


class TestPauliDecompose:
    def test_single_string(self):
        o = kron_chain([X, I2])
        c = pauli_decompose(o, 2)
        idx = _label([2, 0])  # X on site 1, identity on site 2
        assert abs(c.coeffs[idx] - 1.0) < 1e-12
        others = np.delete(c.coeffs, idx)
        assert np.max(np.abs(others)) < 1e-12

    def test_y_is_i_times_xz(self):
        c = pauli_decompose(Y, 1)
        assert abs(c.coeffs[_label([3])] - 1j) < 1e-12

    def test_three_qubit_trace_oracle(self, rng):
        o = random_hermitian(rng, 8)
        c = pauli_decompose(o, 3)
        oracle = pauli_trace_oracle(o, 3)
        assert np.max(np.abs(c.coeffs - oracle)) < 1e-12

    def test_normalization(self, rng):
        o = random_hermitian(rng, 8)
        c = pauli_decompose(o, 3)
        assert np.sum(np.abs(c.coeffs) ** 2) == pytest.approx(1.0, abs=1e-10)

    def test_reconstruction_round_trip(self, rng):
        o = random_hermitian(rng, 4)
        c = pauli_decompose(o, 2)
        rebuilt = pauli_reconstruct(c) * c.scale
        assert np.max(np.abs(rebuilt - o)) < 1e-10

    def test_bad_dimension(self):
        with pytest.raises(ValueError):
            pauli_decompose(np.eye(3), 2)


class TestPauliSize:
    def test_identity(self):
        assert pauli_size(0, 3) == 0

    def test_x_i_z(self):
        assert pauli_size(_label([2, 0, 1]), 3) == 2

    def test_all_y(self):
        assert pauli_size(_label([3, 3, 3, 3]), 4) == 4

    def test_sizes_table(self):
        sizes = pauli_sizes(2)
        assert sizes[0] == 0
        assert np.sum(sizes == 1) == 6
        assert np.sum(sizes == 2) == 9


class TestInfluence:
    def test_identity_operator(self):
        c = pauli_decompose(np.eye(4), 2)
        assert influence(c) == pytest.approx(0.0, abs=1e-12)

    def test_single_site(self):
        c = pauli_decompose(kron_chain([I2, X, I2]), 3)
        assert influence(c) == pytest.approx(1.0, abs=1e-12)

    def test_mixed_weights(self):
        o = (kron_chain([X, I2]) + kron_chain([X, X])) / np.sqrt(2.0)
        c = pauli_decompose(o, 2)
        assert influence(c) == pytest.approx(1.5, abs=1e-12)


class TestIpr:
    def test_single_string(self):
        c = pauli_decompose(kron_chain([Z, Z]), 2)
        assert ipr(c) == pytest.approx(1.0, abs=1e-12)

    def test_equal_superposition(self):
        o = (kron_chain([X, I2]) + kron_chain([I2, X])
             + kron_chain([Z, Z])) / np.sqrt(3.0)
        c = pauli_decompose(o, 2)
        assert ipr(c) == pytest.approx(3.0, abs=1e-10)

    def test_goe_kurtosis_oracle(self, rng):
        # for Gaussian coefficients IPR -> 4^n / 3 (kurtosis of the
        # squared-coefficient distribution); 64/3 at n = 3.  Hermitian
        # (not real symmetric) input so every string carries weight
        vals = [ipr(pauli_decompose(random_hermitian(rng, 8), 3))
                for _ in range(50)]
        assert np.mean(vals) == pytest.approx(64.0 / 3.0, rel=0.15)

    def test_zero_operator(self):
        with pytest.raises(ValueError):
            pauli_decompose(np.zeros((4, 4)), 2)


class TestSizeResolvedMap:
    def test_row_lengths(self, rng):
        rows = size_resolved_map(pauli_decompose(random_hermitian(rng, 4), 2))
        assert [len(r) for r in rows] == [1, 6, 9]

    def test_single_size_two_string(self):
        rows = size_resolved_map(pauli_decompose(kron_chain([X, Z]), 2))
        assert np.max(rows[0]) < 1e-12
        assert np.max(rows[1]) < 1e-12
        assert np.sum(rows[2] > 0.5) == 1
        assert np.max(rows[2]) == pytest.approx(1.0, abs=1e-12)

    def test_parseval_partition(self, rng):
        c = pauli_decompose(random_hermitian(rng, 8), 3)
        rows = size_resolved_map(c)
        total = sum(float(np.sum(r ** 2)) for r in rows)
        assert total == pytest.approx(1.0, abs=1e-10)
        w = sum(k * float(np.sum(r ** 2)) for k, r in enumerate(rows))
        assert w == pytest.approx(influence(c), abs=1e-12)


class TestOpee:
    def test_product_operator(self):
        out = opee(kron_chain([X, Z]), 2, 1)
        assert out.entropy_bits == pytest.approx(0.0, abs=1e-12)

    def test_swap_two_bits(self):
        swap = np.array([[1, 0, 0, 0], [0, 0, 1, 0],
                         [0, 1, 0, 0], [0, 0, 0, 1]], dtype=float)
        out = opee(swap, 2, 1)
        assert out.entropy_bits == pytest.approx(2.0, abs=1e-9)

    def test_random_unitary_bounds(self, rng):
        u = scipy.stats.unitary_group.rvs(16, random_state=12345)
        out = opee(u, 4, 2)
        assert out.entropy_bits <= 4.0 + 1e-9
        assert out.entropy_bits > 3.0

    def test_schmidt_normalization(self, rng):
        out = opee(random_hermitian(rng, 16), 4, 2)
        assert np.sum(out.schmidt_sq) == pytest.approx(1.0, abs=1e-10)

    def test_routes_agree(self, rng):
        o = random_hermitian(rng, 8)
        a = opee(o, 3, 1, method="reshape")
        b = opee(o, 3, 1, method="coeffs")
        assert abs(a.entropy_bits - b.entropy_bits) < 1e-8

    def test_cut_reversal_symmetry(self, rng):
        # cut k of O equals cut n-k of the site-reversed operator
        o = random_hermitian(rng, 8)
        rev = o.reshape(2, 2, 2, 2, 2, 2).transpose(
            2, 1, 0, 5, 4, 3).reshape(8, 8)
        a = opee(o, 3, 1)
        b = opee(rev, 3, 2)
        assert abs(a.entropy_bits - b.entropy_bits) < 1e-8

    def test_invalid_cut(self, rng):
        with pytest.raises(ValueError):
            opee(random_hermitian(rng, 4), 2, 2)


class TestPhaseInvariance:
    def test_influence_and_ipr(self, rng):
        o = random_hermitian(rng, 8)
        c1 = pauli_decompose(o, 3)
        c2 = pauli_decompose(np.exp(0.73j) * o, 3)
        assert abs(influence(c1) - influence(c2)) < 1e-12
        assert abs(ipr(c1) - ipr(c2)) < 1e-12
