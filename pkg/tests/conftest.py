"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the library's own fast paths:
evolution goes through dense matrix exponentials, Pauli coefficients
through explicit traces, and spin chains through raw Kronecker
products, so agreement is evidence rather than tautology.
"""

import numpy as np
import pytest
import scipy.linalg

X = np.array([[0.0, 1.0], [1.0, 0.0]])
Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
Z = np.array([[1.0, 0.0], [0.0, -1.0]])
I2 = np.eye(2)


def kron_chain(ops):
    out = np.array([[1.0]], dtype=complex)
    for op in ops:
        out = np.kron(out, op)
    return out


def expm_evolve(h, o, t):
    """Dense matrix-exponential oracle for e^{-iHt} O e^{+iHt}."""
    u = scipy.linalg.expm(-1j * h * t)
    return u @ o @ u.conj().T


def pauli_string(digits):
    """Explicit P_a from per-site digits 0:I, 1:Z, 2:X, 3:XZ."""
    site = {0: I2, 1: Z, 2: X, 3: X @ Z}
    return kron_chain(site[d] for d in digits)


def pauli_trace_oracle(o, n):
    """All 4^n coefficients by direct traces, unit-normalizing O first."""
    o = np.asarray(o, dtype=complex)
    o = o / (np.linalg.norm(o) / np.sqrt(2 ** n))
    coeffs = np.empty(4 ** n, dtype=complex)
    for a in range(4 ** n):
        digits = [(a >> (2 * (n - 1 - s))) & 3 for s in range(n)]
        p = pauli_string(digits)
        coeffs[a] = np.trace(p.conj().T @ o) / 2 ** n
    return coeffs


def random_hermitian(rng, d):
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (a + a.conj().T) / 2


def random_real_symmetric(rng, d):
    a = rng.standard_normal((d, d))
    return (a + a.T) / 2


@pytest.fixture
def rng():
    return np.random.default_rng(20260826)
