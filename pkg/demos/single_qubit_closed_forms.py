"""Single-qubit worked example where every quantity has a closed form.

For H = Z and O = X the Krylov chain has exactly two elements, the single
Lanczos coefficient is b_1 = 2, the Krylov complexity is sin^2(2t), and the
operator speed limits saturate: the evolution moves along a geodesic of the
operator sphere, so tau_QSL = tau for tau <= pi/4.
"""

import numpy as np

from krylovlab.hamiltonians import pauli_x, pauli_z
from krylovlab.krylov import k_complexity, krylov_evolve, lanczos
from krylovlab.operator_space import SpectralDecomposition, autocorrelation
from krylovlab.speed_limit import complexity_oqsl, oqsl


def main():
    h, o = pauli_z(1, 1), pauli_x(1, 1)
    result = lanczos(h, o)
    print(f"Krylov dimension D_K = {result.krylov_dim}")
    print(f"Lanczos coefficients b = {result.b}")

    times = np.linspace(0.0, np.pi / 2, 9)
    ck = k_complexity(krylov_evolve(result, times))
    print("\n   t        C_K(t)    sin^2(2t)")
    for t, c in zip(times, ck):
        print(f"  {t:5.3f}   {c:8.6f}   {np.sin(2 * t) ** 2:8.6f}")

    spec = SpectralDecomposition.from_hamiltonian(h)
    print("\nautocorrelation G(0.4) =",
          f"{autocorrelation(spec, o, 0.4).real:.6f}",
          f"(2 cos 0.8 = {2 * np.cos(0.8):.6f})")

    for tau in (0.2, np.pi / 8, np.pi / 4):
        basic = oqsl(spec, o, tau).tau_qsl
        refined = complexity_oqsl(result, tau).tau_ref
        print(f"tau = {tau:.4f}: tau_QSL = {basic:.6f}, "
              f"complexity-operator tau_ref = {refined:.6f}")


if __name__ == "__main__":
    main()
