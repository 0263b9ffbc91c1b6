"""Pauli-basis scrambling diagnostics along a Krylov chain.

Each Krylov element K_n of a five-site chain is expanded over the 4^L Pauli
strings. The average string weight W(K_n) saturates after a short transient,
the inverse participation ratio counts how many strings support K_n, and the
operator entanglement entropy across the half cut saturates near its maximum
for the chaotic coupling.
"""

import numpy as np

from krylovlab.hamiltonians import AnniParams, build_anni, pauli_x
from krylovlab.krylov import lanczos
from krylovlab.scrambling import influence, ipr, opee, pauli_decompose

L = 5
CUT = L // 2


def main():
    h = build_anni(AnniParams(L=L, h=1.0, g=0.5))
    o = pauli_x((L + 1) // 2, L)
    result = lanczos(h, o)
    print(f"ANNI chain, L = {L}, g = 0.5, D_K = {result.krylov_dim}\n")
    print("   n    W(K_n)     IPR      OpEE [bits]")
    for n in (0, 1, 2, 4, 8, 16, 32, 64, 128):
        if n >= result.krylov_dim:
            break
        k_n = result.operator(n)
        coeffs = pauli_decompose(k_n, L)
        ent = opee(k_n, L, CUT).entropy_bits
        print(f"  {n:3d}   {influence(coeffs):6.3f}   {ipr(coeffs):7.2f}"
              f"   {ent:7.4f}")
    print(f"\nOpEE ceiling at this cut: {2 * min(CUT, L - CUT)} bits")


if __name__ == "__main__":
    main()
