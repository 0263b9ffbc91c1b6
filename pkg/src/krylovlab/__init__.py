"""krylovlab: Krylov-space operator dynamics and scrambling diagnostics.

Library layout:

* :mod:`krylovlab.hamiltonians`   -- GOE, type-1 crossover, ANNI chain
* :mod:`krylovlab.operator_space` -- HS inner product, Liouvillian, evolution
* :mod:`krylovlab.krylov`         -- operator Lanczos, Krylov complexity
* :mod:`krylovlab.speed_limit`    -- operator quantum speed limits, resonances
* :mod:`krylovlab.scrambling`     -- Pauli decomposition, influence, IPR, OpEE
* :mod:`krylovlab.experiments`    -- config-driven sweeps and CSV outputs
"""

__version__ = "0.1.0"

from .hamiltonians import (AnniParams, SingularParametrizationError,
                           Type1Params, build_anni, build_type1,
                           mean_gap_ratio, randomize_eigenvectors, sample_goe,
                           sample_type1_ensemble)
from .krylov import (KrylovAmplitudes, LanczosResult, complexity_matrix,
                     k_complexity, krylov_amplitudes_direct, krylov_evolve,
                     lanczos)
from .operator_space import (SpectralDecomposition, autocorrelation,
                             evolve_operator, hs_inner, hs_norm,
                             liouvillian_apply)
from .scrambling import (OpeeResult, PauliCoefficients, influence, ipr, opee,
                         pauli_decompose, pauli_size, size_resolved_map)
from .speed_limit import (OqslResult, ResonanceReport, StationaryOperatorError,
                          average_speed, complexity_oqsl,
                          count_resonances, geodesic_distance,
                          kernel_refined_complexity_oqsl, oqsl, refined_oqsl)

__all__ = [name for name in dir() if not name.startswith("_")]
