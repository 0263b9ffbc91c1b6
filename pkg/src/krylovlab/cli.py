"""Command-line interface: `krylovlab run <config>` and `krylovlab selftest`.

Exit codes: 0 success, 1 configuration error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from . import __version__
from .experiments import ConfigError, NumericalFailureError, load_config, run_experiment


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="krylovlab",
        description="Krylov-space operator dynamics experiments")
    parser.add_argument("--version", action="version",
                        version=f"krylovlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run an experiment config")
    run_p.add_argument("config", help="path to a key=value config file")
    run_p.add_argument("--out", default="krylovlab-output",
                       help="output directory (default: krylovlab-output)")
    run_p.add_argument("--workers", type=int, default=1,
                       help="parallel workers for ensemble sweeps")
    run_p.add_argument("--seed", type=int, default=None,
                       help="override the config seed")

    sub.add_parser("selftest", help="run the closed-form oracle suite")

    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")

    if args.command == "run":
        return _cmd_run(args)
    return _cmd_selftest()


def _cmd_run(args) -> int:
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    try:
        paths = run_experiment(cfg, args.out, workers=max(args.workers, 1),
                               seed=args.seed)
    except NumericalFailureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    for p in paths:
        print(p)
    return 0


def _cmd_selftest() -> int:
    """Closed-form single-qubit and combinatorial oracle checks."""
    from .hamiltonians import pauli_x, pauli_z
    from .krylov import k_complexity, krylov_evolve, lanczos
    from .operator_space import SpectralDecomposition, autocorrelation
    from .scrambling import influence, ipr, opee, pauli_decompose
    from .speed_limit import complexity_oqsl, count_resonances

    failures = 0

    def check(name: str, ok: bool) -> None:
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'}: {name}")
        failures += 0 if ok else 1

    z, x = pauli_z(1, 1), pauli_x(1, 1)
    res = lanczos(z, x)
    check("H=Z, O=X: b = [2], D_K = 2",
          res.krylov_dim == 2 and len(res.b) == 1 and abs(res.b[0] - 2) < 1e-10)

    ts = np.linspace(0.0, 3.0, 50)
    ck = k_complexity(krylov_evolve(res, ts))
    check("H=Z, O=X: C_K(t) = sin^2(2t)",
          np.max(np.abs(ck - np.sin(2 * ts) ** 2)) < 1e-9)

    spec = SpectralDecomposition.from_hamiltonian(z)
    g = np.array([autocorrelation(spec, x, t) for t in ts])
    check("H=Z, O=X: G(t) = 2 cos(2t)",
          np.max(np.abs(g - 2 * np.cos(2 * ts))) < 1e-10)

    taus = np.linspace(0.05, np.pi / 8, 12)
    devs = [abs(complexity_oqsl(res, t).tau_ref - t) for t in taus]
    check("H=Z, O=X: complexity-operator tau_ref = tau on (0, pi/8]",
          max(devs) < 1e-8)

    rep = count_resonances(np.array([0.0, 1.0, 2.0]), 1e-12)
    check("spectrum {0,1,2}: (count1, count2) = (0, 1)",
          (rep.count1, rep.count2) == (0, 1))

    swap = np.eye(4)[[0, 2, 1, 3]]
    check("OpEE(SWAP, 1|1) = 2 bits",
          abs(opee(swap, 2, 1).entropy_bits - 2.0) < 1e-9)
    xz = np.kron(x, z)
    check("OpEE(X x Z, 1|1) = 0 bits", opee(xz, 2, 1).entropy_bits < 1e-12)
    cx1 = pauli_decompose(pauli_x(2, 3), 3)
    check("influence(single-site X) = 1", influence(cx1) == 1.0)
    check("IPR(single Pauli) = 1", abs(ipr(cx1) - 1.0) < 1e-12)

    print(f"{'OK' if failures == 0 else 'FAILED'}: "
          f"{9 - failures}/9 selftest checks passed")
    return 0 if failures == 0 else 2


if __name__ == "__main__":
    sys.exit(main())
