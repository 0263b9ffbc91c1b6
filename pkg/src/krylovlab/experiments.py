"""Experiment orchestration: config files, parameter sweeps, CSV outputs.

Three experiment kinds are supported:

* ``rmt-sweep``      -- type-1 crossover ensemble vs level-repulsion x
* ``anni-sweep``     -- ANNI chain vs integrability breaking g
* ``scrambling-probe`` -- Pauli-basis diagnostics of the ANNI Krylov chain

Runs are pure functions of (config, seed): identical inputs give
byte-identical output trees regardless of the worker count.  All files are
written atomically (temp + rename) and carry a comment line with version,
seed and tolerances.
"""

from __future__ import annotations

import concurrent.futures
import logging
import os
import tempfile
from dataclasses import dataclass, fields, replace

import numpy as np

from . import __version__
from .hamiltonians import (AnniParams, build_anni, pauli_x, pauli_z,
                           sample_goe, sample_type1_ensemble,
                           randomize_eigenvectors)
from .krylov import k_complexity, krylov_evolve, lanczos
from .operator_space import SpectralDecomposition, evolve_operator
from .scrambling import influence, ipr, opee, pauli_decompose, size_resolved_map
from .speed_limit import (complexity_oqsl, complexity_oqsl_curve,
                          count_resonances, kernel_refined_complexity_oqsl,
                          kernel_refined_complexity_oqsl_curve)

log = logging.getLogger(__name__)

KINDS = ("rmt-sweep", "anni-sweep", "scrambling-probe")


class ConfigError(ValueError):
    """Malformed or out-of-budget experiment configuration."""


class NumericalFailureError(RuntimeError):
    """Raised when too many ensemble members abort."""


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str = "rmt-sweep"
    dimension: int = 60
    L: int = 6
    h: float = 1.0
    x_grid: tuple = (0.0, 1.0)
    g_grid: tuple = (0.01, 0.1, 0.5, 1.0)
    ensemble: int = 20
    t_max: float = 20.0
    t_points: int = 200
    tau_max: float = 5.0
    tau_points: int = 100
    tau_fixed: float = 1.0
    seed: int = 12345
    lanczos_tol: float = 1e-8
    snapshots: tuple = (6, 500, 4000)
    max_sites: int = 7
    max_dimension: int = 256

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ConfigError(f"unknown experiment kind {self.kind!r}")
        if self.L < 2 or self.L > self.max_sites:
            raise ConfigError(f"L={self.L} outside [2, {self.max_sites}] memory budget")
        if not 2 <= self.dimension <= self.max_dimension:
            raise ConfigError(f"dimension={self.dimension} outside [2, {self.max_dimension}]")
        if len(self.x_grid) == 0 or len(self.g_grid) == 0:
            raise ConfigError("parameter grids must be nonempty")
        if self.ensemble < 1:
            raise ConfigError("ensemble size must be positive")
        if self.t_points < 2 or self.tau_points < 2:
            raise ConfigError("time grids need at least 2 points")
        if self.t_max <= 0 or self.tau_max <= 0 or self.tau_fixed <= 0:
            raise ConfigError("time horizons must be positive")
        if not 0 < self.lanczos_tol <= 1e-4:
            raise ConfigError("lanczos_tol must lie in (0, 1e-4]")

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.t_points)

    @property
    def taus(self) -> np.ndarray:
        # horizons start strictly above zero (tau = 0 is a degenerate bound)
        return np.linspace(self.tau_max / self.tau_points, self.tau_max,
                           self.tau_points)


_PARSERS = {
    "kind": str,
    "dimension": int, "L": int, "ensemble": int, "t_points": int,
    "tau_points": int, "seed": int, "max_sites": int, "max_dimension": int,
    "h": float, "t_max": float, "tau_max": float, "tau_fixed": float,
    "lanczos_tol": float,
    "x_grid": lambda s: tuple(float(v) for v in s.split(",")),
    "g_grid": lambda s: tuple(float(v) for v in s.split(",")),
    "snapshots": lambda s: tuple(int(v) for v in s.split(",")),
}


def parse_config(text: str, source: str = "<string>") -> ExperimentConfig:
    """Parse a flat key=value config (one pair per line, # comments)."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key=value, got {raw!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key not in _PARSERS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _PARSERS[key](val)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key}: {exc}") from exc
    cfg = ExperimentConfig(**values)
    cfg.validate()
    return cfg


def load_config(path) -> ExperimentConfig:
    """Load and validate an experiment config file."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text, source=str(path))


def resolved_config_text(cfg: ExperimentConfig) -> str:
    lines = [f"# resolved krylovlab {__version__} config"]
    for f in fields(cfg):
        v = getattr(cfg, f.name)
        if isinstance(v, tuple):
            v = ",".join(repr(x) if isinstance(x, float) else str(x) for x in v)
        lines.append(f"{f.name}={v}")
    return "\n".join(lines) + "\n"


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv_text(cfg: ExperimentConfig, header: list[str], rows: list[list]) -> str:
    meta = (f"# krylovlab {__version__}; kind={cfg.kind}; seed={cfg.seed}; "
            f"lanczos_tol={cfg.lanczos_tol!r}; tau_fixed={cfg.tau_fixed!r}")
    out = [meta, ",".join(header)]
    for row in rows:
        out.append(",".join(_fmt(v) for v in row))
    return "\n".join(out) + "\n"


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _member_seed(base: int, *tags: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([int(base)] + [int(t) for t in tags])


def _pipeline(h: np.ndarray, o: np.ndarray, cfg: ExperimentConfig) -> dict:
    """Shared per-instance pipeline: Lanczos, C_K(t), OQSL curves, resonances."""
    res = lanczos(h, o, tol=cfg.lanczos_tol)
    amps = krylov_evolve(res, cfg.times)
    ck = k_complexity(amps)
    taus = cfg.taus
    oq = complexity_oqsl_curve(res, taus)
    kr, stat_norm = kernel_refined_complexity_oqsl_curve(res, taus)
    evals = np.linalg.eigvalsh(h)
    tol = 1e-10 * max(evals[-1] - evals[0], 1.0)
    rep = count_resonances(evals, tol)
    fixed = complexity_oqsl(res, cfg.tau_fixed)
    kr_fixed = kernel_refined_complexity_oqsl(res, cfg.tau_fixed)
    return {
        "b": res.b,
        "ck": ck,
        "dk": res.krylov_dim,
        "oqsl": oq,
        "oqsl_fixed": fixed.tau_ref,
        "kr": kr,
        "kr_fixed": kr_fixed.tau_ref,
        "stationary_norm": stat_norm,
        "speed": fixed.path_speed,
        "geodesic": fixed.geodesic,
        "count1": rep.count1,
        "count2": rep.count2,
        "result": res,
    }


def _rmt_member(cfg: ExperimentConfig, x: float, xi: int, member: int) -> dict:
    ss = _member_seed(cfg.seed, xi, member)
    s_h, s_q, s_o = (int(c.generate_state(1)[0]) for c in ss.spawn(3))
    h = sample_type1_ensemble(cfg.dimension, x, s_h)
    h = randomize_eigenvectors(h, s_q)
    o = sample_goe(cfg.dimension, s_o)
    out = _pipeline(h, o, cfg)
    out.pop("result")
    return out


def _mid_site_observable(L: int) -> np.ndarray:
    """Normalized 7 X_mid + 4 Z_mid with mid = ceil(L / 2) (1-indexed)."""
    mid = (L + 1) // 2
    o = 7.0 * pauli_x(mid, L) + 4.0 * pauli_z(mid, L)
    return o / np.linalg.norm(o)


def _nan_stats(arrays: list[np.ndarray]):
    """Column means and standard errors over variable-length member arrays."""
    width = max(len(a) for a in arrays)
    stack = np.full((len(arrays), width), np.nan)
    for i, a in enumerate(arrays):
        stack[i, :len(a)] = a
    counts = np.sum(~np.isnan(stack), axis=0)
    with np.errstate(invalid="ignore"):
        mean = np.nanmean(stack, axis=0)
        std = np.nanstd(stack, axis=0)
    se = np.where(counts > 0, std / np.sqrt(np.maximum(counts, 1)), np.nan)
    return mean, se, counts


def _scalar_stats(values: list[float]):
    v = np.asarray(values, dtype=float)
    return float(v.mean()), float(v.std() / np.sqrt(len(v)))


def run_rmt_sweep(cfg: ExperimentConfig, out_dir, workers: int = 1) -> list[str]:
    """Type-1 crossover sweep over x; emits bn/ck/oqsl CSV families."""
    cfg.validate()
    os.makedirs(out_dir, exist_ok=True)
    tasks = [(x, xi, m) for xi, x in enumerate(cfg.x_grid)
             for m in range(cfg.ensemble)]
    results: dict[tuple, dict | None] = {}
    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            futs = {pool.submit(_rmt_member, cfg, x, xi, m): (xi, m)
                    for x, xi, m in tasks}
            for fut in concurrent.futures.as_completed(futs):
                key = futs[fut]
                try:
                    results[key] = fut.result()
                except Exception:
                    log.exception("ensemble member %s aborted", key)
                    results[key] = None
    else:
        for x, xi, m in tasks:
            try:
                results[(xi, m)] = _rmt_member(cfg, x, xi, m)
            except Exception:
                log.exception("ensemble member %s aborted", (xi, m))
                results[(xi, m)] = None

    aborted = sum(1 for v in results.values() if v is None)
    if aborted > 0.2 * len(tasks):
        raise NumericalFailureError(
            f"{aborted}/{len(tasks)} ensemble members aborted")

    bn_rows, ck_rows, oqsl_rows = [], [], []
    for xi, x in enumerate(cfg.x_grid):
        members = [results[(xi, m)] for m in range(cfg.ensemble)]
        ok = [r for r in members if r is not None]
        b_mean, b_se, b_counts = _nan_stats([r["b"] for r in ok])
        for n, (bm, bs, bc) in enumerate(zip(b_mean, b_se, b_counts), start=1):
            bn_rows.append([x, n, bm, bs, int(bc)])
        ck_mean, ck_se, _ = _nan_stats([r["ck"] for r in ok])
        for t, cm, cs in zip(cfg.times, ck_mean, ck_se):
            ck_rows.append([x, t, cm, cs])
        oqsl_rows.append(_oqsl_row(x, cfg, ok, len(members)))

    paths = []
    paths.append(_write_csv(cfg, out_dir, "bn_vs_x.csv",
                            ["param", "n", "b_mean", "b_se", "members"], bn_rows))
    paths.append(_write_csv(cfg, out_dir, "ck_vs_x.csv",
                            ["param", "t", "ck_mean", "ck_se"], ck_rows))
    paths.append(_write_csv(cfg, out_dir, "oqsl_vs_x.csv", _OQSL_HEADER, oqsl_rows))
    _write_resolved(cfg, out_dir)
    return paths


_OQSL_HEADER = ["param", "tau", "geodesic", "speed", "tau_qsl", "tau_ref",
                "stationary_norm", "count1", "count2", "D_K",
                "tau_qsl_se", "tau_ref_se", "tau_qsl_max", "tau_qsl_max_se",
                "tau_ref_max", "tau_ref_max_se", "members"]


def _oqsl_row(param: float, cfg: ExperimentConfig, ok: list[dict],
              total: int) -> list:
    """Ensemble-aggregated OQSL row: tau_qsl is the identity-subtracted bound,
    tau_ref the kernel-refined one, both at the fixed horizon and as grid
    maxima."""
    qs_f, qs_fse = _scalar_stats([r["oqsl_fixed"] for r in ok])
    kr_f, kr_fse = _scalar_stats([r["kr_fixed"] for r in ok])
    qs_m, qs_mse = _scalar_stats([float(np.max(r["oqsl"])) for r in ok])
    kr_m, kr_mse = _scalar_stats([float(np.max(r["kr"])) for r in ok])
    geo, _ = _scalar_stats([r["geodesic"] for r in ok])
    spd, _ = _scalar_stats([r["speed"] for r in ok])
    stat, _ = _scalar_stats([r["stationary_norm"] for r in ok])
    c1, _ = _scalar_stats([r["count1"] for r in ok])
    c2, _ = _scalar_stats([r["count2"] for r in ok])
    dk, _ = _scalar_stats([r["dk"] for r in ok])
    return [param, cfg.tau_fixed, geo, spd, qs_f, kr_f, stat, c1, c2, dk,
            qs_fse, kr_fse, qs_m, qs_mse, kr_m, kr_mse, len(ok)]


def run_anni_sweep(cfg: ExperimentConfig, out_dir, workers: int = 1) -> list[str]:
    """ANNI sweep over g (deterministic model, one run per g)."""
    cfg.validate()
    os.makedirs(out_dir, exist_ok=True)
    bn_rows, ck_rows, oqsl_rows = [], [], []
    failures = 0
    for g in cfg.g_grid:
        try:
            h = build_anni(AnniParams(L=cfg.L, g=g, h=cfg.h))
            o = _mid_site_observable(cfg.L)
            out = _pipeline(h, o, cfg)
        except Exception:
            log.exception("anni sweep point g=%s aborted", g)
            failures += 1
            continue
        for n, bn in enumerate(out["b"], start=1):
            bn_rows.append([g, n, bn])
        for t, c in zip(cfg.times, out["ck"]):
            ck_rows.append([g, t, c])
        oqsl_rows.append([g, cfg.tau_fixed, out["geodesic"], out["speed"],
                          out["oqsl_fixed"], out["kr_fixed"],
                          out["stationary_norm"], out["count1"], out["count2"],
                          out["dk"], 0.0, 0.0, float(np.max(out["oqsl"])), 0.0,
                          float(np.max(out["kr"])), 0.0, 1])
    if failures > 0.2 * len(cfg.g_grid):
        raise NumericalFailureError(f"{failures}/{len(cfg.g_grid)} sweep points aborted")
    paths = []
    paths.append(_write_csv(cfg, out_dir, "bn_vs_g.csv", ["param", "n", "b_n"], bn_rows))
    paths.append(_write_csv(cfg, out_dir, "ck_vs_g.csv", ["param", "t", "ck"], ck_rows))
    paths.append(_write_csv(cfg, out_dir, "oqsl_vs_g.csv", _OQSL_HEADER, oqsl_rows))
    _write_resolved(cfg, out_dir)
    return paths


def run_scrambling_probe(cfg: ExperimentConfig, out_dir, workers: int = 1) -> list[str]:
    """Pauli-basis diagnostics of the ANNI Krylov chain and of O(t)."""
    cfg.validate()
    os.makedirs(out_dir, exist_ok=True)
    n_qubits = cfg.L
    cut = n_qubits // 2
    inf_rows, iprn_rows, opeen_rows = [], [], []
    iprt_rows, opeet_rows = [], []
    density_files = []
    failures = 0
    for g in cfg.g_grid:
        try:
            h = build_anni(AnniParams(L=cfg.L, g=g, h=cfg.h))
            o = _mid_site_observable(cfg.L)
            res = lanczos(h, o, tol=cfg.lanczos_tol)
            spec = SpectralDecomposition.from_hamiltonian(h)
        except Exception:
            log.exception("scrambling probe g=%s aborted", g)
            failures += 1
            continue
        for n in range(res.krylov_dim):
            k_n = res.operator(n)
            coeffs = pauli_decompose(k_n, n_qubits)
            inf_rows.append([g, n, influence(coeffs)])
            iprn_rows.append([g, n, ipr(coeffs)])
            opeen_rows.append([g, n, opee(k_n, n_qubits, cut).entropy_bits])
        for t in cfg.times:
            ot = evolve_operator(spec, o, t)
            coeffs = pauli_decompose(ot, n_qubits)
            iprt_rows.append([g, t, ipr(coeffs)])
            opeet_rows.append([g, t, opee(ot, n_qubits, cut).entropy_bits])
        for n in cfg.snapshots:
            if n >= res.krylov_dim:
                continue
            coeffs = pauli_decompose(res.operator(n), n_qubits)
            density_files.append(_write_density(cfg, out_dir, g, n, coeffs))
    if failures > 0.2 * len(cfg.g_grid):
        raise NumericalFailureError(f"{failures}/{len(cfg.g_grid)} probe points aborted")
    paths = []
    paths.append(_write_csv(cfg, out_dir, "influence_vs_n.csv",
                            ["param", "n", "influence"], inf_rows))
    paths.append(_write_csv(cfg, out_dir, "ipr_vs_n.csv",
                            ["param", "n", "ipr"], iprn_rows))
    paths.append(_write_csv(cfg, out_dir, "opee_vs_n.csv",
                            ["param", "n", "opee"], opeen_rows))
    paths.append(_write_csv(cfg, out_dir, "ipr_vs_t.csv",
                            ["param", "t", "ipr"], iprt_rows))
    paths.append(_write_csv(cfg, out_dir, "opee_vs_t.csv",
                            ["param", "t", "opee"], opeet_rows))
    paths.extend(density_files)
    _write_resolved(cfg, out_dir)
    return paths


def _write_density(cfg: ExperimentConfig, out_dir, g: float, n: int, coeffs) -> str:
    rows = size_resolved_map(coeffs)
    meta = (f"# krylovlab {__version__}; density map |c_a|; n_qubits={coeffs.n}; "
            f"row k lists labels of size k in base-4 lexicographic order "
            f"(per-site digit 2s+t, site 1 most significant); g={g!r}; "
            f"krylov_index={n}")
    lines = [meta]
    for row in rows:
        lines.append(",".join(repr(float(v)) for v in row))
    path = os.path.join(out_dir, f"density_g{g:g}_n{n}.csv")
    _atomic_write(path, "\n".join(lines) + "\n")
    return path


def _write_csv(cfg, out_dir, name, header, rows) -> str:
    path = os.path.join(out_dir, name)
    _atomic_write(path, _csv_text(cfg, header, rows))
    return path


def _write_resolved(cfg: ExperimentConfig, out_dir) -> None:
    _atomic_write(os.path.join(out_dir, "config.resolved"),
                  resolved_config_text(cfg))


_RUNNERS = {
    "rmt-sweep": run_rmt_sweep,
    "anni-sweep": run_anni_sweep,
    "scrambling-probe": run_scrambling_probe,
}


def run_experiment(cfg: ExperimentConfig, out_dir, workers: int = 1,
                   seed: int | None = None) -> list[str]:
    """Dispatch a validated config to its runner; optional seed override."""
    if seed is not None:
        cfg = replace(cfg, seed=seed)
    cfg.validate()
    return _RUNNERS[cfg.kind](cfg, out_dir, workers=workers)
