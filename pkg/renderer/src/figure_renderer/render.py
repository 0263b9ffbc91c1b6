"""Render experiment CSV outputs into line plots and heatmaps.

Each CSV file in the data directory becomes exactly one image: the sweep
curves (`bn_vs_*`, `ck_vs_*`, `influence_vs_n`, `ipr_vs_*`, `opee_vs_*`)
become one line per parameter value, the `oqsl_vs_*` tables become
error-bar plots of the speed-limit times against the sweep parameter, and
each `density_*.csv` snapshot becomes a heatmap whose rows are the Pauli
size classes. The renderer never writes into the data directory.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

log = logging.getLogger("figure_renderer")

# family stem -> (sweep label, x axis label, y axis label)
_SERIES_FAMILIES = {
    "bn_vs_x": ("x", "n", r"$b_n$"),
    "bn_vs_g": ("g", "n", r"$b_n$"),
    "ck_vs_x": ("x", "t", r"$C_K(t)$"),
    "ck_vs_g": ("g", "t", r"$C_K(t)$"),
    "influence_vs_n": ("g", "n", r"$W(K_n)$"),
    "ipr_vs_n": ("g", "n", r"IPR$(K_n)$"),
    "opee_vs_n": ("g", "n", r"OpEE$(K_n)$ [bits]"),
    "ipr_vs_t": ("g", "t", r"IPR$(O(t))$"),
    "opee_vs_t": ("g", "t", r"OpEE$(O(t))$ [bits]"),
}

_OQSL_FAMILIES = {
    "oqsl_vs_x": "x",
    "oqsl_vs_g": "g",
}


@dataclass(frozen=True)
class FigureSpec:
    """One CSV input mapped to one output image."""

    source: Path
    kind: str  # "multiline" | "oqsl" | "heatmap"
    param_label: str
    xlabel: str
    ylabel: str
    output: Path


def discover_figures(data_dir: Path, out_dir: Path) -> list[FigureSpec]:
    """Map every recognized CSV in data_dir to a FigureSpec."""
    specs = []
    for path in sorted(data_dir.glob("*.csv")):
        stem = path.stem
        out = out_dir / f"{stem}.png"
        if stem in _SERIES_FAMILIES:
            label, xlab, ylab = _SERIES_FAMILIES[stem]
            specs.append(FigureSpec(path, "multiline", label, xlab, ylab, out))
        elif stem in _OQSL_FAMILIES:
            label = _OQSL_FAMILIES[stem]
            specs.append(FigureSpec(path, "oqsl", label, label,
                                    "bound on evolution time", out))
        elif stem.startswith("density_"):
            specs.append(FigureSpec(path, "heatmap", "", "string index",
                                    "Pauli size", out))
        else:
            log.warning("skipping unrecognized CSV %s", path.name)
    return specs


def _read_rows(path: Path) -> list[list[str]]:
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh)
                if row and not row[0].startswith("#")]
    if not rows:
        raise ValueError("no data rows")
    return rows


def _render_multiline(spec: FigureSpec, ax) -> None:
    rows = _read_rows(spec.source)
    data = np.array(rows[1:], dtype=float)
    if data.shape[1] < 3:
        raise ValueError("expected at least 3 columns")
    for value in np.unique(data[:, 0]):
        block = data[data[:, 0] == value]
        ax.plot(block[:, 1], block[:, 2],
                label=f"{spec.param_label} = {value:g}")
    ax.legend(fontsize=8)


def _render_oqsl(spec: FigureSpec, ax) -> None:
    rows = _read_rows(spec.source)
    header = rows[0]
    data = np.array(rows[1:], dtype=float)
    col = {name: data[:, i] for i, name in enumerate(header)}
    order = np.argsort(col["param"])
    x = col["param"][order]
    for name, se_name in (("tau_qsl", "tau_qsl_se"), ("tau_ref", "tau_ref_se")):
        err = col[se_name][order] if se_name in col else None
        ax.errorbar(x, col[name][order], yerr=err, marker="o",
                    capsize=3, label=name)
    ax.legend(fontsize=8)


def _render_heatmap(spec: FigureSpec, ax) -> None:
    rows = _read_rows(spec.source)
    width = max(len(row) for row in rows)
    grid = np.full((len(rows), width), np.nan)
    for i, row in enumerate(rows):
        grid[i, :len(row)] = [float(x) for x in row]
    image = ax.imshow(grid, aspect="auto", origin="lower",
                      interpolation="nearest", cmap="viridis")
    ax.figure.colorbar(image, ax=ax, label=r"$|c_a|$")


_RENDERERS = {
    "multiline": _render_multiline,
    "oqsl": _render_oqsl,
    "heatmap": _render_heatmap,
}


def render_figure(spec: FigureSpec) -> Path:
    """Render a single FigureSpec; returns the written image path."""
    fig, ax = plt.subplots(figsize=(5.0, 3.4), dpi=150)
    try:
        _RENDERERS[spec.kind](spec, ax)
        ax.set_xlabel(spec.xlabel)
        ax.set_ylabel(spec.ylabel)
        ax.set_title(spec.source.stem)
        fig.tight_layout()
        fig.savefig(spec.output)
    finally:
        plt.close(fig)
    return spec.output


def render_all(data_dir: Path, out_dir: Path) -> int:
    """Render every discovered CSV; exit code semantics of the CLI."""
    specs = discover_figures(data_dir, out_dir)
    if not specs:
        log.warning("no experiment CSVs found in %s", data_dir)
        return 1
    out_dir.mkdir(parents=True, exist_ok=True)
    failures = 0
    for spec in specs:
        try:
            written = render_figure(spec)
            log.info("wrote %s", written)
        except Exception as exc:
            failures += 1
            log.error("failed to render %s: %s", spec.source.name, exc)
    return 1 if failures == len(specs) else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render_figures",
        description="render krylovlab experiment CSVs into figures")
    parser.add_argument("data_dir", help="directory with experiment CSVs")
    parser.add_argument("--out", default="figures",
                        help="output directory (default: figures)")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    data_dir = Path(args.data_dir)
    if not data_dir.is_dir():
        log.error("data directory %s does not exist", data_dir)
        return 1
    return render_all(data_dir, Path(args.out))


if __name__ == "__main__":
    sys.exit(main())
