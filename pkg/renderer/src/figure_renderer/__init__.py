"""Batch rendering of krylovlab experiment CSVs into publication figures."""

from .render import FigureSpec, discover_figures, main, render_figure

__all__ = ["FigureSpec", "discover_figures", "main", "render_figure"]

__version__ = "0.1.0"
