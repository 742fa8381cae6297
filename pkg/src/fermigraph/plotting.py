"""Figures written next to the CLI's delimited output.

Uses the object-oriented matplotlib API with the Agg canvas, so nothing here
touches pyplot state or needs a display.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .spectral import SpectrumMultiset

# Fixed metadata keeps PNG output byte-identical across runs.
_PNG_METADATA = {"Software": None}


def _new_figure(width: float = 5.0, height: float = 3.6) -> tuple[Figure, object]:
    fig = Figure(figsize=(width, height), dpi=120)
    FigureCanvasAgg(fig)
    ax = fig.add_subplot(1, 1, 1)
    return fig, ax


def _save(fig: Figure, path: str | Path) -> Path:
    path = Path(path)
    fig.tight_layout()
    kwargs = {"metadata": _PNG_METADATA} if path.suffix.lower() == ".png" else {}
    fig.savefig(path, **kwargs)
    return path


def plot_gap_curves(curves: dict[str, tuple[Sequence[int], Sequence[float]]], path: str | Path,
                    title: str | None = None) -> Path:
    """Log-log plot of the spectral gap against particle number, one curve per trap."""
    fig, ax = _new_figure()
    markers = ["s", "o", "D", "^", "v"]
    for i, (name, (ns, gaps)) in enumerate(curves.items()):
        ax.loglog(ns, gaps, marker=markers[i % len(markers)], linestyle="-", markersize=4, label=name)
    ax.set_xlabel(r"$N$")
    ax.set_ylabel(r"$K_2$")
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    if len(curves) > 1 or any(curves):
        ax.legend(frameon=False)
    return _save(fig, path)


def plot_spectrum(spec: SpectrumMultiset, path: str | Path, title: str | None = None) -> Path:
    """Eigenvalues as horizontal ticks, one column per symmetry class."""
    fig, ax = _new_figure(width=max(4.0, 0.9 * (len(set(spec.labels or ())) + 2)))
    if spec.labels is None:
        ax.hlines(spec.values, 0.6, 1.4, linewidth=1.2)
        ax.set_xticks([1])
        ax.set_xticklabels(["all"])
    else:
        order: list = []
        for lab in spec.labels:
            if lab not in order:
                order.append(lab)
        for x, lab in enumerate(order, start=1):
            vals = np.array([v for v, l in zip(spec.values, spec.labels) if l == lab])
            ax.hlines(vals, x - 0.35, x + 0.35, linewidth=1.2, color=f"C{(x - 1) % 10}")
        ax.set_xticks(range(1, len(order) + 1))
        ax.set_xticklabels([str(lab) for lab in order], rotation=45, ha="right", fontsize=8)
        ax.set_xlim(0.4, len(order) + 0.6)
    ax.set_ylabel(r"$K$")
    if title:
        ax.set_title(title)
    return _save(fig, path)
