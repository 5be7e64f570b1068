"""Rendering of ``(x1, x2)`` projections next to the plot-data CSV files.

matplotlib is optional; :func:`have_matplotlib` tells callers whether
rendering is possible.
"""

from __future__ import annotations

import importlib.util
import os
from typing import Sequence

import numpy as np

__all__ = ["have_matplotlib", "render_projections"]


def have_matplotlib() -> bool:
    return importlib.util.find_spec("matplotlib") is not None


def render_projections(path: str | os.PathLike, curves: Sequence[tuple[str, np.ndarray]], title: str = "") -> None:
    """Draw each ``(label, (n, 2) array)`` curve in the ``(x1, x2)`` plane and save to ``path``."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5.0, 4.2))
    for label, xy in curves:
        xy = np.asarray(xy)
        ax.plot(xy[:, 0], xy[:, 1], lw=1.4, label=label)
    ax.plot([0], [0], "k.", ms=5)
    ax.set_xlabel(r"$x_1$")
    ax.set_ylabel(r"$x_2$")
    ax.axhline(0, color="0.8", lw=0.6, zorder=0)
    ax.axvline(0, color="0.8", lw=0.6, zorder=0)
    if title:
        ax.set_title(title, fontsize=10)
    ax.legend(fontsize=7, frameon=False)
    fig.tight_layout()
    try:
        fig.savefig(path, dpi=150)
    finally:
        plt.close(fig)
