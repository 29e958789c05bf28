"""Figures for distance profiles. Rendering uses the Agg backend only."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Any, Mapping

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _as_float(value: Any) -> float:
    return float(value)


def plot_profile(profile: Mapping[tuple, Any], path: str | Path, title: str = "") -> Path:
    """Write a figure of d(T^n x, T^n y) over the window.

    d = 1 gives a line plot against n, d = 2 a heatmap over |n_1|, |n_2|
    (the cone orthant is folded onto the positive one). Higher dimensions
    fall back to a line plot against the max-norm shell.
    """
    if not profile:
        raise ValueError("empty profile")
    path = Path(path)
    points = list(profile)
    d = len(points[0])
    fig, ax = plt.subplots(figsize=(5, 4))
    if d == 2:
        size = max(max(abs(c) for c in n) for n in points)
        grid = np.full((size, size), math.nan)
        for n, v in profile.items():
            grid[abs(n[1]) - 1, abs(n[0]) - 1] = _as_float(v)
        im = ax.imshow(grid, origin="lower", extent=(0.5, size + 0.5, 0.5, size + 0.5),
                       vmin=0.0, vmax=max(1.0, float(np.nanmax(grid))), cmap="viridis")
        fig.colorbar(im, ax=ax, label="distance")
        ax.set_xlabel("|n_1|")
        ax.set_ylabel("|n_2|")
    else:
        if d == 1:
            xs = [n[0] for n in points]
            ax.set_xlabel("n")
        else:
            xs = [max(abs(c) for c in n) for n in points]
            ax.set_xlabel("max |n_i|")
        ys = [_as_float(profile[n]) for n in points]
        order = np.argsort(xs, kind="stable")
        ax.plot(np.asarray(xs)[order], np.asarray(ys)[order], marker=".", linewidth=0.8)
        ax.set_ylabel("distance")
        ax.set_ylim(bottom=0.0)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path
