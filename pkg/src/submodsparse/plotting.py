"""Figures for benchmark sweeps: medians with interquartile bands versus
epsilon, rendered to files.

matplotlib is imported lazily with the Agg backend so that nothing else
in the package touches a plotting backend.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .fileio import load_bench


def _pyplot():
    import matplotlib
    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt
    return plt


def _bands(eps: np.ndarray, values: np.ndarray):
    levels = np.unique(eps)
    med = np.array([np.median(values[eps == e]) for e in levels])
    q25 = np.array([np.percentile(values[eps == e], 25) for e in levels])
    q75 = np.array([np.percentile(values[eps == e], 75) for e in levels])
    return levels, med, q25, q75


def _band_figure(plt, eps, values, ylabel, title, out_path):
    levels, med, q25, q75 = _bands(eps, values)
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.fill_between(levels, q25, q75, alpha=0.25, linewidth=0)
    ax.plot(levels, med, marker="o")
    ax.set_xlabel("epsilon")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)


def render_bench_figures(csv_path, out_dir) -> list[Path]:
    """Two PNGs from a benchmark CSV: solution quality relative to the
    full greedy run, and sparsifier size relative to the component count,
    both as median plus 25th-75th percentile band over trials."""
    data = load_bench(csv_path)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(csv_path).stem
    plt = _pyplot()
    quality_path = out_dir / f"{stem}_quality.png"
    size_path = out_dir / f"{stem}_size.png"
    _band_figure(plt, data["epsilon"], data["relative_quality"],
                 "relative greedy quality", "Solution quality vs epsilon",
                 quality_path)
    _band_figure(plt, data["epsilon"], data["relative_size"],
                 "relative sparsifier size", "Sparsifier size vs epsilon",
                 size_path)
    return [quality_path, size_path]
