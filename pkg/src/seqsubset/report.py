"""Figures written next to the CLI's delimited output."""

from __future__ import annotations

from collections import defaultdict

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.bbox": "tight",
    "savefig.dpi": 150,
}


def new_figure(width=5.0, aspect=0.62):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(width, width * aspect))
    return fig, ax


def save(fig, path):
    with plt.rc_context(STYLE):
        fig.savefig(path)
    plt.close(fig)
    return path


def plot_bounds(reports, path):
    """Applicable bound values against M, one line per (bound, q, L, d)."""
    series = defaultdict(list)
    for r in reports:
        if r.applicable and r.value is not None:
            series[(r.name, r.q, r.L, r.d)].append((r.M, r.value))
    fig, ax = new_figure()
    for (name, q, L, d), pts in sorted(series.items()):
        pts.sort()
        xs, ys = zip(*pts)
        ax.plot(xs, ys, marker="o", ms=3, label=f"{name} q={q} L={L} d={d}")
    ax.set_xlabel("codeword size M")
    ax.set_ylabel("cap on code size")
    if any(v > 0 for pts in series.values() for _, v in pts):
        ax.set_yscale("log")
    if series:
        ax.legend(frameon=False, ncol=1 if len(series) < 8 else 2)
    else:
        ax.text(0.5, 0.5, "no applicable bound", ha="center", va="center", transform=ax.transAxes)
    return save(fig, path)


def plot_simulation(summary, path):
    """Observed input/output distance per trial against the pattern bound and radius."""
    fig, ax = new_figure()
    t = [r.trial for r in summary.records]
    d = [r.distance for r in summary.records]
    ok = [r.decoded == r.sent and not r.ambiguous for r in summary.records]
    ax.scatter([x for x, g in zip(t, ok) if g], [y for y, g in zip(d, ok) if g],
               s=8, color="tab:blue", label="recovered")
    ax.scatter([x for x, g in zip(t, ok) if not g], [y for y, g in zip(d, ok) if not g],
               s=10, color="tab:red", marker="x", label="not recovered")
    ax.axhline(summary.pattern_bound, color="0.3", ls="--", lw=1, label="pattern bound")
    if summary.radius is not None:
        ax.axhline(summary.radius, color="tab:green", ls=":", lw=1, label="correction radius")
    ax.set_xlabel("trial")
    ax.set_ylabel("distance(sent, received)")
    ax.set_title(f"pattern {tuple(summary.pattern)}: {summary.recovered}/{summary.trials} recovered")
    ax.legend(frameon=False)
    return save(fig, path)


def plot_distance_matrix(n, distances, path):
    """Heatmap of pairwise codeword distances (``distances`` keyed by ``(i, j)``)."""
    mat = np.zeros((n, n), dtype=float)
    for (i, j), v in distances.items():
        mat[i, j] = mat[j, i] = v
    fig, ax = new_figure(width=4.5, aspect=0.9)
    im = ax.imshow(mat, cmap="viridis")
    fig.colorbar(im, ax=ax, label="sequence-subset distance")
    ax.set_xlabel("codeword")
    ax.set_ylabel("codeword")
    if n <= 20:
        ticks = list(range(n))
        ax.set_xticks(ticks, [f"X{i + 1}" for i in ticks], rotation=90)
        ax.set_yticks(ticks, [f"X{i + 1}" for i in ticks])
    return save(fig, path)
