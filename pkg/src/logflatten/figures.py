"""Matplotlib figure rendering for rank-2 fans; used by the CLI report path
to drop PNG files next to the primary output."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Wedge

from .errors import UnsupportedRank
from .polyhedra import Fan

_COLORS = ("#9ecae1", "#fdbf6f", "#a1d99b", "#f4a6d7", "#fee391", "#a6dbe8")


def render_fan_png(fan: Fan, path: str, title: str | None = None) -> None:
    if fan.rank != 2:
        raise UnsupportedRank(f"figure rendering needs rank 2, got {fan.rank}")
    fig, ax = plt.subplots(figsize=(4.0, 4.0))
    ax.set_aspect("equal")
    ax.axhline(0, color="0.85", lw=0.8, zorder=0)
    ax.axvline(0, color="0.85", lw=0.8, zorder=0)

    def angle(r) -> float:
        return math.degrees(math.atan2(r[1], r[0]))

    maximal = [c for c in fan.maximal_cones() if len(c) == 2]
    for k, idxs in enumerate(maximal):
        a = angle(fan.rays[idxs[0]])
        b = angle(fan.rays[idxs[1]])
        lo, hi = sorted((a, b))
        if hi - lo > 180:
            lo, hi = hi, lo + 360
        ax.add_patch(
            Wedge((0, 0), 1.0, lo, hi, color=_COLORS[k % len(_COLORS)], alpha=0.6, zorder=1)
        )
    ray_use = {i: 0 for i in range(len(fan.rays))}
    for idxs in maximal:
        for i in idxs:
            ray_use[i] += 1
    for i, r in enumerate(fan.rays):
        n = math.hypot(r[0], r[1])
        u = (r[0] / n, r[1] / n)
        wall = ray_use.get(i, 0) >= 2
        ax.plot([0, u[0]], [0, u[1]], color="#c0392b" if wall else "#2c3e50",
                lw=2.2 if wall else 1.4, zorder=2)
        ax.annotate(
            f"({r[0]},{r[1]})",
            xy=(1.12 * u[0], 1.12 * u[1]),
            ha="center",
            va="center",
            fontsize=8,
        )
    ax.set_xlim(-1.3, 1.3)
    ax.set_ylim(-1.3, 1.3)
    ax.set_xticks([])
    ax.set_yticks([])
    for side in ax.spines.values():
        side.set_visible(False)
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
