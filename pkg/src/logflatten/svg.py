"""Deterministic SVG rendering of rank-2 fans: rays as labeled segments
clipped to the unit disk, maximal cones shaded, interior walls highlighted."""

from __future__ import annotations

import math

from .errors import UnsupportedRank
from .polyhedra import Fan

_PALETTE = ("#cfe8ff", "#ffe3c2", "#d8f5d3", "#f5d3ef", "#fff3b0", "#d3f0f5")


def _unit(r) -> tuple[float, float]:
    n = math.hypot(r[0], r[1])
    return (r[0] / n, r[1] / n)


def _fmt(x: float) -> str:
    return f"{x:.4f}"


def render_fan_svg(fan: Fan) -> str:
    if fan.rank != 2:
        raise UnsupportedRank(f"SVG rendering needs rank 2, got {fan.rank}")
    size = 360
    half = size / 2
    scale = half * 0.82

    def pt(v: tuple[float, float]) -> str:
        return f"{_fmt(half + scale * v[0])},{_fmt(half - scale * v[1])}"

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<line x1="0" y1="{_fmt(half)}" x2="{size}" y2="{_fmt(half)}" '
        'stroke="#dddddd" stroke-width="1"/>',
        f'<line x1="{_fmt(half)}" y1="0" x2="{_fmt(half)}" y2="{size}" '
        'stroke="#dddddd" stroke-width="1"/>',
        f'<circle cx="{_fmt(half)}" cy="{_fmt(half)}" r="{_fmt(scale)}" '
        'fill="none" stroke="#eeeeee" stroke-width="1"/>',
    ]
    maximal = [c for c in fan.maximal_cones() if len(c) == 2]
    for k, idxs in enumerate(maximal):
        a = _unit(fan.rays[idxs[0]])
        b = _unit(fan.rays[idxs[1]])
        color = _PALETTE[k % len(_PALETTE)]
        lines.append(
            f'<path d="M {pt((0.0, 0.0))} L {pt(a)} A {_fmt(scale)} {_fmt(scale)} 0 0 '
            f'{_svg_sweep(a, b)} {pt(b)} Z" fill="{color}" fill-opacity="0.8" stroke="none"/>'
        )
    ray_use = {i: 0 for i in range(len(fan.rays))}
    for idxs in maximal:
        for i in idxs:
            ray_use[i] += 1
    for i, r in enumerate(fan.rays):
        u = _unit(r)
        wall = ray_use.get(i, 0) >= 2
        stroke = "#c0392b" if wall else "#2c3e50"
        width = "2.5" if wall else "1.5"
        lines.append(
            f'<line x1="{_fmt(half)}" y1="{_fmt(half)}" '
            f'x2="{_fmt(half + scale * u[0])}" y2="{_fmt(half - scale * u[1])}" '
            f'stroke="{stroke}" stroke-width="{width}"/>'
        )
        lx = half + (scale + 16) * u[0]
        ly = half - (scale + 16) * u[1]
        label = "(" + ",".join(str(x) for x in r) + ")"
        lines.append(
            f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" font-size="11" '
            f'text-anchor="middle" fill="#333333">{label}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _svg_sweep(a: tuple[float, float], b: tuple[float, float]) -> str:
    # sweep flag 0 draws counterclockwise in the flipped-y SVG frame
    cross = a[0] * b[1] - a[1] * b[0]
    return "0" if cross > 0 else "1"
