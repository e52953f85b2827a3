"""SVG drawings of hemisphere projections over the fundamental rectangle."""

from __future__ import annotations

import math

from .qfield import FieldElem
from .swan import SwanResult, full_faces


def _f(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def render(result: SwanResult, singular: list[FieldElem], scale: float = 400.0, margin: float = 0.25) -> str:
    """Circles for the faces (and their translates near the rectangle), crosses at singular points."""
    d = result.disc.d
    sq = math.sqrt(-d)
    half_h = sq / 4
    x0, x1 = -0.5 - margin, 0.5 + margin
    y0, y1 = -half_h - margin, half_h + margin
    width = (x1 - x0) * scale
    height = (y1 - y0) * scale

    def px(x):
        return (x - x0) * scale

    def py(y):
        return (y1 - y) * scale

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_f(width)}" height="{_f(height)}" '
        f'viewBox="0 0 {_f(width)} {_f(height)}">',
        '<g fill="none" stroke="black" stroke-width="0.5">',
    ]
    circles = []
    for h in full_faces(result):
        c = h.center
        r = 1 / math.sqrt(h.norm)
        # translates that can reach the drawing window
        for k in range(-2, 3):
            for j in range(-2, 3):
                cx = float(c.u) + k + (j * (d % 2)) / 2
                cy = (float(c.v) + j / 2) * sq
                if x0 - r < cx < x1 + r and y0 - r < cy < y1 + r:
                    circles.append((round(cx, 9), round(cy, 9), r))
    for cx, cy, r in sorted(set(circles)):
        lines.append(f'<circle cx="{_f(px(cx))}" cy="{_f(py(cy))}" r="{_f(r * scale)}"/>')
    lines.append("</g>")
    lines.append(
        f'<rect x="{_f(px(-0.5))}" y="{_f(py(half_h))}" width="{_f(scale)}" height="{_f(2 * half_h * scale)}" '
        'fill="none" stroke="gray" stroke-dasharray="6,4"/>'
    )
    arm = 0.02 * scale
    lines.append('<g stroke="red" stroke-width="1">')
    for z in singular:
        x, y = px(float(z.u)), py(float(z.v) * sq)
        lines.append(f'<line x1="{_f(x - arm)}" y1="{_f(y - arm)}" x2="{_f(x + arm)}" y2="{_f(y + arm)}"/>')
        lines.append(f'<line x1="{_f(x - arm)}" y1="{_f(y + arm)}" x2="{_f(x + arm)}" y2="{_f(y - arm)}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
