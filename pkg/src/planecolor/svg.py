"""Deterministic SVG rendering of a periodic coloring around its fundamental cell."""
from __future__ import annotations

import math

from .geometry import ConvexPolygon, Disk, Shape
from .tiling import UNCOLORED, PeriodicTiling

PALETTE = ("#e6194b", "#3cb44b", "#4363d8", "#ffe119", "#f58231", "#911eb4", "#42d4f4", "#f032e6")
UNCOLORED_FILL = "#ffffff"
SCALE = 100.0  # pixels per unit length


def fill_for(color: int) -> str:
    return UNCOLORED_FILL if color == UNCOLORED else PALETTE[color % len(PALETTE)]


def _f(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def shape_path(s: Shape) -> str:
    """SVG path data in plane coordinates (y up; the caller flips)."""
    if isinstance(s, ConvexPolygon):
        pts = [f"{_f(p.x)} {_f(p.y)}" for p in s.vertices]
        return "M " + " L ".join(pts) + " Z"
    if isinstance(s, Disk):
        cx, cy, r = s.center.x, s.center.y, s.radius
        return (f"M {_f(cx + r)} {_f(cy)} A {_f(r)} {_f(r)} 0 1 1 {_f(cx - r)} {_f(cy)} "
                f"A {_f(r)} {_f(r)} 0 1 1 {_f(cx + r)} {_f(cy)} Z")
    ox, oy, r = s.disk.center.x, s.disk.center.y, s.disk.radius
    parts = []
    for k, piece in enumerate(s.boundary_pieces()):
        if piece[0] == "seg":
            (x0, y0), (x1, y1) = piece[1], piece[2]
            if k == 0:
                parts.append(f"M {_f(x0)} {_f(y0)}")
            parts.append(f"L {_f(x1)} {_f(y1)}")
        else:
            a, b = piece[1], piece[2]
            if k == 0:
                parts.append(f"M {_f(ox + r * math.cos(a))} {_f(oy + r * math.sin(a))}")
            large = 1 if b - a > math.pi else 0
            parts.append(f"A {_f(r)} {_f(r)} 0 {large} 1 {_f(ox + r * math.cos(b))} {_f(oy + r * math.sin(b))}")
    return " ".join(parts) + " Z"


def render_svg(t: PeriodicTiling) -> str:
    """Fundamental cell plus its 3x3 block of translates, painted in rank order."""
    lat = t.lattice
    corners = [lat.vector(m, n) for m in (-1, 2) for n in (-1, 2)]
    xmin = min(p.x for p in corners) - 0.5
    xmax = max(p.x for p in corners) + 0.5
    ymin = min(p.y for p in corners) - 0.5
    ymax = max(p.y for p in corners) + 1.0
    width, height = (xmax - xmin) * SCALE, (ymax - ymin) * SCALE
    items = []
    for idx in range(len(t.shapes)):
        for m in (-1, 0, 1):
            for n in (-1, 0, 1):
                items.append((t.rank(idx), m, n, idx))
    items.sort()
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(width)}" height="{_f(height)}" '
        f'viewBox="{_f(xmin * SCALE)} {_f(-ymax * SCALE)} {_f(width)} {_f(height)}">',
        f'<rect x="{_f(xmin * SCALE)}" y="{_f(-ymax * SCALE)}" width="{_f(width)}" height="{_f(height)}" '
        f'fill="{fill_for(t.background)}"/>',
        f'<g transform="scale({_f(SCALE)},{_f(-SCALE)})" stroke="#000000" stroke-width="0.005">',
    ]
    for _, m, n, idx in items:
        cs = t.shapes[idx]
        w = lat.vector(m, n)
        out.append(f'<path class="shape" data-index="{idx}" data-translate="{m},{n}" '
                   f'fill="{fill_for(cs.color)}" d="{shape_path(cs.shape.translated(w.x, w.y))}"/>')
    cell = " ".join(f"{_f(p.x)},{_f(p.y)}" for p in lat.corners())
    out.append(f'<polygon class="cell" fill="none" stroke-dasharray="0.04 0.02" stroke-width="0.01" points="{cell}"/>')
    bx, by = xmin + 0.25, ymax - 0.5
    out.append(f'<line class="scale-bar" stroke-width="0.02" x1="{_f(bx)}" y1="{_f(by)}" x2="{_f(bx + 1)}" y2="{_f(by)}"/>')
    out.append("</g>")
    out.append(f'<text x="{_f((bx + 0.5) * SCALE)}" y="{_f(-(by + 0.1) * SCALE)}" font-size="20" '
               f'text-anchor="middle">1</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
