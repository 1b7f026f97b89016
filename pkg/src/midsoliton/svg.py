"""Minimal SVG 1.1 figure writer for planar polygons and curves."""

from __future__ import annotations

import datetime

import numpy as np

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#e377c2", "#17becf")

CURVE_SEGMENTS = 512


def _num(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class Figure:
    def __init__(self, width: float = 600.0):
        self.width = width
        self.items = []  # (kind, points, style)

    def polyline(self, points, color=None, closed=False, width=1.0, markers=False):
        pts = np.asarray(points, dtype=float)[:, :2]
        if closed:
            pts = np.vstack([pts, pts[:1]])
        self.items.append(("polyline", pts, color, width, markers))

    def curve(self, points, color=None, width=1.5):
        self.items.append(("path", np.asarray(points, dtype=float)[:, :2], color, width, False))

    def bounds(self):
        allpts = np.vstack([it[1] for it in self.items])
        lo, hi = allpts.min(axis=0), allpts.max(axis=0)
        span = np.maximum(hi - lo, 1e-12)
        margin = 0.05 * span
        return lo - margin, hi + margin

    def render(self, reproducible: bool = True) -> str:
        if not self.items:
            raise ValueError("nothing to draw")
        lo, hi = self.bounds()
        span = hi - lo
        height = self.width * span[1] / span[0]
        unit = span.max() / 400.0

        def xy(p):
            # flip y so the plot reads like a mathematical figure
            return f"{_num(p[0])},{_num(lo[1] + hi[1] - p[1])}"

        out = ['<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
               '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" '
               '"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">']
        if not reproducible:
            stamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
            out.append(f"<!-- generated {stamp} -->")
        out.append(
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_num(self.width)}" height="{_num(height)}" '
            f'viewBox="{_num(lo[0])} {_num(lo[1])} {_num(span[0])} {_num(span[1])}">')
        for i, (kind, pts, color, width, markers) in enumerate(self.items):
            color = color or PALETTE[i % len(PALETTE)]
            stroke = (f'fill="none" stroke="{color}" '
                      f'stroke-width="{_num(width * unit)}"')
            if kind == "path":
                d = "M " + " L ".join(xy(p) for p in pts)
                out.append(f'<path d="{d}" {stroke}/>')
            else:
                out.append(f'<polyline points="{" ".join(xy(p) for p in pts)}" {stroke}/>')
            if markers:
                r = _num(2.5 * unit)
                for p in pts:
                    cx, cy = xy(p).split(",")
                    out.append(f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="{color}"/>')
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def save(self, path, reproducible: bool = True):
        with open(path, "w") as f:
            f.write(self.render(reproducible))
