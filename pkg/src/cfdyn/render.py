"""SVG rendering of tessellations and geodesics in the upper half plane.

Type 1 edges are drawn solid, Type 2 dashed, and removed Farey edges in
light gray.  The default window matches the scale of the tessellation
figures: Re in [-4, 4], Im in (0, 3].  Output is deterministic: fixed
float formatting, edges emitted in sorted order.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .boundary import INFINITY, _Infinity, bp_to_float
from .cutting import (
    FAREY,
    REMOVED,
    TYPE1,
    TYPE2,
    even_edges,
    even_sequence_geometric,
    farey_edges,
    xi_eta_points,
)

_STYLE = """
  .t1 { stroke: #202020; stroke-width: 1.5; fill: none; }
  .t2 { stroke: #555555; stroke-width: 1.2; fill: none; stroke-dasharray: 6 4; }
  .removed { stroke: #cccccc; stroke-width: 1.0; fill: none; }
  .farey { stroke: #202020; stroke-width: 1.2; fill: none; }
  .geodesic { stroke: #d62728; stroke-width: 2.0; fill: none; }
  .marker { fill: #1f77b4; }
  .label { font: 11px sans-serif; fill: #1f77b4; }
"""

_CSS_CLASS = {TYPE1: "t1", TYPE2: "t2", REMOVED: "removed", FAREY: "farey"}


class _Canvas:
    def __init__(self, xmin: float, xmax: float, ymax: float, scale: float = 90.0):
        self.xmin, self.xmax, self.ymax = xmin, xmax, ymax
        self.scale = scale
        self.width = (xmax - xmin) * scale
        self.height = ymax * scale

    def to_svg(self, x: float, y: float):
        return (x - self.xmin) * self.scale, (self.ymax - y) * self.scale


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _edge_svg(edge, canvas: _Canvas) -> Optional[str]:
    css = _CSS_CLASS[edge.kind]
    if isinstance(edge.v, _Infinity):
        x = bp_to_float(edge.u)
        if not (canvas.xmin <= x <= canvas.xmax):
            return None
        x1, y1 = canvas.to_svg(x, 0.0)
        x2, y2 = canvas.to_svg(x, canvas.ymax)
        return (f'<line class="{css}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
                f'x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')
    u, v = bp_to_float(edge.u), bp_to_float(edge.v)
    if v < canvas.xmin or u > canvas.xmax:
        return None
    r = (v - u) / 2
    x1, y0 = canvas.to_svg(u, 0.0)
    x2, _ = canvas.to_svg(v, 0.0)
    rr = r * canvas.scale
    return (f'<path class="{css}" d="M {_fmt(x1)} {_fmt(y0)} '
            f'A {_fmt(rr)} {_fmt(rr)} 0 0 1 {_fmt(x2)} {_fmt(y0)}"/>')


def _geodesic_svg(fwd, bwd, canvas: _Canvas, labels: bool = True) -> list:
    out = []
    a, b = sorted((bp_to_float(fwd), bp_to_float(bwd)))
    r = (b - a) / 2
    x1, y0 = canvas.to_svg(a, 0.0)
    x2, _ = canvas.to_svg(b, 0.0)
    rr = r * canvas.scale
    out.append(f'<path class="geodesic" d="M {_fmt(x1)} {_fmt(y0)} '
               f'A {_fmt(rr)} {_fmt(rr)} 0 0 1 {_fmt(x2)} {_fmt(y0)}"/>')
    seq = even_sequence_geometric(fwd, bwd, window=64)
    xi, eta = xi_eta_points(fwd, bwd, "even_farey")
    for name, (px, py2) in (("xi", xi), ("eta", eta)):
        sx, sy = canvas.to_svg(float(px), float(py2) ** 0.5)
        out.append(f'<circle class="marker" cx="{_fmt(sx)}" cy="{_fmt(sy)}" r="3"/>')
        out.append(f'<text class="label" x="{_fmt(sx + 5)}" '
                   f'y="{_fmt(sy - 5)}">{name}</text>')
    if labels:
        # place each segment label midway between consecutive Type 1 edges
        t1_points = []
        cx, cy = (a + b) / 2, 0.0
        for edge in seq.edges:
            if edge.kind != TYPE1:
                continue
            if isinstance(edge.v, _Infinity):
                px = bp_to_float(edge.u)
            else:
                u, v = bp_to_float(edge.u), bp_to_float(edge.v)
                c2, r2 = (u + v) / 2, (v - u) / 2
                px = (r * r - r2 * r2 - cx * cx + c2 * c2) / (2 * (c2 - cx))
            py2 = r * r - (px - cx) ** 2
            if py2 > 0:
                t1_points.append((px, py2 ** 0.5))
        for sym, (p1, p2) in zip(seq.symbols, zip(t1_points, t1_points[1:])):
            mx, my = (p1[0] + p2[0]) / 2, (p1[1] + p2[1]) / 2
            py2 = r * r - (mx - cx) ** 2
            if py2 > 0:
                my = py2 ** 0.5
            sx, sy = canvas.to_svg(mx, my)
            out.append(f'<text class="label" x="{_fmt(sx)}" '
                       f'y="{_fmt(sy - 4)}">{sym}</text>')
    return out


def render_svg(tessellation: str, max_denominator: int,
               geodesic=None, xmin: int = -4, xmax: int = 4,
               ymax: float = 3.0) -> str:
    """Build the SVG document for a tessellation, optionally with a geodesic."""
    canvas = _Canvas(float(xmin), float(xmax), float(ymax))
    if tessellation == "farey":
        edges = farey_edges(max_denominator, xmin, xmax)
    elif tessellation == "even":
        edges = even_edges(max_denominator, xmin, xmax)
    else:
        raise ValueError(f"unknown tessellation {tessellation!r}")
    edges = sorted(set(edges), key=lambda e: (str(e.kind), str(e.u), str(e.v)))
    body = []
    for edge in edges:
        piece = _edge_svg(edge, canvas)
        if piece:
            body.append(piece)
    if geodesic is not None:
        body.extend(_geodesic_svg(geodesic[0], geodesic[1], canvas))
    header = (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
              f'viewBox="0 0 {_fmt(canvas.width)} {_fmt(canvas.height)}" '
              f'width="{_fmt(canvas.width)}" height="{_fmt(canvas.height)}">')
    return "\n".join([header, f"<style>{_STYLE}</style>"] + body + ["</svg>", ""])
