"""Static SVG rendering: orthographic projection of bodies and lunes.

The sphere is projected onto the plane orthogonal to a view axis inside a
fixed 1000x1000 viewport.  Boundary pieces on the far hemisphere are drawn
dashed.  Output is deterministic: fixed sampling, fixed decimal formatting.
"""

from __future__ import annotations

import numpy as np

from .bodies import ConvexBody
from .sphere import GeometryError, orthonormal_frame, unit
from .width import WidthResult

VIEW_SIZE = 1000
_RADIUS = 470.0
_CENTER = VIEW_SIZE / 2.0
_SAMPLES_PER_EDGE = 96


def _view_frame(axis):
    axis = unit(axis)
    e1, e2 = orthonormal_frame(axis)
    return axis, e1, e2


def _project(points, axis, e1, e2):
    xs = _CENTER + _RADIUS * (points @ e1)
    ys = _CENTER - _RADIUS * (points @ e2)
    front = points @ axis >= 0.0
    return xs, ys, front


def _polyline_paths(points, axis, e1, e2, style_front, style_back):
    """Split a sampled curve into front/back runs and emit SVG paths."""
    xs, ys, front = _project(points, axis, e1, e2)
    paths = []
    i = 0
    n = len(points)
    while i < n:
        j = i
        while j + 1 < n and front[j + 1] == front[i]:
            j += 1
        seg = range(i, j + 1)
        if len(seg) >= 2:
            d = "M " + " L ".join(f"{xs[k]:.3f} {ys[k]:.3f}" for k in seg)
            style = style_front if front[i] else style_back
            paths.append(f'<path d="{d}" {style} />')
        i = j + 1
    return paths


def _edge_samples(body: ConvexBody, i: int) -> np.ndarray:
    f = body.frame(i)
    ts = np.linspace(0.0, f.span, _SAMPLES_PER_EDGE)
    return np.array([f.point_at(t) for t in ts])


def _semicircle_samples(pole, center) -> np.ndarray:
    t = np.cross(unit(pole), unit(center))
    angles = np.linspace(-np.pi / 2, np.pi / 2, 2 * _SAMPLES_PER_EDGE)
    return np.cos(angles)[:, None] * center + np.sin(angles)[:, None] * t


def render_svg(body: ConvexBody, view_axis=(0.0, 0.0, 1.0),
               lunes: list[WidthResult] | None = None) -> str:
    """Render a body (and optionally its minimal lunes) to an SVG string."""
    axis, e1, e2 = _view_frame(view_axis)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{VIEW_SIZE}" height="{VIEW_SIZE}" '
        f'viewBox="0 0 {VIEW_SIZE} {VIEW_SIZE}">',
        f'<rect width="{VIEW_SIZE}" height="{VIEW_SIZE}" fill="white" />',
        f'<circle cx="{_CENTER:.1f}" cy="{_CENTER:.1f}" r="{_RADIUS:.1f}" '
        'fill="none" stroke="#bbbbbb" stroke-width="1" />',
    ]
    body_front = 'fill="none" stroke="black" stroke-width="2.5"'
    body_back = 'fill="none" stroke="black" stroke-width="1.2" stroke-dasharray="6 5"'
    for i in range(body.n_edges):
        parts.extend(_polyline_paths(_edge_samples(body, i), axis, e1, e2,
                                     body_front, body_back))
    if lunes:
        lune_front = 'fill="none" stroke="#d0342c" stroke-width="1.5"'
        lune_back = 'fill="none" stroke="#d0342c" stroke-width="0.8" stroke-dasharray="4 4"'
        from .sphere import boundary_semicircle
        for wr in lunes:
            for which in ("first", "second"):
                sc = boundary_semicircle(wr.lune, which)
                pts = _semicircle_samples(sc.pole, sc.center)
                parts.extend(_polyline_paths(pts, axis, e1, e2, lune_front, lune_back))
                cx, cy, front = _project(sc.center[None, :], axis, e1, e2)
                fill = "#d0342c" if front[0] else "#e8a09b"
                parts.append(f'<circle cx="{cx[0]:.3f}" cy="{cy[0]:.3f}" r="4" fill="{fill}" />')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
