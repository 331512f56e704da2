"""Constructors for the named bodies and the reducedness necessary condition.

All constructors default to the canonical frame at the north pole and accept
an optional axis / tangent frame to place the body elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bodies import (
    CIRCULAR,
    GEODESIC,
    ConvexBody,
    Edge,
    body_from_cycle,
    contains,
    convex_hull,
    extreme_points,
    polygon_body,
)
from .sphere import GeometryError, dist, orthonormal_frame, slerp, unit
from .width import _support_at_point, polar_dual, thickness


def _resolve_frame(axis, frame):
    axis = unit(axis)
    if frame is None:
        e1, e2 = orthonormal_frame(axis)
    else:
        e1, e2 = unit(frame[0]), unit(frame[1])
        if abs(np.dot(e1, axis)) > 1e-9 or abs(np.dot(e2, axis)) > 1e-9 or abs(np.dot(e1, e2)) > 1e-9:
            raise GeometryError("frame must be orthonormal and tangent at the center")
    return axis, e1, e2


def disk(radius: float, center=(0.0, 0.0, 1.0), frame=None) -> ConvexBody:
    """Spherical disk of the given radius.

    Radii at or above pi/2 are rejected: such a disk contains antipodal
    boundary points and is not a convex body.
    """
    if not (1e-9 < radius < np.pi / 2 - 1e-9):
        raise GeometryError("disk radius must lie in (0, pi/2)")
    c, e1, e2 = _resolve_frame(center, frame)

    def rim(t):
        return np.cos(radius) * c + np.sin(radius) * (np.cos(t) * e1 + np.sin(t) * e2)

    thirds = [rim(2.0 * np.pi * k / 3.0) for k in range(3)]
    edges = [Edge(CIRCULAR, thirds[(k + 1) % 3], center=c, radius=radius) for k in range(3)]
    return body_from_cycle(edges)


def quarter_disk(radius: float, center=(0.0, 0.0, 1.0), frame=None) -> ConvexBody:
    """Quarter of a disk: two orthogonal radius edges plus the boundary arc."""
    if not (1e-9 < radius <= np.pi / 2):
        raise GeometryError("quarter-disk radius must lie in (0, pi/2]")
    c, e1, e2 = _resolve_frame(center, frame)
    a1 = np.cos(radius) * c + np.sin(radius) * e1
    a2 = np.cos(radius) * c + np.sin(radius) * e2
    edges = [
        Edge(GEODESIC, a1),
        Edge(CIRCULAR, a2, center=c, radius=radius),
        Edge(GEODESIC, c),
    ]
    return body_from_cycle(edges)


def _regular_polygon(n: int, circumradius: float, axis, e1, e2) -> ConvexBody:
    ts = 2.0 * np.pi * np.arange(n) / n
    verts = (np.cos(circumradius) * axis[None, :]
             + np.sin(circumradius) * (np.cos(ts)[:, None] * e1 + np.sin(ts)[:, None] * e2))
    return polygon_body(verts, witness=axis)


def _regular_gon_thickness_closed_form(n: int, r: float) -> float:
    # circumradius + inradius: the vertex-to-opposite-edge-midpoint height
    return r + np.arctan(np.tan(r) * np.cos(np.pi / n))


def regular_odd_gon(n: int, thickness_target: float, axis=(0.0, 0.0, 1.0), frame=None) -> ConvexBody:
    """Regular spherical n-gon (n odd) of prescribed thickness.

    Solved by bisection on the circumradius.  The fast path bisects the
    closed-form height (circumradius plus inradius); the result is always
    re-measured with the thickness operation and, should the two disagree,
    the solver falls back to bisection on the measured thickness after
    asserting it is monotone across the bracket.
    """
    if n < 3 or n % 2 == 0:
        raise GeometryError("n must be an odd integer >= 3")
    if not (1e-6 < thickness_target <= np.pi / 2 + 1e-12):
        raise GeometryError("target thickness must lie in (0, pi/2]")
    axis, e1, e2 = _resolve_frame(axis, frame)

    lo, hi = 1e-9, np.pi / 2 - 1e-9
    if _regular_gon_thickness_closed_form(n, hi) < thickness_target:
        raise GeometryError("bisection bracket does not contain the target")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _regular_gon_thickness_closed_form(n, mid) < thickness_target:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15:
            break
    r = 0.5 * (lo + hi)

    body = _regular_polygon(n, r, axis, e1, e2)
    measured = thickness(body).value
    if abs(measured - thickness_target) <= 1e-9:
        return body

    # slow path: the closed form disagreed; bisect on the measured thickness
    lo, hi = max(1e-9, r - 0.2), min(np.pi / 2 - 1e-9, r + 0.2)
    f_lo = thickness(_regular_polygon(n, lo, axis, e1, e2)).value
    f_hi = thickness(_regular_polygon(n, hi, axis, e1, e2)).value
    if not (f_lo < f_hi and f_lo <= thickness_target <= f_hi):
        raise GeometryError("measured thickness is not monotone across the bracket")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if thickness(_regular_polygon(n, mid, axis, e1, e2)).value < thickness_target:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-12:
            break
    body = _regular_polygon(n, 0.5 * (lo + hi), axis, e1, e2)
    if abs(thickness(body).value - thickness_target) > 1e-9:
        raise GeometryError("thickness solver failed to converge")
    return body


def _reuleaux_narrow(n: int, width: float, axis, e1, e2) -> ConvexBody:
    """Classic Reuleaux construction; sound only for width <= pi/2.

    Vertices form a regular n-gon with long diagonals of length `width`, and
    each boundary arc is the circle of radius `width` about the opposite
    vertex (a geodesic when width = pi/2, since the vertices then lie on the
    polar circle of the opposite one).
    """
    theta = np.pi * (n - 1) / n  # azimuth gap of a long diagonal
    cos2r = (np.cos(width) - np.cos(theta)) / (1.0 - np.cos(theta))
    r = float(np.arccos(np.sqrt(cos2r)))
    ts = 2.0 * np.pi * np.arange(n) / n
    verts = (np.cos(r) * axis[None, :]
             + np.sin(r) * (np.cos(ts)[:, None] * e1 + np.sin(ts)[:, None] * e2))
    half = (n + 1) // 2
    if abs(width - np.pi / 2) <= 1e-12:
        edges = [Edge(GEODESIC, verts[(k + 1) % n]) for k in range(n)]
    else:
        edges = [Edge(CIRCULAR, verts[(k + 1) % n], center=verts[(k + half) % n], radius=width)
                 for k in range(n)]
    return body_from_cycle(edges)


def reuleaux_odd_gon(n: int, width: float, axis=(0.0, 0.0, 1.0), frame=None) -> ConvexBody:
    """Constant-width body with the symmetry of a regular odd-gon.

    For width below pi/2 this is the intersection of the disks of radius
    `width` centered at the vertices of a regular n-gon with long diagonals
    of that length.  A disk of radius above pi/2 curves away from its center,
    so for wide bodies that intersection is not convex; the constant-width
    body of width w > pi/2 is instead the polar dual of the narrow
    construction of width pi - w (duality negates both thickness and
    diameter against pi), a rounded regular n-gon.
    """
    if n < 3 or n % 2 == 0:
        raise GeometryError("n must be an odd integer >= 3")
    if not (1e-6 < width < np.pi - 1e-6):
        raise GeometryError("width must lie in (0, pi)")
    axis, e1, e2 = _resolve_frame(axis, frame)
    if width <= np.pi / 2:
        return _reuleaux_narrow(n, width, axis, e1, e2)
    narrow = _reuleaux_narrow(n, np.pi - width, axis, e1, e2)
    return polar_dual(narrow).body


def isosceles_triangle(arm: float, base: float) -> ConvexBody:
    """Isosceles triangle with long arms: arm in (pi/2, pi), base in (0, pi/2)."""
    if not (np.pi / 2 < arm < np.pi):
        raise GeometryError("arm must lie in (pi/2, pi)")
    if not (0.0 < base < np.pi / 2):
        raise GeometryError("base must lie in (0, pi/2)")
    cos2d = (np.cos(base) - np.cos(arm) ** 2) / np.sin(arm) ** 2
    if not (-1.0 + 1e-12 < cos2d < 1.0 - 1e-12):
        raise GeometryError("no spherical triangle with these side lengths")
    delta = 0.5 * np.arccos(cos2d)
    apex = np.array([0.0, 0.0, 1.0])
    u1 = np.array([np.sin(arm) * np.cos(delta), np.sin(arm) * np.sin(delta), np.cos(arm)])
    u2 = np.array([np.sin(arm) * np.cos(delta), -np.sin(arm) * np.sin(delta), np.cos(arm)])
    return convex_hull([apex, u1, u2])


@dataclass(frozen=True)
class BodySpec:
    """Serializable recipe for a named body."""

    kind: str
    params: dict = field(default_factory=dict)

    def build(self) -> ConvexBody:
        p = dict(self.params)
        placement = {}
        for key in ("center", "axis"):
            if key in p:
                placement["center" if self.kind in ("disk", "quarter_disk") else "axis"] = p.pop(key)
        if "frame" in p:
            placement["frame"] = p.pop("frame")
        if self.kind == "disk":
            return disk(p["radius"], **placement)
        if self.kind == "quarter_disk":
            return quarter_disk(p["radius"], **placement)
        if self.kind == "regular_odd_gon":
            return regular_odd_gon(int(p["count"]), p["thickness"], **placement)
        if self.kind == "reuleaux_odd_gon":
            return reuleaux_odd_gon(int(p["count"]), p["width"], **placement)
        if self.kind == "isosceles_triangle":
            return isosceles_triangle(p["arm"], p["base"])
        raise GeometryError(f"unknown body kind {self.kind!r}")


@dataclass(frozen=True)
class ReducednessEntry:
    point: np.ndarray
    source: str
    best_thickness: float
    ok: bool


@dataclass(frozen=True)
class ReducednessReport:
    passed: bool
    delta: float
    tol: float
    entries: tuple[ReducednessEntry, ...]


def _alpha_exit(dual_body, k, e, hi=np.pi - 1e-9, iters: int = 60) -> float:
    """Largest a with cos(a) k + sin(a) e inside the dual body."""
    if contains(dual_body, np.cos(hi) * k + np.sin(hi) * e, tol=1e-9):
        return hi
    lo = 0.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if contains(dual_body, np.cos(mid) * k + np.sin(mid) * e, tol=1e-9):
            lo = mid
        else:
            hi = mid
    return lo


def _best_lune_through(dual_body, e, fan, fan_samples: int) -> float:
    """Minimal thickness over lunes containing the body with e a semicircle center.

    `fan` is the arc of supporting-hemisphere centers at e (a pair of unit
    vectors orthogonal to e, possibly identical).  For a hemisphere K with
    center k on the fan, the opposite hemisphere centers k* that keep the
    body covered and make e the center of the bounding semicircle K/K* are
    cos(a) k + sin(a) e with a up to the exit from the dual body, giving the
    lune thickness pi - a.
    """
    u0, u1 = fan
    gap = dist(u0, u1)

    def alpha_of(s: float) -> float:
        k = u0 if gap < 1e-12 else slerp(u0, u1, s)
        return _alpha_exit(dual_body, k, e)

    if gap < 1e-12:
        return np.pi - alpha_of(0.0)

    ss = np.linspace(0.0, 1.0, fan_samples)
    vals = [alpha_of(s) for s in ss]
    j = int(np.argmax(vals))
    lo = ss[max(0, j - 1)]
    hi = ss[min(len(ss) - 1, j + 1)]
    # golden-section refinement of the fan parameter
    phi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c1 = b - phi * (b - a)
    c2 = a + phi * (b - a)
    f1, f2 = alpha_of(c1), alpha_of(c2)
    for _ in range(40):
        if f1 >= f2:
            b, c2, f2 = c2, c1, f1
            c1 = b - phi * (b - a)
            f1 = alpha_of(c1)
        else:
            a, c1, f1 = c1, c2, f2
            c2 = a + phi * (b - a)
            f2 = alpha_of(c2)
    best = max(max(vals), f1, f2)
    return np.pi - best


def reducedness_check(body: ConvexBody, tol: float = 1e-7, arc_samples: int = 32,
                      fan_samples: int = 33) -> ReducednessReport:
    """Necessary condition for reducedness at every extreme point.

    For each isolated extreme point (and a sample of each extreme arc) the
    check searches for a lune of thickness at most thickness(body) + tol that
    contains the body and has the point as a bounding-semicircle center.  A
    failing point refutes reducedness; an overall pass only supports it.
    """
    dual = polar_dual(body)
    delta = thickness(body, dual=dual).value
    turns = body.turns()
    n = body.n_edges
    entries = []

    for i in range(n):
        if turns[i] <= 1e-9:
            continue
        e = body.vertices[i]
        prev = body.frame((i - 1) % n)
        nxt = body.frame(i)
        u_in = _support_at_point(prev, e) if prev.kind == CIRCULAR else prev.pole
        u_out = _support_at_point(nxt, e) if nxt.kind == CIRCULAR else nxt.pole
        best = _best_lune_through(dual.body, e, (u_in, u_out), fan_samples)
        entries.append(ReducednessEntry(e, f"vertex {i}", best, best <= delta + tol))

    for i in range(n):
        f = body.frame(i)
        if f.kind != CIRCULAR:
            continue
        for t in np.linspace(0.0, f.span, arc_samples):
            e = f.point_at(t)
            k = _support_at_point(f, e)
            best = _best_lune_through(dual.body, e, (k, k), fan_samples)
            entries.append(ReducednessEntry(e, f"arc {i}", best, best <= delta + tol))

    return ReducednessReport(all(en.ok for en in entries), delta, tol, tuple(entries))
