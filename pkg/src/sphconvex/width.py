"""Supporting hemispheres, width, and thickness via polar duality.

The polar dual D(C) = {u : <x, u> >= 0 for all x in C} is itself a convex
body whose boundary points are exactly the centers of hemispheres supporting
C.  Width determined by a supporting hemisphere K and the body's thickness
reduce to distance computations on the dual:

    width_K(C) = pi - max{ dist(K.center, u) : u in bd D(C) }
    thickness(C) = pi - diameter(D(C))

The reduction is validated in the test suite against `brute_thickness`, an
independent sampling oracle that never builds the dual body.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bodies import (
    CIRCULAR,
    GEODESIC,
    ConvexBody,
    Edge,
    TURN_TOL,
    body_from_cycle,
    diameter,
    farthest_boundary_point,
)
from .sphere import GeometryError, Hemisphere, Lune, dist, unit

# Tolerance band on the touching condition of a supporting hemisphere.
SUPPORT_TOL = 1e-10


@dataclass(frozen=True)
class SupportSet:
    """Polar dual body with the primal/dual boundary feature correspondence.

    feature_map entries are ((primal_kind, primal_index), (dual_kind, dual_index))
    with kinds "vertex" and "edge"; a primal circular edge of radius pi/2 maps
    to a dual vertex.
    """

    body: ConvexBody
    feature_map: tuple[tuple[tuple[str, int], tuple[str, int]], ...]


@dataclass(frozen=True)
class WidthResult:
    hemisphere: Hemisphere
    cohemisphere: Hemisphere
    thickness: float
    lune: Lune


@dataclass(frozen=True)
class ThicknessResult:
    value: float
    minimal_lunes: tuple[WidthResult, ...]


def is_supporting(body: ConvexBody, k: Hemisphere, tol: float = SUPPORT_TOL) -> bool:
    """True iff the body lies in K and touches its boundary great circle."""
    m, _ = body.support_min(k.center)
    return -tol <= m <= tol


def _support_at_point(frame, x) -> np.ndarray:
    """Center of the supporting hemisphere along the interior of one edge."""
    if frame.kind == GEODESIC:
        return frame.pole
    return (frame.center - np.cos(frame.radius) * x) / np.sin(frame.radius)


def polar_dual(body: ConvexBody, validate: bool = True) -> SupportSet:
    """Feature-mapped polar dual of a body contained in an open hemisphere.

    Walking the primal boundary counterclockwise emits the dual boundary in
    the same orientation: a geodesic edge contributes its pole as a dual
    vertex, a corner of exterior angle t contributes a dual geodesic edge of
    length t, and a circular edge of radius rho about c contributes a dual
    circular edge about c of radius pi/2 - rho, degenerating to the single
    dual vertex c when rho = pi/2.
    """
    n = body.n_edges
    turns = body.turns()

    u_start = []
    u_end = []
    for i in range(n):
        if body.edges[i].kind == GEODESIC:
            pole = body._chord_normals[i]
            u_start.append(pole)
            u_end.append(pole)
        else:
            f = body.frame(i)
            u_start.append(_support_at_point(f, f.start))
            u_end.append(_support_at_point(f, f.end))

    dual_edges: list[Edge] = []
    feature_map: list[tuple[tuple[str, int], tuple[str, int]]] = []
    for i in range(n):
        prev = (i - 1) % n
        if turns[i] > TURN_TOL:
            dual_edges.append(Edge(GEODESIC, u_start[i]))
            feature_map.append((("vertex", i), ("edge", len(dual_edges) - 1)))
        elif dist(u_end[prev], u_start[i]) > 1e-8:
            raise GeometryError("tangential vertex with inconsistent supports")
        e = body.edges[i]
        if e.kind == GEODESIC:
            feature_map.append((("edge", i), ("vertex", len(dual_edges) % max(1, n))))
        else:
            f = body.frame(i)
            rho = f.radius
            if abs(rho - np.pi / 2) <= 1e-9:
                # support center degenerates to the single point c: a dual vertex
                feature_map.append((("edge", i), ("vertex", len(dual_edges) % max(1, n))))
                continue
            dual_edges.append(Edge(CIRCULAR, u_end[i], center=f.center, radius=np.pi / 2 - rho))
            feature_map.append((("edge", i), ("edge", len(dual_edges) - 1)))

    if len(dual_edges) < 2:
        raise GeometryError("dual boundary degenerates; body may lack interior")
    if validate:
        dual = body_from_cycle(dual_edges)
    else:
        # measurement fast path: skip re-validation; any interior point of the
        # primal body is a witness direction for the dual
        verts = np.array([dual_edges[i - 1].end for i in range(len(dual_edges))])
        dual = ConvexBody(verts, tuple(dual_edges), unit(body.vertices.sum(axis=0)))

    # fix up vertex-map indices now that the dual cycle is assembled
    fixed = []
    for (pk, pi_), (dk, di) in feature_map:
        if dk == "vertex":
            fixed.append(((pk, pi_), (dk, di % dual.n_edges)))
        else:
            fixed.append(((pk, pi_), (dk, di)))
    return SupportSet(dual, tuple(fixed))


def width_at(body: ConvexBody, k: Hemisphere, dual: SupportSet | None = None) -> WidthResult:
    """Width of the body determined by a supporting hemisphere K.

    The opposite hemisphere K* maximizes the distance of its center from
    K.center over the dual boundary, which minimizes the thickness of the
    lune K intersect K*.
    """
    if not is_supporting(body, k):
        raise GeometryError("hemisphere does not support the body")
    if dual is None:
        dual = polar_dual(body, validate=False)
    u_star, d = farthest_boundary_point(dual.body, k.center)
    k_star = Hemisphere(u_star)
    return WidthResult(k, k_star, np.pi - d, Lune(k, k_star))


def thickness(body: ConvexBody, dual: SupportSet | None = None) -> ThicknessResult:
    """Thickness (minimal lune width) via the dual-diameter identity.

    All dual diameter-realizing pairs within 1e-9 are reported as minimal
    lunes; which of several ties comes first is arbitrary but deterministic.
    """
    if dual is None:
        dual = polar_dual(body, validate=False)
    dres = diameter(dual.body)
    value = np.pi - dres.value
    lunes = []
    for p, q in dres.pairs:
        kp, kq = Hemisphere(p), Hemisphere(q)
        lunes.append(WidthResult(kp, kq, np.pi - dist(p, q), Lune(kp, kq)))
    return ThicknessResult(value, tuple(lunes))


def is_constant_width(body: ConvexBody, tol: float = 1e-7, samples: int = 1000) -> bool:
    """True iff the width is the same for a dense sample of supporting hemispheres."""
    dual = polar_dual(body, validate=False)
    delta = thickness(body, dual=dual).value
    for u in dual.body.boundary_sample(samples):
        _, d = farthest_boundary_point(dual.body, u)
        if (np.pi - d) > delta + tol:
            return False
    return True


def _support_samples(body: ConvexBody, n_samples: int, rng) -> np.ndarray:
    """Centers of supporting hemispheres sampled from the primal features.

    Edge normals, corner normal-fan endpoints, and circular-edge support arcs
    are covered deterministically; the remaining budget is spent on random
    points of corner fans and support arcs.  Never touches the dual body.
    """
    n = body.n_edges
    turns = body.turns()
    fixed: list[np.ndarray] = []
    fans = []  # (start_dir, axis vertex, angle)
    arcs = []  # frames of circular edges with nondegenerate support arcs

    for i in range(n):
        f = body.frame(i)
        if f.kind == GEODESIC:
            fixed.append(f.pole)
        else:
            fixed.append(_support_at_point(f, f.start))
            fixed.append(_support_at_point(f, f.end))
            if abs(f.radius - np.pi / 2) > 1e-9:
                arcs.append(f)
        if turns[i] > TURN_TOL:
            prev = body.frame((i - 1) % n)
            v = body.vertices[i]
            u0 = _support_at_point(prev, v) if prev.kind == CIRCULAR else prev.pole
            fixed.append(u0)
            fans.append((u0, v, float(turns[i])))

    features = [("fan", fan) for fan in fans] + [("arc", f) for f in arcs]
    weights = np.array([fan[2] for fan in fans] + [f.span for f in arcs])
    out = list(fixed)
    budget = max(0, n_samples - len(out))
    if features and budget > 0:
        w = weights / weights.sum()
        for _ in range(budget):
            j = int(rng.choice(len(features), p=w))
            t = float(rng.uniform())
            kind, obj = features[j]
            if kind == "fan":
                u0, v, ang = obj
                e2 = np.cross(v, u0)
                a = t * ang
                out.append(np.cos(a) * u0 + np.sin(a) * e2)
            else:
                f = obj
                x = f.point_at(t * f.span)
                out.append(_support_at_point(f, x))
    return np.array(out[:max(n_samples, len(fixed))])


def brute_thickness(body: ConvexBody, n_samples: int, seed: int) -> float:
    """Sampling upper bound on the thickness, independent of the dual route.

    Samples supporting hemispheres from the primal boundary features and
    returns min over sampled K of (pi - max over sampled K* of the center
    distance), which equals pi minus the largest pairwise center distance.
    Deterministic per seed; estimates shrink as the sample grows.
    """
    if n_samples < 100:
        raise GeometryError("n_samples must be at least 100")
    rng = np.random.default_rng(seed)
    U = _support_samples(body, n_samples, rng)
    min_dot = 1.0
    chunk = 512
    for i in range(0, len(U), chunk):
        block = U[i:i + chunk] @ U.T
        min_dot = min(min_dot, float(block.min()))
    return np.pi - float(np.arccos(np.clip(min_dot, -1.0, 1.0)))
