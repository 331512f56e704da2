"""Spherical convex bodies bounded by geodesic and circular-arc edges.

A body is stored as a cyclic sequence of edges between consecutive vertices.
Circular edges are canonicalized so the body lies inside the carrier disk
(center, radius in (0, pi)) and the arc runs counterclockwise about the
center; radii above pi/2 are legal (needed for wide constant-width bodies).

Measurement operations (diameter, extreme-set diameter) enumerate exact
closed-form candidates: vertex pairs, vertex-edge stationary points, and
edge-edge stationary points, all filtered by arc membership.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sphere import (
    GEOM_TOL,
    GeometryError,
    cross3,
    cross_rows,
    dist,
    dist_rows,
    norm_rows,
    orthonormal_frame,
    slerp,
    unit,
)

GEODESIC = "geodesic"
CIRCULAR = "circular"

# Boundary-inclusion tolerance for membership tests.
CONTAIN_TOL = 1e-10
# Vertices turning by less than this are treated as collinear and merged.
TURN_TOL = 1e-9
_WITNESS_MIN_MARGIN = 1e-9


@dataclass(frozen=True)
class Edge:
    """One boundary edge; its start point is the previous edge's end."""

    kind: str
    end: np.ndarray
    center: np.ndarray | None = None
    radius: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "end", unit(self.end))
        if self.kind == CIRCULAR:
            if self.center is None or self.radius is None:
                raise GeometryError("circular edge needs center and radius")
            object.__setattr__(self, "center", unit(self.center))
        elif self.kind != GEODESIC:
            raise GeometryError(f"unknown edge kind {self.kind!r}")


@dataclass(frozen=True)
class ExtremeSet:
    """Extreme points of a body: isolated corner vertices plus circular arcs."""

    isolated: np.ndarray
    arcs: tuple[tuple[int, Edge], ...]


@dataclass(frozen=True)
class DiameterResult:
    value: float
    pairs: tuple[tuple[np.ndarray, np.ndarray], ...]


class _EdgeFrame:
    """Cached per-edge parameterization.

    Geodesic: x(t) = cos t * e1 + sin t * e2, t in [0, span].
    Circular: x(t) = cos(rho) c + sin(rho) (cos t * e1 + sin t * e2),
    t in [0, span], counterclockwise about c.
    """

    __slots__ = ("kind", "start", "end", "center", "radius", "e1", "e2",
                 "span", "pole", "chord_normal", "length")

    def __init__(self, kind, start, end, center, radius, chord_normal):
        self.kind = kind
        self.start = start
        self.end = end
        self.center = center
        self.radius = radius
        self.chord_normal = chord_normal
        if kind == GEODESIC:
            self.pole = chord_normal
            self.e1 = start
            self.e2 = cross3(self.pole, start)
            self.span = dist(start, end)
            self.length = self.span
        else:
            w = start - np.dot(start, center) * center
            self.e1 = unit(w)
            self.e2 = cross3(center, self.e1)
            s = np.sin(radius)
            t = float(np.arctan2(np.dot(end, self.e2), np.dot(end, self.e1)))
            self.span = t % (2.0 * np.pi)
            self.pole = None
            self.length = self.span * s

    def point_at(self, t: float) -> np.ndarray:
        d = np.cos(t) * self.e1 + np.sin(t) * self.e2
        if self.kind == GEODESIC:
            return d
        return np.cos(self.radius) * self.center + np.sin(self.radius) * d

    def tangent_at_point(self, x) -> np.ndarray:
        axis = self.pole if self.kind == GEODESIC else self.center
        return unit(cross3(axis, x))

    def param_of(self, x) -> float:
        return float(np.arctan2(np.dot(x, self.e2), np.dot(x, self.e1))) % (2.0 * np.pi)

    def on_arc(self, x, tol: float = 1e-9) -> bool:
        t = self.param_of(x)
        return t <= self.span + tol or t >= 2.0 * np.pi - tol

    def dot_extrema(self, u) -> tuple[float, float]:
        """(min, max) of <x, u> over the edge."""
        if self.kind == GEODESIC:
            a, b, c0 = float(np.dot(self.e1, u)), float(np.dot(self.e2, u)), 0.0
        else:
            c0 = float(np.cos(self.radius) * np.dot(self.center, u))
            s = np.sin(self.radius)
            a, b = float(s * np.dot(self.e1, u)), float(s * np.dot(self.e2, u))
        vals = [c0 + a * np.cos(t) + b * np.sin(t) for t in (0.0, self.span)]
        r = float(np.hypot(a, b))
        if r > 0.0:
            psi = float(np.arctan2(b, a))
            for t in (psi % (2.0 * np.pi), (psi + np.pi) % (2.0 * np.pi)):
                if t <= self.span + 1e-12:
                    vals.append(c0 + a * np.cos(t) + b * np.sin(t))
        return min(vals), max(vals)


class ConvexBody:
    """Closed spherically convex region with nonempty interior.

    Immutable after construction; use :func:`body_from_cycle` or the shape
    constructors to build one.
    """

    def __init__(self, vertices: np.ndarray, edges: tuple[Edge, ...], witness: np.ndarray):
        self.vertices = vertices
        self.edges = edges
        self.witness = witness
        self.vertices.setflags(write=False)
        nxt = np.roll(vertices, -1, axis=0)
        cr = cross_rows(vertices, nxt)
        sins = norm_rows(cr)
        self._chord_normals = cr / sins[:, None]
        self._chord_spans = np.arctan2(sins, np.sum(vertices * nxt, axis=1))
        self._all_geodesic = all(e.kind == GEODESIC for e in edges)
        self._frames_cache: list[_EdgeFrame] | None = None
        self._turns = None

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def _frames(self) -> list[_EdgeFrame]:
        if self._frames_cache is None:
            n = len(self.edges)
            self._frames_cache = [
                _EdgeFrame(e.kind, self.vertices[i], self.vertices[(i + 1) % n],
                           e.center, e.radius, self._chord_normals[i])
                for i, e in enumerate(self.edges)
            ]
        return self._frames_cache

    def frame(self, i: int) -> _EdgeFrame:
        return self._frames[i]

    def turns(self) -> np.ndarray:
        """Signed left-turn angle at each vertex (vertex i starts edge i)."""
        if self._turns is None:
            if self._all_geodesic:
                V, N = self.vertices, self._chord_normals
                t_out = cross_rows(N, V)
                t_in = cross_rows(np.roll(N, 1, axis=0), V)
                self._turns = np.arctan2(np.einsum('ij,ij->i', V, cross_rows(t_in, t_out)),
                                         np.einsum('ij,ij->i', t_in, t_out))
            else:
                n = self.n_edges
                out = np.empty(n)
                for i in range(n):
                    v = self.vertices[i]
                    t_in = self._frames[(i - 1) % n].tangent_at_point(v)
                    t_out = self._frames[i].tangent_at_point(v)
                    out[i] = np.arctan2(np.dot(v, np.cross(t_in, t_out)), np.dot(t_in, t_out))
                self._turns = out
        return self._turns

    def boundary_sample(self, total: int) -> np.ndarray:
        """About `total` points along the boundary, vertices included."""
        lengths = np.array([f.length for f in self._frames])
        counts = np.maximum(2, np.round(total * lengths / lengths.sum()).astype(int))
        pts = []
        for f, k in zip(self._frames, counts):
            ts = np.linspace(0.0, f.span, k, endpoint=False)
            pts.extend(f.point_at(t) for t in ts)
        return np.array(pts)

    def support_min(self, u) -> tuple[float, np.ndarray]:
        """Minimum of <x, u> over the body with a minimizing boundary point."""
        u = np.asarray(u, dtype=float)
        dots = self.vertices @ u
        k = int(np.argmin(dots))
        best, arg = float(dots[k]), self.vertices[k]
        if self._all_geodesic:
            return best, arg
        for f in self._frames:
            if f.kind != CIRCULAR:
                continue
            lo, _ = f.dot_extrema(u)
            if lo < best:
                best = lo
                c0 = np.cos(f.radius) * float(np.dot(f.center, u))
                s = np.sin(f.radius)
                a, b = s * float(np.dot(f.e1, u)), s * float(np.dot(f.e2, u))
                t = (float(np.arctan2(b, a)) + np.pi) % (2.0 * np.pi)
                if t > f.span:
                    t = 0.0 if c0 + a <= c0 + a * np.cos(f.span) + b * np.sin(f.span) else f.span
                arg = f.point_at(t)
        return best, arg


def find_witness(points: np.ndarray) -> tuple[np.ndarray, float]:
    """Direction with positive dot against every input point, plus its margin.

    Runs the Frank-Wolfe iteration for the min-norm point of the convex hull
    (whose direction maximizes the worst dot product), stopping as soon as the
    margin is comfortably positive.  Raises GeometryError when no open
    hemisphere contains all the points.
    """
    points = np.asarray(points, dtype=float)
    x = points.mean(axis=0)
    best_w, best_m = None, -np.inf
    for _ in range(400):
        nx = float(np.linalg.norm(x))
        if nx < 1e-9:
            break
        w = x / nx
        dots = points @ w
        i = int(np.argmin(dots))
        m = float(dots[i])
        if m > best_m:
            best_w, best_m = w, m
        if m >= 0.05:
            break
        # descent step toward the worst point
        s = points[i]
        dx = s - x
        t = -float(x @ dx) / float(dx @ dx)
        if t <= 1e-15:
            break
        x = x + min(1.0, t) * dx
    if best_w is None or best_m <= _WITNESS_MIN_MARGIN:
        raise GeometryError("points are not contained in any open hemisphere")
    return best_w, best_m


def _arc_argmin_dot(f: _EdgeFrame, w) -> np.ndarray:
    """Point of a circular edge minimizing <x, w>."""
    c0 = np.cos(f.radius) * float(np.dot(f.center, w))
    s = np.sin(f.radius)
    a, b = s * float(np.dot(f.e1, w)), s * float(np.dot(f.e2, w))
    t = (float(np.arctan2(b, a)) + np.pi) % (2.0 * np.pi)
    if t > f.span + 1e-12:
        t = 0.0 if a <= a * np.cos(f.span) + b * np.sin(f.span) else f.span
    return f.point_at(t)


def _body_witness(vertices, frames) -> np.ndarray:
    pts = [v for v in vertices]
    for _ in range(60):
        w, vertex_margin = find_witness(np.array(pts))
        arc_margin, deepest = np.inf, []
        for f in frames:
            if f.kind != CIRCULAR:
                continue
            lo, _ = f.dot_extrema(w)
            if lo < arc_margin:
                arc_margin = lo
            if lo < _WITNESS_MIN_MARGIN:
                deepest.append(_arc_argmin_dot(f, w))
        if min(vertex_margin, arc_margin) > _WITNESS_MIN_MARGIN:
            return w
        if not deepest:
            raise GeometryError("body is not contained in any open hemisphere")
        pts.extend(deepest)
    raise GeometryError("witness search did not converge")


def body_from_cycle(edges: list[Edge] | tuple[Edge, ...], start: np.ndarray | None = None) -> ConvexBody:
    """Build and validate a convex body from a closed edge cycle.

    `edges[i]` runs from `edges[i-1].end` to `edges[i].end`; `start`, when
    given, must equal the last edge's end and only fixes the intended first
    vertex.
    """
    edges = tuple(edges)
    n = len(edges)
    if n < 2:
        raise GeometryError("a body needs at least two edges")
    vertices = np.array([edges[i - 1].end for i in range(n)])
    if start is not None and dist(start, vertices[0]) > 1e-9:
        raise GeometryError("start point does not close the edge cycle")

    frames = []
    for i, e in enumerate(edges):
        s, t = vertices[i], vertices[(i + 1) % n]
        if dist(s, t) < 1e-9 and e.kind == GEODESIC:
            raise GeometryError("zero-length geodesic edge")
        if float(np.dot(s, t)) <= -1.0 + 1e-9:
            raise GeometryError("edge endpoints are antipodal")
        if e.kind == CIRCULAR:
            # beyond pi/2 the carrier circle curves away from its center and
            # the edge would be concave toward the body
            if not (1e-9 < e.radius <= np.pi / 2 + 1e-9):
                raise GeometryError("circular edge radius outside (0, pi/2]")
            for p in (s, t):
                if abs(dist(p, e.center) - e.radius) > 1e-8:
                    raise GeometryError("circular edge endpoint off the carrier circle")
        f = _EdgeFrame(e.kind, s, t, e.center, e.radius, unit(cross3(s, t)))
        if e.kind == CIRCULAR and f.span > np.pi + 1e-9:
            raise GeometryError("circular edge longer than a half circle")
        frames.append(f)

    # local convexity at every vertex
    for i in range(n):
        v = vertices[i]
        t_in = frames[(i - 1) % n].tangent_at_point(v)
        t_out = frames[i].tangent_at_point(v)
        turn = float(np.arctan2(np.dot(v, cross3(t_in, t_out)), np.dot(t_in, t_out)))
        if turn < -TURN_TOL:
            raise GeometryError(f"boundary turns right at vertex {i}: not convex")

    # the vertex cycle must itself be convex (chords of a convex set)
    if n >= 3:
        normals = np.array([f.chord_normal for f in frames])
        if float(np.min(vertices @ normals.T)) < -1e-9:
            raise GeometryError("vertex cycle is not convex")

    witness = _body_witness(vertices, frames)

    if all(e.kind == GEODESIC for e in edges):
        if n < 3:
            raise GeometryError("a geodesic body needs at least three edges")
        n0 = frames[0].chord_normal
        if max(abs(float(np.dot(v, n0))) for v in vertices) < 1e-9:
            raise GeometryError("body has empty interior (all vertices on one great circle)")

    return ConvexBody(vertices, edges, witness)


def polygon_body(vertices, witness: np.ndarray | None = None) -> ConvexBody:
    """Convex polygon from counterclockwise-ordered vertices (vectorized checks)."""
    V = np.array([unit(v) for v in vertices])
    n = len(V)
    if n < 3:
        raise GeometryError("a polygon needs at least three vertices")
    Vn = np.roll(V, -1, axis=0)
    dots = np.sum(V * Vn, axis=1)
    cr = cross_rows(V, Vn)
    sins = norm_rows(cr)
    if np.any(sins < 1e-9):
        raise GeometryError("zero-length geodesic edge")
    if np.any(dots <= -1.0 + 1e-9):
        raise GeometryError("edge endpoints are antipodal")
    N = cr / sins[:, None]
    t_out = cross_rows(N, V)
    t_out /= norm_rows(t_out)[:, None]
    t_in = cross_rows(np.roll(N, 1, axis=0), V)
    t_in /= norm_rows(t_in)[:, None]
    turns = np.arctan2(np.einsum('ij,ij->i', V, cross_rows(t_in, t_out)),
                       np.einsum('ij,ij->i', t_in, t_out))
    if np.any(turns < -TURN_TOL):
        raise GeometryError("boundary turns right at a vertex: not convex")
    if float(np.min(V @ N.T)) < -1e-9:
        raise GeometryError("vertex cycle is not convex")
    if np.max(np.abs(V @ N[0])) < 1e-9:
        raise GeometryError("body has empty interior (all vertices on one great circle)")
    if witness is None:
        witness, _ = find_witness(V)
    edges = tuple(Edge(GEODESIC, Vn[i]) for i in range(n))
    return ConvexBody(V, edges, witness)


def convex_hull(points) -> ConvexBody:
    """Spherical convex hull of points contained in some open hemisphere.

    Uses the gnomonic projection onto the tangent plane at a witness
    direction (geodesics map to straight lines there), a planar monotone
    chain, and lifts the planar hull back to the sphere.
    """
    P = np.array([unit(p) for p in points])
    if len(P) < 3:
        raise GeometryError("need at least three points")
    w, margin = find_witness(P)
    if margin <= _WITNESS_MIN_MARGIN:
        raise GeometryError("points are not contained in any open hemisphere")
    e1, e2 = orthonormal_frame(w)
    denom = P @ w
    plane = np.stack([(P @ e1) / denom, (P @ e2) / denom], axis=1)

    order = np.lexsort((plane[:, 1], plane[:, 0]))

    def half(indices):
        out = []
        for i in indices:
            while len(out) > 1:
                o, a = plane[out[-2]], plane[out[-1]]
                if (a[0] - o[0]) * (plane[i][1] - o[1]) - (a[1] - o[1]) * (plane[i][0] - o[0]) <= 1e-18:
                    out.pop()
                else:
                    break
            out.append(i)
        return out

    lower = half(order)
    upper = half(order[::-1])
    idx = lower[:-1] + upper[:-1]
    if len(idx) < 3:
        raise GeometryError("degenerate input: all points collinear")

    verts = _merge_collinear(np.array([P[i] for i in idx]))
    if len(verts) < 3:
        raise GeometryError("degenerate input: all points collinear")
    return polygon_body(verts, witness=w)


def _merge_collinear(V: np.ndarray) -> np.ndarray:
    for _ in range(len(V)):
        n = len(V)
        if n < 3:
            break
        Vn = np.roll(V, -1, axis=0)
        cr = cross_rows(V, Vn)
        sins = norm_rows(cr)
        dup = sins < 1e-12
        if np.any(dup):
            V = V[~dup]
            continue
        N = cr / sins[:, None]
        t_out = cross_rows(N, V)
        t_in = cross_rows(np.roll(N, 1, axis=0), V)
        turns = np.arctan2(np.einsum('ij,ij->i', V, cross_rows(t_in, t_out)),
                           np.einsum('ij,ij->i', t_in, t_out))
        flat = np.abs(turns) < TURN_TOL
        if not np.any(flat):
            break
        V = V[~flat]
    return V


def contains(body: ConvexBody, x, tol: float = CONTAIN_TOL) -> bool:
    """Membership test, boundary inclusive.

    A point belongs to the body iff it is in the spherical polygon of the
    vertex cycle or in one of the circular-segment bulges between an edge's
    chord and its arc.
    """
    x = unit(x)
    if body.n_edges >= 3 and float(np.min(body._chord_normals @ x)) >= -tol:
        return True
    for f in body._frames:
        if f.kind != CIRCULAR:
            continue
        if float(np.dot(x, f.chord_normal)) <= tol and dist(x, f.center) <= f.radius + tol:
            return True
    return False


def extreme_points(body: ConvexBody) -> ExtremeSet:
    """Corner vertices plus every circular edge (all of whose points are extreme)."""
    turns = body.turns()
    isolated = [body.vertices[i] for i in range(body.n_edges) if turns[i] > TURN_TOL]
    arcs = tuple((i, e) for i, e in enumerate(body.edges) if e.kind == CIRCULAR)
    return ExtremeSet(np.array(isolated).reshape(-1, 3), arcs)


# ---------------------------------------------------------------------------
# diameter machinery


def _pairs_vertex_vertex(V):
    n = len(V)
    if n < 2:
        return
    cr = cross_rows(V[:, None, :], V[None, :, :])
    d = np.arctan2(norm_rows(cr), V @ V.T)
    iu, ju = np.triu_indices(n, k=1)
    for i, j in zip(iu, ju):
        yield float(d[i, j]), V[i], V[j]


def _far_on_edge(q, f: _EdgeFrame):
    """Farthest-distance candidates on one edge as seen from q (arc-interior only)."""
    axis = f.pole if f.kind == GEODESIC else f.center
    w = q - np.dot(q, axis) * axis
    nw = float(np.linalg.norm(w))
    if nw <= 1e-9:
        # constant distance along the edge
        return [f.point_at(f.span / 2.0)]
    wh = w / nw
    far = -wh if f.kind == GEODESIC else np.cos(f.radius) * f.center - np.sin(f.radius) * wh
    return [far] if f.on_arc(far) else []


def _pairs_vertex_edge(V, frames):
    for f in frames:
        axis = f.pole if f.kind == GEODESIC else f.center
        W = V - np.outer(V @ axis, axis)
        nw = np.linalg.norm(W, axis=1)
        reg = nw > 1e-9
        if np.any(reg):
            wh = W[reg] / nw[reg][:, None]
            if f.kind == GEODESIC:
                far = -wh
            else:
                far = np.cos(f.radius) * f.center - np.sin(f.radius) * wh
            t = np.arctan2(far @ f.e2, far @ f.e1) % (2.0 * np.pi)
            ok = (t <= f.span + 1e-9) | (t >= 2.0 * np.pi - 1e-9)
            Vr = V[reg]
            if np.any(ok):
                ds = dist_rows(Vr[ok], far[ok])
                for v, p, d in zip(Vr[ok], far[ok], ds):
                    yield float(d), v, p
        if np.any(~reg):
            mid = f.point_at(f.span / 2.0)
            for v in V[~reg]:
                yield dist(v, mid), v, mid


def _pairs_edge_edge(frames):
    m = len(frames)
    for i in range(m):
        for j in range(i + 1, m):
            fa, fb = frames[i], frames[j]
            axa = fa.pole if fa.kind == GEODESIC else fa.center
            axb = fb.pole if fb.kind == GEODESIC else fb.center
            c = float(np.dot(axa, axb))
            if abs(c) >= 1.0 - 1e-9:
                # shared axis: stationary pairs lie on common meridians and are
                # already produced by vertex-edge candidates at the endpoints;
                # add the midpoint's mate for arcs with no endpoint mate.
                for q in (fa.point_at(fa.span / 2.0),):
                    for p in _far_on_edge(q, fb):
                        yield dist(q, p), q, p
                continue
            wa = unit(axb - c * axa)
            wb = unit(axa - c * axb)
            if fa.kind == GEODESIC:
                xs = [wa, -wa]
            else:
                xs = [np.cos(fa.radius) * fa.center + s * np.sin(fa.radius) * wa for s in (+1.0, -1.0)]
            if fb.kind == GEODESIC:
                ys = [wb, -wb]
            else:
                ys = [np.cos(fb.radius) * fb.center + s * np.sin(fb.radius) * wb for s in (+1.0, -1.0)]
            xs = [x for x in xs if fa.on_arc(x)]
            ys = [y for y in ys if fb.on_arc(y)]
            for x in xs:
                for y in ys:
                    yield dist(x, y), x, y


def _collect_max(cands, tie_tol: float = 1e-9) -> DiameterResult:
    best = 0.0
    kept: list[tuple[float, np.ndarray, np.ndarray]] = []
    for d, p, q in cands:
        if d > best:
            best = d
            kept = [(d, p, q) for (d, p, q) in kept if d >= best - tie_tol]
        if d >= best - tie_tol:
            kept.append((d, p, q))
    seen = set()
    pairs = []
    for d, p, q in kept:
        if d < best - tie_tol:
            continue
        ka = tuple(np.round(p, 9))
        kb = tuple(np.round(q, 9))
        key = (min(ka, kb), max(ka, kb))
        if key in seen:
            continue
        seen.add(key)
        pairs.append((p, q))
    return DiameterResult(best, tuple(pairs))


def _collect_max_arrays(families, tie_tol: float = 1e-9) -> DiameterResult:
    best = 0.0
    for d, _, _ in families:
        if d.size:
            best = max(best, float(d.max()))
    seen = set()
    pairs = []
    for d, pa, pb in families:
        if not d.size:
            continue
        for k in np.flatnonzero(d >= best - tie_tol):
            ka = tuple(np.round(pa[k], 9))
            kb = tuple(np.round(pb[k], 9))
            key = (min(ka, kb), max(ka, kb))
            if key not in seen:
                seen.add(key)
                pairs.append((pa[k], pb[k]))
    return DiameterResult(best, tuple(pairs))


def _diameter_polygon(body: ConvexBody) -> DiameterResult:
    """One-shot vectorized diameter for all-geodesic bodies."""
    V = body.vertices
    n = len(V)
    N = body._chord_normals
    E2 = np.cross(N, V)
    spans = body._chord_spans
    half = spans[:, None] / 2.0
    mids = np.cos(half) * V + np.sin(half) * E2
    families = []

    iu, ju = np.triu_indices(n, k=1)
    dvv = dist_rows(V[iu], V[ju])
    families.append((dvv, V[iu], V[ju]))

    # vertex-edge stationary candidates
    P = V @ N.T                                     # (nv, ne)
    W = V[:, None, :] - P[:, :, None] * N[None, :, :]
    nw = norm_rows(W)
    reg = nw > 1e-9
    far = np.where(reg[..., None], -W / np.maximum(nw, 1e-300)[..., None],
                   np.broadcast_to(mids[None, :, :], W.shape))
    t = np.arctan2(np.einsum('vek,ek->ve', far, E2),
                   np.einsum('vek,ek->ve', far, V)) % (2.0 * np.pi)
    ok = ~reg | (t <= spans[None, :] + 1e-9) | (t >= 2.0 * np.pi - 1e-9)
    Vb = np.broadcast_to(V[:, None, :], far.shape)
    dve = np.arctan2(norm_rows(cross_rows(Vb, far)),
                     np.einsum('vek,vek->ve', Vb, far))
    families.append((dve[ok], Vb[ok], far[ok]))

    # edge-edge stationary candidates
    C = N @ N.T
    prox = np.abs(C) < 1.0 - 1e-9
    Wa = N[None, :, :] - C[:, :, None] * N[:, None, :]   # on circle i, toward pole j
    Wb = N[:, None, :] - C[:, :, None] * N[None, :, :]   # on circle j, toward pole i
    na = norm_rows(Wa)
    nb = norm_rows(Wb)
    with np.errstate(invalid="ignore", divide="ignore"):
        Ua = Wa / np.maximum(na, 1e-300)[..., None]
        Ub = Wb / np.maximum(nb, 1e-300)[..., None]
    for sa in (1.0, -1.0):
        X = sa * Ua
        tx = np.arctan2(np.einsum('ijk,ik->ij', X, E2),
                        np.einsum('ijk,ik->ij', X, V)) % (2.0 * np.pi)
        okx = (tx <= spans[:, None] + 1e-9) | (tx >= 2.0 * np.pi - 1e-9)
        for sb in (1.0, -1.0):
            Y = sb * Ub
            ty = np.arctan2(np.einsum('ijk,jk->ij', Y, E2),
                            np.einsum('ijk,jk->ij', Y, V)) % (2.0 * np.pi)
            oky = (ty <= spans[None, :] + 1e-9) | (ty >= 2.0 * np.pi - 1e-9)
            ok = prox & okx & oky
            ok[np.tril_indices(n)] = False
            if np.any(ok):
                dxy = dist_rows(X[ok], Y[ok])
                families.append((dxy, X[ok], Y[ok]))

    return _collect_max_arrays(families)


def diameter(body: ConvexBody) -> DiameterResult:
    """Largest distance between two points of the body, with realizing pairs.

    Exact for geodesic and circular edges; every pair within 1e-9 of the
    maximum is reported.  Valid for diameters up to pi - 1e-6.
    """
    if all(e.kind == GEODESIC for e in body.edges):
        return _diameter_polygon(body)
    V = body.vertices
    frames = body._frames

    def cands():
        yield from _pairs_vertex_vertex(V)
        yield from _pairs_vertex_edge(V, frames)
        yield from _pairs_edge_edge(frames)

    return _collect_max(cands())


def diameter_of_extreme(body: ConvexBody) -> DiameterResult:
    """Diameter of the set of extreme points."""
    ext = extreme_points(body)
    pts = [p for p in ext.isolated]
    arc_frames = [body._frames[i] for i, _ in ext.arcs]
    for f in arc_frames:
        pts.append(f.start)
        pts.append(f.end)
    V = np.array(pts).reshape(-1, 3)
    if not arc_frames:
        iu, ju = np.triu_indices(len(V), k=1)
        d = dist_rows(V[iu], V[ju])
        return _collect_max_arrays([(d, V[iu], V[ju])])

    def cands():
        yield from _pairs_vertex_vertex(V)
        yield from _pairs_vertex_edge(V, arc_frames)
        yield from _pairs_edge_edge(arc_frames)

    return _collect_max(cands())


def farthest_boundary_point(body: ConvexBody, q) -> tuple[np.ndarray, float]:
    """Boundary point of the body farthest from q, with the distance."""
    q = unit(q)
    dv = dist_rows(body.vertices, np.broadcast_to(q, body.vertices.shape))
    k = int(np.argmax(dv))
    best_p, best_d = body.vertices[k], float(dv[k])
    for f in body._frames:
        for p in _far_on_edge(q, f):
            d = dist(q, p)
            if d > best_d:
                best_p, best_d = p, d
    return best_p, best_d
