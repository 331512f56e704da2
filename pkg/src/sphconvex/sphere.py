"""Geodesic primitives on the unit sphere S2.

Points are unit 3-vectors (plain numpy arrays); every angle is in radians.
Distances use the two-argument arctangent form, which stays accurate near
0 and pi where arccos of a dot product does not.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Library-wide tolerance for equality / antipodality of unit vectors.
GEOM_TOL = 1e-12


class GeometryError(ValueError):
    """An input violates a geometric precondition."""


def unit(v) -> np.ndarray:
    """Renormalize a 3-vector onto the sphere."""
    v = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(v))
    if n < 1e-12:
        raise GeometryError("cannot normalize a near-zero vector")
    return v / n


def cross3(a, b) -> np.ndarray:
    """Cross product of two 3-vectors (avoids np.cross overhead on tiny inputs)."""
    return np.array([a[1] * b[2] - a[2] * b[1],
                     a[2] * b[0] - a[0] * b[2],
                     a[0] * b[1] - a[1] * b[0]])


def dist(a, b) -> float:
    """Great-circle distance between two points, in [0, pi]."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    cx = a[1] * b[2] - a[2] * b[1]
    cy = a[2] * b[0] - a[0] * b[2]
    cz = a[0] * b[1] - a[1] * b[0]
    return float(np.arctan2(np.sqrt(cx * cx + cy * cy + cz * cz),
                            a[0] * b[0] + a[1] * b[1] + a[2] * b[2]))


def cross_rows(a, b) -> np.ndarray:
    """Component-wise cross product over stacks of 3-vectors."""
    out = np.empty(np.broadcast_shapes(a.shape, b.shape))
    out[..., 0] = a[..., 1] * b[..., 2] - a[..., 2] * b[..., 1]
    out[..., 1] = a[..., 2] * b[..., 0] - a[..., 0] * b[..., 2]
    out[..., 2] = a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]
    return out


def norm_rows(a) -> np.ndarray:
    return np.sqrt(np.sum(a * a, axis=-1))


def dist_many(points, q) -> np.ndarray:
    """Great-circle distances from each row of `points` to the point `q`."""
    points = np.asarray(points, dtype=float)
    q = np.asarray(q, dtype=float)
    cr = cross_rows(points, np.broadcast_to(q, points.shape))
    return np.arctan2(norm_rows(cr), points @ q)


def dist_rows(a, b) -> np.ndarray:
    """Row-wise great-circle distances between two stacks of points."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.arctan2(norm_rows(cross_rows(a, b)), np.sum(a * b, axis=-1))


def tangent_toward(x, y) -> np.ndarray:
    """Unit tangent at x pointing along the arc toward y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return unit(y - np.dot(x, y) * x)


def slerp(a, b, t):
    """Point(s) on the arc from a to b at fraction(s) t in [0, 1]."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    theta = dist(a, b)
    if theta < 1e-12:
        return a.copy() if np.isscalar(t) else np.tile(a, (len(t), 1))
    t = np.asarray(t, dtype=float)
    s = np.sin(theta)
    if t.ndim == 0:
        return (np.sin((1.0 - t) * theta) * a + np.sin(t * theta) * b) / s
    return (np.sin((1.0 - t) * theta)[:, None] * a + np.sin(t * theta)[:, None] * b) / s


def rotate_about(axis, angle, v) -> np.ndarray:
    """Rodrigues rotation of v (a vector or stack of vectors) about a unit axis."""
    k = unit(axis)
    v = np.asarray(v, dtype=float)
    c, s = np.cos(angle), np.sin(angle)
    return v * c + np.cross(k, v) * s + np.outer(v @ k, k).reshape(v.shape) * (1.0 - c)


def orthonormal_frame(p) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic right-handed tangent frame (e1, e2) at p: e1 x e2 = p."""
    p = unit(p)
    helper = np.zeros(3)
    helper[int(np.argmin(np.abs(p)))] = 1.0
    e1 = unit(np.cross(helper, p))
    e2 = np.cross(p, e1)
    return e1, e2


@dataclass(frozen=True)
class Arc:
    """Minor great-circle arc between two non-antipodal points."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", unit(self.a))
        object.__setattr__(self, "b", unit(self.b))
        if float(np.dot(self.a, self.b)) <= -1.0 + GEOM_TOL:
            raise GeometryError("arc endpoints must not be antipodal")

    @property
    def length(self) -> float:
        return dist(self.a, self.b)


@dataclass(frozen=True)
class Hemisphere:
    """Closed hemisphere {x : <x, center> >= 0}."""

    center: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "center", unit(self.center))

    def contains(self, x, tol: float = GEOM_TOL) -> bool:
        return float(np.dot(unit(x), self.center)) >= -tol


@dataclass(frozen=True)
class Semicircle:
    """Half of the great circle with the given pole, centered at `center`.

    The set is {x : <x, pole> = 0, dist(x, center) <= pi/2}.
    """

    pole: np.ndarray
    center: np.ndarray

    def __post_init__(self):
        pole = unit(self.pole)
        center = np.asarray(self.center, dtype=float)
        if abs(float(np.dot(pole, unit(center)))) > 1e-9:
            raise GeometryError("semicircle center must lie on the carrier circle")
        # project out residual drift so the invariant holds exactly
        center = unit(center - np.dot(center, pole) * pole)
        object.__setattr__(self, "pole", pole)
        object.__setattr__(self, "center", center)

    def point_at(self, angle: float) -> np.ndarray:
        """Point of the carrier circle at signed angle from the center."""
        t = np.cross(self.pole, self.center)
        return np.cos(angle) * self.center + np.sin(angle) * t


@dataclass(frozen=True)
class Lune:
    """Intersection of two distinct, non-opposite hemispheres."""

    g: Hemisphere
    h: Hemisphere

    def __post_init__(self):
        c = float(np.dot(self.g.center, self.h.center))
        if c >= 1.0 - GEOM_TOL:
            raise GeometryError("lune hemispheres must be distinct")
        if c <= -1.0 + GEOM_TOL:
            raise GeometryError("lune hemispheres must not be opposite")

    def contains(self, x, tol: float = GEOM_TOL) -> bool:
        return self.g.contains(x, tol) and self.h.contains(x, tol)


def boundary_semicircle(lune: Lune, which: str = "first") -> Semicircle:
    """Bounding semicircle of a lune on the first (or second) hemisphere's circle.

    The "first" semicircle lies on the boundary circle of `lune.g`; its center
    is the normalized projection of the other hemisphere's center onto that
    circle, and symmetrically for "second".
    """
    g, h = lune.g.center, lune.h.center
    c = float(np.dot(g, h))
    if which == "first":
        return Semicircle(pole=g, center=unit(h - c * g))
    if which == "second":
        return Semicircle(pole=h, center=unit(g - c * h))
    raise ValueError("which must be 'first' or 'second'")


def lune_thickness(lune: Lune) -> float:
    """Thickness of a lune: distance between its bounding semicircle centers.

    Closed form: writing c = <g, h> for the hemisphere centers, the two
    semicircle centers are (h - c g)/sqrt(1-c^2) and (g - c h)/sqrt(1-c^2),
    whose dot product is -c.  The thickness is therefore pi - dist(g, h).
    """
    return np.pi - dist(lune.g.center, lune.h.center)


def lune_thickness_via_centers(lune: Lune) -> float:
    """Thickness from the explicit semicircle-center construction.

    Kept as the anti-regression oracle for the closed form above.
    """
    p = boundary_semicircle(lune, "first").center
    q = boundary_semicircle(lune, "second").center
    return dist(p, q)


def _arc_param_frame(arc: Arc):
    """Carrier pole and in-plane frame; parameter of x is atan2(<x,e2>,<x,e1>)."""
    n = unit(cross3(arc.a, arc.b))
    e1 = arc.a
    e2 = cross3(n, e1)
    return n, e1, e2


def _on_arc_param(t: float, length: float, tol: float = 1e-9) -> bool:
    t = t % (2.0 * np.pi)
    return t <= length + tol or t >= 2.0 * np.pi - tol


def farthest_on_arc(q, arc: Arc) -> tuple[np.ndarray, float]:
    """Maximizer of dist(q, .) over a minor arc, with the maximum value.

    Candidates are the endpoints plus the antipode of q's projection onto
    the carrier circle whenever that antipode lies on the arc.  A zero-length
    arc returns its single point.
    """
    q = unit(q)
    if dist(arc.a, arc.b) < GEOM_TOL:
        return arc.a.copy(), dist(q, arc.a)
    n, e1, e2 = _arc_param_frame(arc)
    length = arc.length
    cands = [arc.a, arc.b]
    w = q - np.dot(q, n) * n
    if np.linalg.norm(w) > 1e-9:
        far = -unit(w)
        if _on_arc_param(float(np.arctan2(far @ e2, far @ e1)), length):
            cands.append(far)
    else:
        # q is a pole of the carrier circle: constant distance pi/2
        cands.append(slerp(arc.a, arc.b, 0.5))
    d = [dist(q, c) for c in cands]
    k = int(np.argmax(d))
    return cands[k], d[k]


def nearest_on_arc(q, arc: Arc) -> tuple[np.ndarray, float]:
    """Minimizer of dist(q, .) over a minor arc, with the minimum value."""
    q = unit(q)
    if dist(arc.a, arc.b) < GEOM_TOL:
        return arc.a.copy(), dist(q, arc.a)
    n, e1, e2 = _arc_param_frame(arc)
    length = arc.length
    cands = [arc.a, arc.b]
    w = q - np.dot(q, n) * n
    if np.linalg.norm(w) > 1e-9:
        near = unit(w)
        if _on_arc_param(float(np.arctan2(near @ e2, near @ e1)), length):
            cands.append(near)
    else:
        cands.append(slerp(arc.a, arc.b, 0.5))
    d = [dist(q, c) for c in cands]
    k = int(np.argmin(d))
    return cands[k], d[k]


def right_hypotenuse(l1: float, l2: float) -> float:
    """Hypotenuse of a right spherical triangle with legs l1, l2 in [0, pi/2].

    Implements cos k = cos l1 cos l2 in the half-angle form
    k = 2 arcsin(sqrt(s1 + s2 - 2 s1 s2)), s_i = sin^2(l_i / 2),
    which keeps full precision for small legs.
    """
    if not (-GEOM_TOL <= l1 <= np.pi / 2 + GEOM_TOL):
        raise GeometryError(f"leg l1={l1} outside [0, pi/2]")
    if not (-GEOM_TOL <= l2 <= np.pi / 2 + GEOM_TOL):
        raise GeometryError(f"leg l2={l2} outside [0, pi/2]")
    s1 = np.sin(l1 / 2.0) ** 2
    s2 = np.sin(l2 / 2.0) ** 2
    s = s1 + s2 - 2.0 * s1 * s2
    return float(2.0 * np.arcsin(min(1.0, np.sqrt(max(0.0, s)))))
