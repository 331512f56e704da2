"""Geodesic primitive tests: distances, lunes, arcs, the right-triangle rule."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sphconvex import (
    Arc,
    GeometryError,
    Hemisphere,
    Lune,
    boundary_semicircle,
    dist,
    farthest_on_arc,
    lune_thickness,
    lune_thickness_via_centers,
    nearest_on_arc,
    right_hypotenuse,
    slerp,
    unit,
)

EX = np.array([1.0, 0.0, 0.0])
EY = np.array([0.0, 1.0, 0.0])
EZ = np.array([0.0, 0.0, 1.0])


def sphere_points(rng, n):
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1)[:, None]


class TestDist:
    def test_identity(self):
        assert dist(EX, EX) == 0.0

    def test_orthogonal(self):
        assert dist(EX, EY) == pytest.approx(np.pi / 2, abs=1e-15)

    def test_antipodes(self):
        assert dist(EX, -EX) == pytest.approx(np.pi, abs=1e-15)

    def test_symmetry_exact(self):
        rng = np.random.default_rng(11)
        for a, b in zip(sphere_points(rng, 300), sphere_points(rng, 300)):
            assert dist(a, b) == dist(b, a)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**31 - 1))
    def test_triangle_inequality(self, seed):
        # metric only within an open hemisphere; sample triples from a cap
        rng = np.random.default_rng(seed)
        base = sphere_points(rng, 1)[0]
        pts = [unit(base + 0.8 * rng.normal(size=3)) for _ in range(3)]
        if any(np.dot(p, base) <= 0 for p in pts):
            return
        a, b, c = pts
        assert dist(a, c) <= dist(a, b) + dist(b, c) + 1e-12

    def test_accuracy_near_zero(self):
        a = unit([1.0, 1e-9, 0.0])
        assert dist(EX, a) == pytest.approx(1e-9, rel=1e-6)


class TestLunes:
    def test_semicircle_orthogonal_centers(self):
        lune = Lune(Hemisphere(EZ), Hemisphere(EX))
        sc = boundary_semicircle(lune, "first")
        assert np.allclose(sc.center, EX, atol=1e-15)
        assert np.allclose(sc.pole, EZ, atol=1e-15)

    def test_semicircle_projection_case(self):
        # normalize(h - <g,h> g) worked out by hand for h at angle 2pi/3
        h = np.array([0.0, np.sin(2 * np.pi / 3), np.cos(2 * np.pi / 3)])
        lune = Lune(Hemisphere(EZ), Hemisphere(h))
        sc = boundary_semicircle(lune, "first")
        assert np.allclose(sc.center, EY, atol=1e-12)
        swapped = boundary_semicircle(lune, "second")
        assert not np.allclose(sc.center, swapped.center)

    def test_semicircle_centers_on_carrier_circles(self):
        rng = np.random.default_rng(5)
        for a, b in zip(sphere_points(rng, 200), sphere_points(rng, 200)):
            if abs(np.dot(a, b)) > 1 - 1e-9:
                continue
            lune = Lune(Hemisphere(a), Hemisphere(b))
            for which in ("first", "second"):
                sc = boundary_semicircle(lune, which)
                assert abs(np.dot(sc.center, sc.pole)) <= 1e-12

    def test_thickness_orthogonal(self):
        lune = Lune(Hemisphere(EZ), Hemisphere(EX))
        assert lune_thickness(lune) == pytest.approx(np.pi / 2, abs=1e-12)
        assert lune_thickness_via_centers(lune) == pytest.approx(np.pi / 2, abs=1e-12)

    def test_thickness_two_thirds(self):
        h = np.array([0.0, np.sin(2 * np.pi / 3), np.cos(2 * np.pi / 3)])
        lune = Lune(Hemisphere(EZ), Hemisphere(h))
        assert lune_thickness(lune) == pytest.approx(np.pi / 3, abs=1e-12)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**31 - 1))
    def test_closed_form_matches_center_construction(self, seed):
        rng = np.random.default_rng(seed)
        a, b = sphere_points(rng, 2)
        if abs(np.dot(a, b)) > 1 - 1e-9:
            return
        lune = Lune(Hemisphere(a), Hemisphere(b))
        assert lune_thickness(lune) == pytest.approx(lune_thickness_via_centers(lune), abs=1e-12)

    def test_fastpath_identity_bulk(self):
        rng = np.random.default_rng(123)
        count = 0
        for a, b in zip(sphere_points(rng, 10_000), sphere_points(rng, 10_000)):
            if abs(np.dot(a, b)) > 1 - 1e-9:
                continue
            lune = Lune(Hemisphere(a), Hemisphere(b))
            t = lune_thickness(lune)
            assert 0.0 < t < np.pi
            assert abs(t + dist(a, b) - np.pi) <= 1e-12
            count += 1
        assert count > 9_900

    def test_rotation_invariance(self):
        rng = np.random.default_rng(9)
        from sphconvex.sphere import rotate_about
        for _ in range(100):
            a, b = sphere_points(rng, 2)
            if abs(np.dot(a, b)) > 1 - 1e-9:
                continue
            axis = sphere_points(rng, 1)[0]
            ang = rng.uniform(0, 2 * np.pi)
            t0 = lune_thickness(Lune(Hemisphere(a), Hemisphere(b)))
            t1 = lune_thickness(Lune(Hemisphere(rotate_about(axis, ang, a)),
                                     Hemisphere(rotate_about(axis, ang, b))))
            assert t0 == pytest.approx(t1, abs=1e-12)

    def test_degenerate_lunes_rejected(self):
        with pytest.raises(GeometryError):
            Lune(Hemisphere(EZ), Hemisphere(EZ))
        with pytest.raises(GeometryError):
            Lune(Hemisphere(EZ), Hemisphere(-EZ))


class TestArcExtrema:
    def test_farthest_from_pole_is_constant(self):
        arc = Arc(EX, EY)
        _, d = farthest_on_arc(EZ, arc)
        assert d == pytest.approx(np.pi / 2, abs=1e-12)

    def test_nearest_point_on_arc_is_itself(self):
        arc = Arc(EX, EY)
        q = slerp(EX, EY, 0.3)
        p, d = nearest_on_arc(q, arc)
        assert d <= 1e-12
        assert np.allclose(p, q, atol=1e-9)

    def test_farthest_from_point_on_short_arc_is_endpoint(self):
        arc = Arc(EX, EY)
        q = slerp(EX, EY, 0.3)
        p, d = farthest_on_arc(q, arc)
        assert np.allclose(p, EY, atol=1e-12)
        assert d == pytest.approx(dist(q, EY), abs=1e-12)

    def test_isosceles_base_midpoint_attains_max(self):
        # apex 1.7 from both base endpoints, base 1.0: the midpoint of the
        # base is the farthest base point from the apex, beyond arm length
        arm, base = 1.7, 1.0
        apex = EZ
        cos2d = (np.cos(base) - np.cos(arm) ** 2) / np.sin(arm) ** 2
        d = 0.5 * np.arccos(cos2d)
        u1 = np.array([np.sin(arm) * np.cos(d), np.sin(arm) * np.sin(d), np.cos(arm)])
        u2 = np.array([np.sin(arm) * np.cos(d), -np.sin(arm) * np.sin(d), np.cos(arm)])
        p, dmax = farthest_on_arc(apex, Arc(u1, u2))
        mid = unit(u1 + u2)
        assert np.allclose(p, mid, atol=1e-9)
        assert dmax > arm

    def test_degenerate_arc_returns_single_point(self):
        arc = Arc(EX, EX)
        p, d = farthest_on_arc(EY, arc)
        assert np.allclose(p, EX)
        assert d == pytest.approx(np.pi / 2, abs=1e-12)

    def test_antipodal_arc_rejected(self):
        with pytest.raises(GeometryError):
            Arc(EX, -EX)

    def test_extrema_match_grid_scan(self):
        rng = np.random.default_rng(21)
        ts = np.linspace(0.0, 1.0, 10_000)
        for _ in range(40):
            a, b = sphere_points(rng, 2)
            if abs(np.dot(a, b)) > 1 - 1e-6:
                continue
            q = sphere_points(rng, 1)[0]
            arc = Arc(a, b)
            grid = slerp(a, b, ts)
            dists = np.arctan2(np.linalg.norm(np.cross(grid, q), axis=1), grid @ q)
            _, dmax = farthest_on_arc(q, arc)
            _, dmin = nearest_on_arc(q, arc)
            assert dmax == pytest.approx(float(dists.max()), abs=1e-6)
            assert dmin == pytest.approx(float(dists.min()), abs=1e-6)
            assert dmax >= dists.max() - 1e-12
            assert dmin <= dists.min() + 1e-12


class TestRightHypotenuse:
    def test_degenerate_leg(self):
        assert right_hypotenuse(0.0, 0.7) == pytest.approx(0.7, abs=1e-15)

    def test_quarter_legs(self):
        assert right_hypotenuse(np.pi / 2, np.pi / 2) == pytest.approx(np.pi / 2, abs=1e-15)
        assert right_hypotenuse(np.pi / 2, 0.3) == pytest.approx(np.pi / 2, abs=1e-15)

    def test_equal_legs_value(self):
        # cos k = cos^2(pi/3) = 1/4
        assert right_hypotenuse(np.pi / 3, np.pi / 3) == pytest.approx(np.arccos(0.25), abs=1e-14)

    def test_matches_arccos_form_on_grid(self):
        for l1 in np.linspace(0.05, np.pi / 2, 25):
            for l2 in np.linspace(0.05, np.pi / 2, 25):
                assert right_hypotenuse(l1, l2) == pytest.approx(
                    float(np.arccos(np.cos(l1) * np.cos(l2))), abs=1e-12)

    def test_out_of_range_rejected(self):
        with pytest.raises(GeometryError):
            right_hypotenuse(-0.1, 0.3)
        with pytest.raises(GeometryError):
            right_hypotenuse(0.3, 2.0)


def test_equidistance_at_right_lune():
    # thickness pi/2: the center of one semicircle is pi/2 from every point
    # of the other bounding semicircle
    lune = Lune(Hemisphere(EZ), Hemisphere(EX))
    q = boundary_semicircle(lune, "second").center
    sc = boundary_semicircle(lune, "first")
    for ang in np.linspace(-np.pi / 2, np.pi / 2, 50):
        assert dist(q, sc.point_at(ang)) == pytest.approx(np.pi / 2, abs=1e-12)
