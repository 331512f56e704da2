"""Verification harness tests: determinism, zero-failure runs, sensitivity."""

import numpy as np
import pytest

from sphconvex import (
    check_bounds_and_duality,
    check_diam_extreme,
    check_lemma_max,
    check_main_theorem,
    check_proposition,
    diameter,
    random_convex_body,
    weaker_diameter_bound,
)
from sphconvex.sphere import GeometryError


class TestLemmaMax:
    def test_no_violations(self):
        rep = check_lemma_max(4000, seed=1)
        assert rep.failures == 0
        assert rep.worst_violation <= 1e-10
        assert rep.trials == 4000

    def test_witness_shape(self):
        rep = check_lemma_max(300, seed=2)
        assert set(rep.witness) >= {"g", "h", "u", "v", "z", "q", "violation"}

    def test_reproducible(self):
        a = check_lemma_max(2000, seed=3).to_dict()
        b = check_lemma_max(2000, seed=3).to_dict()
        assert a == b

    def test_thread_count_invariant(self):
        a = check_lemma_max(2000, seed=4, threads=1).to_dict()
        b = check_lemma_max(2000, seed=4, threads=3).to_dict()
        assert a == b


class TestDiamExtreme:
    def test_no_violations(self):
        rep = check_diam_extreme(600, seed=1)
        assert rep.failures == 0
        assert rep.worst_violation <= 1e-9

    def test_reproducible_across_threads(self):
        a = check_diam_extreme(300, seed=5, threads=1).to_dict()
        b = check_diam_extreme(300, seed=5, threads=2).to_dict()
        assert a == b


class TestMainTheorem:
    def test_no_violations(self):
        rep = check_main_theorem(400, seed=1)
        assert rep.failures == 0
        assert rep.worst_violation <= 0.0

    def test_bound_bug_detected(self):
        rep = check_main_theorem(200, seed=1, bound_slack=-0.05)
        assert rep.failures > 0
        assert rep.witness["violation"] > 0

    def test_reproducible(self):
        a = check_main_theorem(200, seed=6).to_dict()
        b = check_main_theorem(200, seed=6, threads=2).to_dict()
        assert a == b


class TestProposition:
    def test_no_violations(self):
        rep = check_proposition(400, seed=1)
        assert rep.failures == 0
        assert rep.worst_violation <= 1e-7


class TestBounds:
    def test_no_violations(self):
        rep = check_bounds_and_duality(300, seed=1)
        assert rep.failures == 0
        assert rep.witness["bound_grid_worst_excess"] <= 0.0

    def test_weaker_bound_values(self):
        # at thickness pi/3 the sharp bound is arccos(1/4), the coarse one
        # 2 arctan(sqrt2/ sqrt3)
        from sphconvex import right_hypotenuse
        sharp = right_hypotenuse(np.pi / 3, np.pi / 3)
        coarse = weaker_diameter_bound(np.pi / 3)
        assert sharp == pytest.approx(1.3181160716528177, abs=1e-12)
        assert coarse == pytest.approx(1.3694384060045657, abs=1e-12)
        assert sharp < coarse


class TestRandomConvexBody:
    def test_deterministic(self):
        a = random_convex_body(0.3, 12, seed=7)
        b = random_convex_body(0.3, 12, seed=7)
        assert np.array_equal(a.vertices, b.vertices)

    def test_cap_bounds_diameter(self):
        body = random_convex_body(0.3, 20, seed=8)
        assert diameter(body).value <= 0.6 + 1e-12

    def test_triangle_in_general_position(self):
        body = random_convex_body(0.4, 3, seed=9)
        assert len(body.vertices) == 3

    def test_validation(self):
        with pytest.raises(GeometryError):
            random_convex_body(2.0, 10, seed=0)
        with pytest.raises(GeometryError):
            random_convex_body(0.3, 2, seed=0)
