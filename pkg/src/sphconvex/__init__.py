"""Convexity on the unit sphere: lunes, width, thickness, diameter, reduced bodies."""

from .bodies import (
    ConvexBody,
    DiameterResult,
    Edge,
    ExtremeSet,
    contains,
    convex_hull,
    diameter,
    diameter_of_extreme,
    extreme_points,
    farthest_boundary_point,
    polygon_body,
)
from .harness import (
    VerificationReport,
    check_bounds_and_duality,
    check_diam_extreme,
    check_lemma_max,
    check_main_theorem,
    check_proposition,
    random_convex_body,
    run_suite,
    weaker_diameter_bound,
)
from .shapes import (
    BodySpec,
    ReducednessReport,
    disk,
    isosceles_triangle,
    quarter_disk,
    reducedness_check,
    regular_odd_gon,
    reuleaux_odd_gon,
)
from .sphere import (
    GEOM_TOL,
    Arc,
    GeometryError,
    Hemisphere,
    Lune,
    Semicircle,
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
from .width import (
    SupportSet,
    ThicknessResult,
    WidthResult,
    brute_thickness,
    is_constant_width,
    is_supporting,
    polar_dual,
    thickness,
    width_at,
)

__version__ = "0.1.0"
