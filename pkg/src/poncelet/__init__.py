"""Numerical engine for parabola-inscribed Poncelet polygon families.

The canonical frame is the parabola y^2 + 4 f x = 0 (vertex at the
origin, focus at (-f, 0), directrix x = f) with a circular caustic of
radius r centered at the focus.  For each N >= 3 there is a unique
ratio r/f for which every point of the parabola starts a closed
N-gon whose sides are tangent to the caustic.  The package computes
those families, their polar polygons, triangle-center and centroid
loci, and verifies the invariants they satisfy.
"""

from .bicentric import (
    BicentricConfig,
    bicentric_closure_ratio,
    bicentric_orbit,
    closing_config,
    conserved_half_angle_sum,
    pedal_distance_sum,
    polar_image_family,
    polar_orbit,
)
from .centers import polygon_centroid, triangle_center
from .engine import (
    FamilyConfig,
    Orbit,
    generate_family,
    generate_orbit,
    make_family_config,
    solve_closure_radius,
)
from .errors import PonceletError
from .families import (
    closure_ratio,
    family_config,
    polar_conic,
    polar_quad,
    polar_triangle,
    quad_orbit,
    singular_params,
    triangle_orbit,
)
from .geom import Conic, ConicClass, Line, ProjPoint, classify_conic, conic_features
from .loci import CircleFitter, ConicFitter, LineFitter, trace_locus
from .verify import InvariantReport, SuiteReport, run_suite

__version__ = "1.0.0"

__all__ = [
    "BicentricConfig",
    "CircleFitter",
    "Conic",
    "ConicClass",
    "ConicFitter",
    "FamilyConfig",
    "InvariantReport",
    "Line",
    "LineFitter",
    "Orbit",
    "PonceletError",
    "ProjPoint",
    "SuiteReport",
    "bicentric_closure_ratio",
    "bicentric_orbit",
    "classify_conic",
    "closing_config",
    "closure_ratio",
    "conic_features",
    "conserved_half_angle_sum",
    "family_config",
    "generate_family",
    "generate_orbit",
    "make_family_config",
    "pedal_distance_sum",
    "polar_conic",
    "polar_image_family",
    "polar_orbit",
    "polar_quad",
    "polar_triangle",
    "polygon_centroid",
    "quad_orbit",
    "run_suite",
    "singular_params",
    "solve_closure_radius",
    "trace_locus",
    "triangle_center",
    "triangle_orbit",
]
