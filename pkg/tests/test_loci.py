import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poncelet.errors import DegenerateFit, EmptyTrace, SingularParameter
from poncelet.loci import (
    CircleFitter,
    ConicFitter,
    LineFitter,
    incenter_quartic,
    incenter_strip_bounds,
    polar_perimeter_centroid_strip_bounds,
    refine_strip_bounds,
    spieker_strip_bounds,
    strip_width,
    trace_locus,
    validate_points,
)
from poncelet.geom import ConicClass

SQ2 = math.sqrt(2.0)


def test_validate_points_rejects_bad_input():
    with pytest.raises(DegenerateFit):
        validate_points([[1.0, 2.0, 3.0]])
    with pytest.raises(DegenerateFit):
        validate_points([[1.0, 2.0]], min_samples=2)
    with pytest.raises(DegenerateFit):
        validate_points([[1.0, math.nan], [0.0, 0.0]])


def test_trace_locus_records_gaps():
    def fn(t):
        if abs(t - 2.0) < 0.5:
            raise SingularParameter("boom")
        return (t, t * t)

    pts, gaps = trace_locus(fn, [0.0, 1.0, 2.0, 3.0])
    assert pts.shape == (3, 2)
    assert gaps == [2.0]


def test_trace_locus_empty_raises():
    def fn(t):
        raise SingularParameter("always")

    with pytest.raises(EmptyTrace):
        trace_locus(fn, [0.0, 1.0])


@given(
    a=st.floats(-2.0, 2.0),
    b=st.floats(0.5, 2.0),
    c=st.floats(-3.0, 3.0),
)
@settings(max_examples=30, deadline=None)
def test_line_fitter_recovers_synthetic_line(a, b, c):
    ts = np.linspace(-5.0, 5.0, 40)
    pts = np.column_stack([ts, -(a * ts + c) / b])
    fit = LineFitter().fit(pts)
    assert fit.result_.max_residual < 1e-9 * max(1.0, np.max(np.abs(pts)))


@given(
    cx=st.floats(-3.0, 3.0),
    cy=st.floats(-3.0, 3.0),
    r=st.floats(0.5, 4.0),
)
@settings(max_examples=30, deadline=None)
def test_circle_fitter_recovers_synthetic_circle(cx, cy, r):
    ts = np.linspace(0.0, 2.0 * math.pi, 50, endpoint=False)
    pts = np.column_stack([cx + r * np.cos(ts), cy + r * np.sin(ts)])
    fit = CircleFitter().fit(pts)
    assert fit.center_ == pytest.approx((cx, cy), abs=1e-9)
    assert fit.radius_ == pytest.approx(r, abs=1e-9)


def test_conic_fitter_classifies_parabola():
    ts = np.linspace(-4.0, 4.0, 60)
    pts = np.column_stack([-ts * ts / 4.0, ts])
    fit = ConicFitter().fit(pts)
    assert fit.conic_class_ is ConicClass.PARABOLA
    feats = fit.features()
    assert feats["focus"] == pytest.approx((-1.0, 0.0), abs=1e-9)
    assert feats["vertex"] == pytest.approx((0.0, 0.0), abs=1e-9)


def test_conic_fitter_classifies_ellipse():
    ts = np.linspace(0.0, 2.0 * math.pi, 60, endpoint=False)
    pts = np.column_stack([3.0 * np.cos(ts), 2.0 * np.sin(ts)])
    fit = ConicFitter().fit(pts)
    assert fit.conic_class_ is ConicClass.ELLIPSE


def test_fitter_get_set_params_roundtrip():
    fitter = LineFitter()
    assert fitter.get_params() == {}
    with pytest.raises(ValueError):
        fitter.set_params(bogus=1)


def test_implicit_curve_gradient_matches_numeric():
    curve = incenter_quartic(1.0)
    x, y = 0.68, 0.3
    eps = 1e-6
    gx, gy = curve.gradient(x, y)
    nx = (curve(x + eps, y) - curve(x - eps, y)) / (2.0 * eps)
    ny = (curve(x, y + eps) - curve(x, y - eps)) / (2.0 * eps)
    assert gx == pytest.approx(nx, rel=1e-5)
    assert gy == pytest.approx(ny, rel=1e-5)


def test_strip_bounds_orderings():
    lo, hi = incenter_strip_bounds(1.0)
    assert 0.0 < lo < hi
    assert hi - lo == pytest.approx(1.0 / 850.0, rel=0.1)
    lo, hi = spieker_strip_bounds(1.0)
    assert hi - lo == pytest.approx(1.0 / 1700.0, rel=0.1)
    lo, hi = polar_perimeter_centroid_strip_bounds(1.0)
    assert hi - lo == pytest.approx(1.0 / 25.0, rel=0.1)


def test_spieker_strip_closed_forms():
    lo, hi = spieker_strip_bounds(1.0)
    assert lo == pytest.approx((SQ2 - 1.0 + math.sqrt(10.0 - 7.0 * SQ2) / 2.0), abs=1e-15)
    assert hi == pytest.approx(SQ2 - 2.0 ** (-0.25), abs=1e-15)


def test_refine_strip_bounds_beats_grid_resolution():
    # x(t) = sin(t): coarse grid, refined max must approach 1 closely
    grid = np.linspace(0.0, math.pi, 15)
    lo, hi = refine_strip_bounds(lambda t: (math.sin(t), 0.0), grid)
    assert hi == pytest.approx(1.0, abs=1e-9)
    assert lo == pytest.approx(0.0, abs=1e-9)


def test_strip_width():
    pts = np.array([[0.0, 1.0], [0.4, -2.0], [0.1, 5.0]])
    assert strip_width(pts) == pytest.approx(0.4)
