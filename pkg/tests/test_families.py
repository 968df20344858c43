import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from poncelet.errors import SingularParameter, Unsupported
from poncelet.families import (
    closure_ratio,
    polar_conic,
    polar_quad,
    polar_triangle,
    quad_orbit,
    singular_params,
    triangle_orbit,
)
from poncelet.geom import Line, ParabolaStd

SQ2 = math.sqrt(2.0)
SQ5 = math.sqrt(5.0)


def _away_from_singular(y1, N):
    return all(abs(y1 - s) > 0.05 for s in singular_params(N))


def test_closure_ratio_closed_forms():
    assert closure_ratio(3) == pytest.approx(2.0 * (SQ2 - 1.0), abs=1e-15)
    assert closure_ratio(4) == pytest.approx(2.0 * math.sqrt(SQ5 - 2.0), abs=1e-15)
    assert closure_ratio(5) == pytest.approx(0.995219078669842, abs=1e-12)


def test_closure_ratio_rejects_small_n():
    with pytest.raises(Unsupported):
        closure_ratio(2)


def test_singular_parameter_raises():
    s = singular_params(3)[1]
    with pytest.raises(SingularParameter):
        triangle_orbit(1.0, s)
    with pytest.raises(SingularParameter):
        quad_orbit(1.0, 0.0)


@given(y1=st.floats(-6.0, 6.0), f=st.floats(0.5, 3.0))
@settings(max_examples=40, deadline=None)
def test_triangle_orbit_on_parabola_and_tangent(y1, f):
    assume(_away_from_singular(y1 / f, 3))
    par = ParabolaStd(f=f)
    verts = triangle_orbit(f, y1)
    caustic_r = closure_ratio(3) * f
    for v in verts:
        assert par.to_conic().contains(v, tol=1e-8)
    for i in range(3):
        side = Line.through(verts[i], verts[(i + 1) % 3])
        assert abs(side.distance_to(-f, 0.0)) == pytest.approx(
            caustic_r, rel=1e-8
        )


@given(y1=st.floats(-6.0, 6.0), f=st.floats(0.5, 3.0))
@settings(max_examples=40, deadline=None)
def test_quad_orbit_on_parabola_and_tangent(y1, f):
    assume(abs(y1) > 0.1 * f)
    assume(_away_from_singular(y1 / f, 4))
    par = ParabolaStd(f=f)
    verts = quad_orbit(f, y1)
    caustic_r = closure_ratio(4) * f
    for v in verts:
        assert par.to_conic().contains(v, tol=1e-8)
    for i in range(4):
        side = Line.through(verts[i], verts[(i + 1) % 4])
        assert abs(side.distance_to(-f, 0.0)) == pytest.approx(
            caustic_r, rel=1e-8
        )


@given(y1=st.floats(-6.0, 6.0))
@settings(max_examples=40, deadline=None)
def test_polar_triangle_on_its_conic(y1):
    assume(_away_from_singular(y1, 3))
    conic = polar_conic(3, 1.0)
    for p in polar_triangle(1.0, y1):
        x, y = p.xy()
        assert abs(conic(x, y)) < 1e-8


@given(y1=st.floats(-6.0, 6.0))
@settings(max_examples=40, deadline=None)
def test_polar_quad_on_its_conic(y1):
    assume(abs(y1) > 0.1)
    assume(_away_from_singular(y1, 4))
    conic = polar_conic(4, 1.0)
    for p in polar_quad(1.0, y1):
        x, y = p.xy()
        assert abs(conic(x, y)) < 1e-8


@given(y1=st.floats(0.2, 5.0))
@settings(max_examples=25, deadline=None)
def test_triangle_orbit_is_cyclically_consistent(y1):
    # restarting the closed form from the second vertex reproduces the
    # same vertex set
    assume(_away_from_singular(y1, 3))
    first = triangle_orbit(1.0, y1)
    y2 = first[1].xy()[1]
    assume(_away_from_singular(y2, 3))
    second = triangle_orbit(1.0, y2)
    got = sorted(round(p.xy()[1], 9) for p in second)
    want = sorted(round(p.xy()[1], 9) for p in first)
    assert got == pytest.approx(want, abs=1e-7)


def test_singular_params_bracket_the_gap():
    s3 = singular_params(3)
    assert s3 == pytest.approx(
        [-math.sqrt(12.0 - 8.0 * SQ2), math.sqrt(12.0 - 8.0 * SQ2)]
    )
    s4 = singular_params(4)
    assert 0.0 in s4
    assert max(s4) == pytest.approx(math.sqrt(4.0 * SQ5 - 8.0))
