"""Closed-form data for the N=3 and N=4 parabola-inscribed families.

Everything here is expressed in the canonical frame: parabola
y^2 + 4 f x = 0 with vertex at the origin, focus at (-f, 0), directrix
x = f.  The caustic is the circle of radius r = closure_ratio(N) * f
centered at the focus.  The engine (``poncelet.engine``) reproduces these
orbits numerically; the closed forms are faster and exact up to rounding.
"""

from __future__ import annotations

import math

import numpy as np

from .engine import make_family_config, solve_closure_radius
from .errors import SingularParameter, Unsupported
from .geom import Conic, ProjPoint

SQ2 = math.sqrt(2.0)
SQ5 = math.sqrt(5.0)

# x^6 + 12 x^5 - 28 x^4 + 32 x^3 + 112 x^2 - 64 x - 64, whose unique root
# in (0, 1) is the N=5 closure ratio r/f
N5_SEXTIC = (1.0, 12.0, -28.0, 32.0, 112.0, -64.0, -64.0)


def _n5_ratio() -> float:
    roots = np.roots(N5_SEXTIC)
    real = [r.real for r in roots if abs(r.imag) < 1e-12 and 0.0 < r.real < 1.0]
    if len(real) != 1:
        raise ArithmeticError("expected a unique sextic root in (0, 1)")
    return real[0]


def closure_ratio(N: int) -> float:
    """Caustic-to-focal ratio r/f closing the family in N steps.

    Closed forms for N=3,4, the sextic root for N=5; N=6 and beyond fall
    back to the numerical closure solve.
    """
    if N == 3:
        return 2.0 * (SQ2 - 1.0)
    if N == 4:
        return 2.0 * math.sqrt(SQ5 - 2.0)
    if N == 5:
        return _n5_ratio()
    if N >= 6:
        return solve_closure_radius(1.0, N)
    raise Unsupported(f"N must be at least 3, got {N}")


def singular_params(N: int, f: float = 1.0) -> list[float]:
    """Driving parameters y1 where the closed-form vertex parametrization
    degenerates (a vertex or polar vertex escapes to infinity)."""
    if N == 3:
        s = math.sqrt(12.0 - 8.0 * SQ2) * f
        return [-s, s]
    if N == 4:
        s = math.sqrt(4.0 * SQ5 - 8.0) * f
        # 16 f^4 - 16 f^2 y1^2 - y1^4 = 0 adds the polar-quad singularity
        u = math.sqrt(4.0 * SQ5 - 8.0) * f  # positive root of the quartic in y1^2
        return sorted({-s, 0.0, s, -u, u})
    raise Unsupported(f"no closed-form parametrization for N={N}")


def _on_parabola(f: float, y: float) -> ProjPoint:
    return ProjPoint.from_xy(-y * y / (4.0 * f), y)


def _check_not_singular(value: float, scale: float, what: str) -> None:
    if abs(value) <= 1e-12 * scale:
        raise SingularParameter(f"parametrization singular: {what} vanishes")


def triangle_orbit(f: float, y1: float) -> list[ProjPoint]:
    """Vertices of the 3-periodic orbit driven by the first vertex
    ordinate y1 (closed form)."""
    den = 8.0 * f * f * SQ2 - 12.0 * f * f + y1 * y1
    _check_not_singular(den, f * f, "triangle denominator")
    delta = math.sqrt(
        16.0 * (8.0 * SQ2 - 11.0) * f**4 + 8.0 * f * f * y1 * y1 + y1**4
    )
    y2 = 2.0 * (1.0 - SQ2) * (4.0 * f * y1 + delta) * f / den
    y3 = 2.0 * (1.0 - SQ2) * (4.0 * f * y1 - delta) * f / den
    return [_on_parabola(f, y) for y in (y1, y2, y3)]


def _tangent_meet(f: float, a: float, b: float) -> ProjPoint:
    # tangents to y^2 = -4 f x at ordinates a, b meet at (-ab/4f, (a+b)/2)
    return ProjPoint.from_xy(-a * b / (4.0 * f), 0.5 * (a + b))


def polar_triangle(f: float, y1: float) -> list[ProjPoint]:
    """Vertices of the polar triangle (tangent intersections) of the
    3-periodic orbit at y1 (closed form); they lie on the hyperbola
    ``polar_conic(3, f)``."""
    ys = [p.xy()[1] for p in triangle_orbit(f, y1)]
    return [_tangent_meet(f, ys[i], ys[(i + 1) % 3]) for i in range(3)]


def quad_orbit(f: float, y1: float) -> list[ProjPoint]:
    """Vertices of the 4-periodic orbit driven by y1 (closed form)."""
    _check_not_singular(y1, f, "y1")
    den = 4.0 * f * f * SQ5 - 8.0 * f * f - y1 * y1
    _check_not_singular(den, f * f, "quad denominator")
    d1 = math.sqrt(
        y1**4 + 8.0 * f * f * y1 * y1 + 16.0 * (9.0 - 4.0 * SQ5) * f**4
    )
    root = math.sqrt(SQ5 - 2.0)
    y2 = (2.0 * root * d1 + 4.0 * f * y1 * (3.0 - SQ5)) * f / den
    y3 = 4.0 * (2.0 - SQ5) * f * f / y1
    y4 = -(2.0 * root * d1 + 4.0 * f * y1 * (SQ5 - 3.0)) * f / den
    return [_on_parabola(f, y) for y in (y1, y2, y3, y4)]


def polar_quad(f: float, y1: float) -> list[ProjPoint]:
    """Vertices of the polar quadrilateral of the 4-periodic orbit at y1
    (closed form); they lie on the hyperbola ``polar_conic(4, f)``."""
    quart = 16.0 * f**4 - 16.0 * f * f * y1 * y1 - y1**4
    _check_not_singular(quart, f**4, "polar quad quartic denominator")
    ys = [p.xy()[1] for p in quad_orbit(f, y1)]
    return [_tangent_meet(f, ys[i], ys[(i + 1) % 4]) for i in range(4)]


def polar_conic(N: int, f: float) -> Conic:
    """Hyperbola inscribing the polar polygons of the N=3 or N=4 family."""
    if N == 3:
        # (sqrt2 + 3/2)(x - f)^2 - y^2/2 - 2 f^2 = 0
        a = SQ2 + 1.5
        return Conic(
            A=a,
            B=0.0,
            C=-0.5,
            D=-2.0 * a * f,
            E=0.0,
            F=a * f * f - 2.0 * f * f,
        )
    if N == 4:
        # (x - f)^2 / (4 (sqrt5 - 2) f^2) - y^2 / (4 f^2) = 1
        a2 = 4.0 * (SQ5 - 2.0) * f * f
        b2 = 4.0 * f * f
        return Conic(
            A=1.0 / a2,
            B=0.0,
            C=-1.0 / b2,
            D=-2.0 * f / a2,
            E=0.0,
            F=f * f / a2 - 1.0,
        )
    raise Unsupported(f"no closed-form polar conic for N={N}")


def family_config(N: int, f: float = 1.0):
    """Engine configuration of the closing family for the given N and f."""
    return make_family_config(N, f, closure_ratio(N) * f)
