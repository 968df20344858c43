"""Bicentric N-gon families (two nested circles) and their polar images.

Coordinate convention: circumcenter O at the origin, incircle center O' at
(d, 0) on the positive x-axis.  The closure conditions for N = 3..6 under
the constraint d = r_b are solved from the geometric relations; the polar
image of the incircle with respect to the circumcircle is then an ellipse,
parabola, or hyperbola according to d <| r_b, and a parabola of focal
distance R_b^2 / (2 r_b) exactly at d = r_b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .engine import closure_defect, iterate_transverse
from .errors import ClosureViolation, UnboundedPolygon, Unsupported
from .geom import (
    CircleSpec,
    Conic,
    ConicClass,
    Line,
    ProjPoint,
    classify_conic,
    conic_features,
    polar_image_conic,
    pole_point,
)


@dataclass(frozen=True)
class BicentricConfig:
    """Two nested circles and the polygon count: circumcircle (O, R_b),
    incircle (O', r_b), center offset d = |O - O'|."""

    R_b: float
    r_b: float
    d: float
    N: int

    def __post_init__(self):
        if self.R_b <= 0 or self.r_b <= 0 or self.d < 0:
            raise ValueError("radii must be positive and d nonnegative")
        if self.d + self.r_b >= self.R_b:
            raise ValueError("incircle must be nested inside the circumcircle")
        if self.N < 3:
            raise ValueError("N must be at least 3")

    def circumcircle(self) -> CircleSpec:
        return CircleSpec(ProjPoint.from_xy(0.0, 0.0), self.R_b)

    def incircle(self) -> CircleSpec:
        return CircleSpec(ProjPoint.from_xy(self.d, 0.0), self.r_b)


def _d_equals_r_relation(N: int, r: float) -> float:
    """Residual of the closure relation for R = 1 and d = r."""
    R, d = 1.0, r
    if N == 3:
        return d * d - R * (R - 2.0 * r)
    if N == 4:
        return 1.0 / (R - d) ** 2 + 1.0 / (R + d) ** 2 - 1.0 / r**2
    if N == 5:
        if R - d - r < 0:
            return -1.0
        return (R + d) * (
            math.sqrt(2.0 * R * (R - d - r))
            + math.sqrt((R - d - r) * (R + d - r))
        ) - r * (R - d)
    if N == 6:
        return (
            3.0 * (R * R - d * d) ** 4
            - 4.0 * r * r * (R * R + d * d) * (R * R - d * d) ** 2
            - (4.0 * r * r * d * R) ** 2
        )
    raise Unsupported(f"no d=r closure relation for N={N}")


def bicentric_closure_ratio(N: int) -> float:
    """r_b / R_b closing the bicentric N-gon family under d = r_b.

    Closed forms for N=3,4; bracketed bisection on the geometric relation
    for N=5,6 (the relations are monotone on [0.4, 0.5]).
    """
    if N == 3:
        return math.sqrt(2.0) - 1.0
    if N == 4:
        return math.sqrt(math.sqrt(5.0) - 2.0)
    if N not in (5, 6):
        raise Unsupported(f"unsupported N={N}")
    lo, hi = 0.4, 0.5
    flo = _d_equals_r_relation(N, lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fm = _d_equals_r_relation(N, mid)
        if fm == 0.0:
            return mid
        if math.copysign(1.0, fm) == math.copysign(1.0, flo):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def euler_n3_inradius(R_b: float, d_over_r: float) -> float:
    """Inradius r_b with d = d_over_r * r_b satisfying Euler's triangle
    relation d^2 = R(R - 2 r), i.e. an N=3 closing bicentric config."""
    k = d_over_r
    # k^2 r^2 + 2 R r - R^2 = 0
    return R_b * (-1.0 + math.sqrt(1.0 + k * k)) / (k * k)


def fuss_n4_inradius(R_b: float, d_over_r: float) -> float:
    """Inradius r_b with d = d_over_r * r_b satisfying Fuss' relation
    1/(R-d)^2 + 1/(R+d)^2 = 1/r^2 (an N=4 closing bicentric config)."""
    k = d_over_r
    lo, hi = 1e-9 * R_b, R_b / (1.0 + k) - 1e-12 * R_b

    def rel(r: float) -> float:
        d = k * r
        return 1.0 / (R_b - d) ** 2 + 1.0 / (R_b + d) ** 2 - 1.0 / r**2

    flo = rel(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fm = rel(mid)
        if math.copysign(1.0, fm) == math.copysign(1.0, flo):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def closing_config(N: int, R_b: float = 1.0, d_over_r: float = 1.0) -> BicentricConfig:
    """A closing bicentric config with prescribed d/r_b ratio.

    Arbitrary d/r_b is supported for N=3 (Euler) and N=4 (Fuss); for
    N=5,6 only the d = r_b case has a known relation here.
    """
    if N == 3:
        r = euler_n3_inradius(R_b, d_over_r)
    elif N == 4:
        r = fuss_n4_inradius(R_b, d_over_r)
    elif N in (5, 6) and d_over_r == 1.0:
        r = bicentric_closure_ratio(N) * R_b
    else:
        raise Unsupported(f"no closure relation for N={N}, d/r={d_over_r}")
    return BicentricConfig(R_b=R_b, r_b=r, d=d_over_r * r, N=N)


def bicentric_orbit(
    cfg: BicentricConfig, t: float, closure_tol: float = 1e-9
) -> list[ProjPoint]:
    """Closed N-gon of the family: vertices on the circumcircle starting at
    angle t, sides tangent to the incircle."""
    outer = cfg.circumcircle().to_conic()
    start = ProjPoint.from_xy(cfg.R_b * math.cos(t), cfg.R_b * math.sin(t))
    defect = closure_defect(outer, cfg.incircle(), start, cfg.N)
    if abs(defect) > closure_tol:
        raise ClosureViolation(
            f"bicentric config does not close for N={cfg.N} (defect {defect:.3g})"
        )
    states = iterate_transverse(outer, cfg.incircle(), start, cfg.N)
    return [start] + [s.current for s in states[:-1]]


def side_lines(polygon: list[ProjPoint]) -> list[Line]:
    n = len(polygon)
    return [Line.through(polygon[i], polygon[(i + 1) % n]) for i in range(n)]


def pedal_distance_sum(
    cfg: BicentricConfig, t: float, signed: bool = False
) -> float:
    """Sum of perpendicular distances from the circumcenter O to the N
    side-lines of the orbit at parameter t.

    With ``signed=True`` each distance carries the sign of the side of the
    line on which the incircle center lies (negative when O and O' are on
    opposite sides); the signed sum is the conserved quantity even when O
    leaves the polygon interior (possible for d > r_b).  For d <= r_b the
    two versions agree.
    """
    poly = bicentric_orbit(cfg, t)
    total = 0.0
    for line in side_lines(poly):
        norm = math.hypot(line.a, line.b)
        v0 = (line.a * 0.0 + line.b * 0.0 + line.c) / norm
        vin = (line.a * cfg.d + line.c) / norm
        term = abs(v0)
        if signed and v0 * vin < 0:
            term = -term
        total += term
    return total


def polar_image_family(cfg: BicentricConfig) -> dict:
    """Outer conic and caustic of the polar family of a bicentric family.

    The polar image of the incircle with respect to the circumcircle is the
    conic inscribing the polar polygons; the circumcircle itself becomes
    the caustic.  At d = r_b the conic is a parabola with focal distance
    R_b^2 / (2 r_b) and focus at O.
    """
    outer = polar_image_conic(cfg.incircle().to_conic(), cfg.circumcircle().to_conic())
    return {"outer": outer, "caustic": cfg.circumcircle()}


def polar_orbit(cfg: BicentricConfig, t: float) -> list[ProjPoint]:
    """Vertices of the polar polygon of the bicentric orbit at t: poles of
    the polygon's sides with respect to the circumcircle."""
    poly = bicentric_orbit(cfg, t)
    circ = cfg.circumcircle().to_conic()
    return [pole_point(circ, l).normalized() for l in side_lines(poly)]


def vertex_angles(polygon: list[ProjPoint]) -> list[float]:
    """Unsigned interior angle at each vertex of the polygon."""
    n = len(polygon)
    if any(p.is_infinite() for p in polygon):
        raise UnboundedPolygon("vertex at infinity has no interior angle")
    pts = [p.xy() for p in polygon]
    angles = []
    for i in range(n):
        px, py = pts[(i - 1) % n]
        cx, cy = pts[i]
        nx, ny = pts[(i + 1) % n]
        ax, ay = px - cx, py - cy
        bx, by = nx - cx, ny - cy
        angles.append(abs(math.atan2(ax * by - ay * bx, ax * bx + ay * by)))
    return angles


def conserved_half_angle_sum(polygon: list[ProjPoint], outer: Conic) -> float:
    """Sum of half-angle sines over the polygon's vertices, the quantity
    conserved along a polar family inscribed in ``outer``.

    When ``outer`` is a hyperbola one vertex may sit on the branch away
    from the origin (the pole of the construction); that vertex then
    contributes -sin(theta/2) and its two neighbors cos(theta/2), which is
    the analytic continuation of the plain sum across the branch change.
    Equals (1/R) * sum of signed pedal distances of the pre-image family.
    """
    angles = vertex_angles(polygon)
    n = len(polygon)
    distal: set[int] = set()
    if classify_conic(outer) is ConicClass.HYPERBOLA:
        feats = conic_features(outer)
        cx, cy = feats["center"]
        ax, ay = feats["axis"]
        origin_side = math.copysign(1.0, -cx * ax - cy * ay)
        for i, p in enumerate(polygon):
            x, y = p.xy()
            side = math.copysign(1.0, (x - cx) * ax + (y - cy) * ay)
            if side != origin_side:
                distal.add(i)
    total = 0.0
    for i in range(n):
        if i in distal:
            total -= math.sin(angles[i] / 2.0)
        elif (i - 1) % n in distal or (i + 1) % n in distal:
            total += math.cos(angles[i] / 2.0)
        else:
            total += math.sin(angles[i] / 2.0)
    return total
