"""Triangle centers and polygon centroids in cartesian coordinates.

Centers are indexed by their Kimberling numbers and evaluated through
homogeneous barycentric weight functions w(a, b, c) of the side lengths,
so every center is invariant under similarity transformations of the
triangle.  X26 (circumcenter of the tangential triangle) is built
constructively; X161 is built as the X68-Ceva conjugate of X6.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DegeneratePolygon,
    DegenerateTriangle,
    UnboundedInput,
    Unsupported,
)
from .geom import CircleSpec, Line, ProjPoint, pole_point


def _as_xy(p) -> np.ndarray:
    if isinstance(p, ProjPoint):
        if p.is_infinite():
            raise UnboundedInput("triangle vertex at infinity")
        return np.array(p.xy())
    return np.asarray(p, dtype=float)


def side_lengths(vertices) -> tuple[float, float, float]:
    """Side lengths (a, b, c) opposite to vertices (A, B, C)."""
    A, B, C = (_as_xy(v) for v in vertices)
    a = float(np.linalg.norm(B - C))
    b = float(np.linalg.norm(C - A))
    c = float(np.linalg.norm(A - B))
    if min(a, b, c) <= 1e-14 * max(a, b, c):
        raise DegenerateTriangle("a side length is (near) zero")
    return a, b, c


def _cos_a(a: float, b: float, c: float) -> float:
    return (b * b + c * c - a * a) / (2.0 * b * c)


def _cos_2a(a: float, b: float, c: float) -> float:
    ca = _cos_a(a, b, c)
    return 2.0 * ca * ca - 1.0


def _w68(a: float, b: float, c: float) -> float:
    # trilinear cos A / cos 2A
    return a * _cos_a(a, b, c) / _cos_2a(a, b, c)


def _w161(a: float, b: float, c: float) -> float:
    # X68-Ceva conjugate of X6: a^2 (-a^2/p_a + b^2/p_b + c^2/p_c) with
    # p the barycentric weights of X68
    ta = a * _cos_2a(a, b, c) / _cos_a(a, b, c)
    tb = b * _cos_2a(b, c, a) / _cos_a(b, c, a)
    tc = c * _cos_2a(c, a, b) / _cos_a(c, a, b)
    return a * a * (-ta + tb + tc)


CENTER_WEIGHTS = {
    1: lambda a, b, c: a,
    2: lambda a, b, c: 1.0,
    3: lambda a, b, c: a * a * (b * b + c * c - a * a),
    4: lambda a, b, c: (a * a + b * b - c * c) * (a * a - b * b + c * c),
    5: lambda a, b, c: a * a * (b * b + c * c) - (b * b - c * c) ** 2,
    6: lambda a, b, c: a * a,
    10: lambda a, b, c: b + c,
    20: lambda a, b, c: 3.0 * a**4
    - 2.0 * a * a * (b * b + c * c)
    - (b * b - c * c) ** 2,
    68: _w68,
    99: lambda a, b, c: 1.0 / (b * b - c * c),
    110: lambda a, b, c: a * a / (b * b - c * c),
    161: _w161,
}

SUPPORTED_CENTERS = tuple(sorted(CENTER_WEIGHTS)) + (26,)


def barycentric_point(vertices, weights) -> np.ndarray:
    """Cartesian point with the given (non-normalized) barycentric
    weights with respect to the triangle."""
    A, B, C = (_as_xy(v) for v in vertices)
    wa, wb, wc = weights
    s = wa + wb + wc
    if abs(s) <= 1e-300:
        raise DegenerateTriangle("barycentric weights sum to zero")
    return (wa * A + wb * B + wc * C) / s


def evaluate_weight(w, vertices) -> tuple[float, float, float]:
    a, b, c = side_lengths(vertices)
    return (w(a, b, c), w(b, c, a), w(c, a, b))


def circumcenter(vertices) -> np.ndarray:
    return barycentric_point(
        vertices, evaluate_weight(CENTER_WEIGHTS[3], vertices)
    )


def circumcircle(vertices) -> CircleSpec:
    O = circumcenter(vertices)
    R = float(np.linalg.norm(_as_xy(vertices[0]) - O))
    return CircleSpec(ProjPoint.from_xy(float(O[0]), float(O[1])), R)


def tangential_triangle(vertices) -> list[ProjPoint]:
    """Triangle bounded by the tangents to the circumcircle at the
    vertices: its corners are the poles of the sides."""
    circ = circumcircle(vertices).to_conic()
    pts = [ProjPoint.from_xy(*_as_xy(v)) for v in vertices]
    lines = [Line.through(pts[i], pts[(i + 1) % 3]) for i in range(3)]
    return [pole_point(circ, l).normalized() for l in lines]


def triangle_center(vertices, k: int) -> np.ndarray:
    """Cartesian coordinates of center X_k of the triangle."""
    if len(vertices) != 3:
        raise DegenerateTriangle("triangle centers need exactly 3 vertices")
    if k == 26:
        return circumcenter(tangential_triangle(vertices))
    if k not in CENTER_WEIGHTS:
        raise Unsupported(f"center X{k} is not in the supported table")
    return barycentric_point(
        vertices, evaluate_weight(CENTER_WEIGHTS[k], vertices)
    )


def vertex_centroid(vertices) -> np.ndarray:
    """C0: plain average of the vertices."""
    pts = [_as_xy(v) for v in vertices]
    return np.mean(pts, axis=0)


def perimeter_centroid(vertices) -> np.ndarray:
    """C1: centroid of the boundary, each side weighted by its length."""
    pts = [_as_xy(v) for v in vertices]
    n = len(pts)
    total = 0.0
    acc = np.zeros(2)
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        ell = float(np.linalg.norm(q - p))
        acc += ell * 0.5 * (p + q)
        total += ell
    if total <= 0.0:
        raise DegeneratePolygon("polygon has zero perimeter")
    return acc / total


def area_centroid(vertices) -> np.ndarray:
    """C2: centroid of the enclosed lamina (signed-area weighted)."""
    pts = [_as_xy(v) for v in vertices]
    n = len(pts)
    area2 = 0.0
    acc = np.zeros(2)
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        cross = p[0] * q[1] - q[0] * p[1]
        area2 += cross
        acc += cross * (p + q)
    if abs(area2) <= 1e-300:
        raise DegeneratePolygon("polygon has zero signed area")
    return acc / (3.0 * area2)


CENTROIDS = {0: vertex_centroid, 1: perimeter_centroid, 2: area_centroid}


def polygon_centroid(vertices, kind: int) -> np.ndarray:
    """Centroid C_kind of the polygon: 0 vertex, 1 perimeter, 2 area."""
    if kind not in CENTROIDS:
        raise Unsupported(f"centroid kind must be 0, 1 or 2, got {kind}")
    if any(isinstance(v, ProjPoint) and v.is_infinite() for v in vertices):
        raise UnboundedInput("centroid of an unbounded polygon")
    return CENTROIDS[kind](vertices)
