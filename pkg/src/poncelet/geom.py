"""Projective plane primitives: points, lines, conics, pole/polar, tangency.

Everything is expressed in homogeneous coordinates so that points at
infinity are first class: several of the polygon families handled by this
package pass through configurations with a vertex on the line at infinity.
All functions are pure; values are immutable.

A conic is stored as the coefficient vector (A, B, C, D, E, F) of
``A x^2 + B xy + C y^2 + D x + E y + F = 0`` or, equivalently, as the
symmetric 3x3 matrix acting on homogeneous coordinates (x, y, w).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ContainedLine, DegenerateConic, NoFeatures

# Relative tolerance for geometric predicates; scale is taken from the
# max-abs input coefficient.  Callers may override per call.
GEOM_TOL = 1e-9


@dataclass(frozen=True)
class ProjPoint:
    """Homogeneous point (x : y : w); w == 0 encodes a point at infinity."""

    x: float
    y: float
    w: float = 1.0

    def __post_init__(self):
        if self.x == 0.0 and self.y == 0.0 and self.w == 0.0:
            raise ValueError("(0:0:0) is not a projective point")

    @staticmethod
    def from_xy(x: float, y: float) -> "ProjPoint":
        return ProjPoint(float(x), float(y), 1.0)

    @staticmethod
    def at_infinity(dx: float, dy: float) -> "ProjPoint":
        return ProjPoint(float(dx), float(dy), 0.0)

    def is_infinite(self, tol: float = GEOM_TOL) -> bool:
        return abs(self.w) <= tol * max(abs(self.x), abs(self.y))

    def xy(self) -> tuple[float, float]:
        if self.is_infinite():
            raise ZeroDivisionError("point at infinity has no affine part")
        return self.x / self.w, self.y / self.w

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.w], dtype=float)

    def normalized(self) -> "ProjPoint":
        s = max(abs(self.x), abs(self.y), abs(self.w))
        return ProjPoint(self.x / s, self.y / s, self.w / s)

    def isclose(self, other: "ProjPoint", tol: float = GEOM_TOL) -> bool:
        # proportionality test: cross product of coordinate triples
        a, b = self.as_array(), other.as_array()
        c = np.cross(a, b)
        return float(np.max(np.abs(c))) <= tol * float(
            np.max(np.abs(a)) * np.max(np.abs(b))
        )


@dataclass(frozen=True)
class Line:
    """Line a*x + b*y + c*w = 0 in homogeneous coordinates."""

    a: float
    b: float
    c: float

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c], dtype=float)

    @staticmethod
    def from_array(v) -> "Line":
        return Line(float(v[0]), float(v[1]), float(v[2]))

    @staticmethod
    def through(p: ProjPoint, q: ProjPoint) -> "Line":
        return Line.from_array(np.cross(p.as_array(), q.as_array()))

    def at_infinity(self, tol: float = GEOM_TOL) -> bool:
        return max(abs(self.a), abs(self.b)) <= tol * abs(self.c)

    def contains(self, p: ProjPoint, tol: float = GEOM_TOL) -> bool:
        v = self.as_array()
        u = p.as_array()
        scale = float(np.max(np.abs(v)) * np.max(np.abs(u)))
        return abs(float(v @ u)) <= tol * scale

    def meet(self, other: "Line") -> ProjPoint:
        v = np.cross(self.as_array(), other.as_array())
        return ProjPoint(float(v[0]), float(v[1]), float(v[2]))

    def distance_to(self, x: float, y: float) -> float:
        """Euclidean distance from a finite point to the line."""
        n = math.hypot(self.a, self.b)
        return abs(self.a * x + self.b * y + self.c) / n

    def isclose(self, other: "Line", tol: float = GEOM_TOL) -> bool:
        a, b = self.as_array(), other.as_array()
        c = np.cross(a, b)
        return float(np.max(np.abs(c))) <= tol * float(
            np.max(np.abs(a)) * np.max(np.abs(b))
        )


LINE_AT_INFINITY = Line(0.0, 0.0, 1.0)


class ConicClass(Enum):
    ELLIPSE = "ellipse"
    CIRCLE = "circle"
    PARABOLA = "parabola"
    HYPERBOLA = "hyperbola"
    LINE_PAIR = "line_pair"
    SINGLE_LINE = "single_line"
    POINT = "point"
    EMPTY = "empty"


@dataclass(frozen=True)
class Conic:
    """General conic A x^2 + B xy + C y^2 + D x + E y + F = 0."""

    A: float
    B: float
    C: float
    D: float
    E: float
    F: float

    def coeffs(self) -> tuple[float, ...]:
        return (self.A, self.B, self.C, self.D, self.E, self.F)

    def matrix(self) -> np.ndarray:
        A, B, C, D, E, F = self.coeffs()
        return np.array(
            [
                [A, B / 2.0, D / 2.0],
                [B / 2.0, C, E / 2.0],
                [D / 2.0, E / 2.0, F],
            ]
        )

    @staticmethod
    def from_matrix(m) -> "Conic":
        m = np.asarray(m, dtype=float)
        m = 0.5 * (m + m.T)
        return Conic(
            m[0, 0], 2.0 * m[0, 1], m[1, 1], 2.0 * m[0, 2], 2.0 * m[1, 2], m[2, 2]
        )

    def normalized(self) -> "Conic":
        s = max(abs(v) for v in self.coeffs())
        if s == 0.0:
            raise ValueError("zero conic")
        return Conic(*(v / s for v in self.coeffs()))

    def __call__(self, x: float, y: float) -> float:
        A, B, C, D, E, F = self.coeffs()
        return A * x * x + B * x * y + C * y * y + D * x + E * y + F

    def value_h(self, p: ProjPoint) -> float:
        v = p.as_array()
        return float(v @ self.matrix() @ v)

    def contains(self, p: ProjPoint, tol: float = GEOM_TOL) -> bool:
        m = self.matrix()
        v = p.as_array()
        scale = float(np.max(np.abs(m)) * np.max(np.abs(v)) ** 2)
        return abs(float(v @ m @ v)) <= tol * scale

    def rank(self, tol: float = GEOM_TOL) -> int:
        sv = np.linalg.svd(self.matrix(), compute_uv=False)
        return int(np.sum(sv > tol * sv[0]))

    def isclose(self, other: "Conic", tol: float = GEOM_TOL) -> bool:
        a = np.array(self.normalized().coeffs())
        b = np.array(other.normalized().coeffs())
        return bool(np.max(np.abs(a - b)) <= tol or np.max(np.abs(a + b)) <= tol)


@dataclass(frozen=True)
class CircleSpec:
    """Circle by center and radius; converts to a Conic with A=C, B=0."""

    center: ProjPoint
    radius: float

    def __post_init__(self):
        if self.radius <= 0.0:
            raise ValueError("radius must be positive")
        if self.center.is_infinite():
            raise ValueError("circle center must be finite")

    def to_conic(self) -> Conic:
        cx, cy = self.center.xy()
        return Conic(
            1.0, 0.0, 1.0, -2.0 * cx, -2.0 * cy, cx * cx + cy * cy - self.radius**2
        )


@dataclass(frozen=True)
class ParabolaStd:
    """Canonical parabola x = -y^2/(4 f): vertex (0,0), focus (-f,0),
    directrix x = f, opening toward negative x."""

    f: float

    def __post_init__(self):
        if self.f <= 0.0:
            raise ValueError("focal distance must be positive")

    def to_conic(self) -> Conic:
        # y^2 + 4 f x = 0
        return Conic(0.0, 0.0, 1.0, 4.0 * self.f, 0.0, 0.0)

    def focus(self) -> ProjPoint:
        return ProjPoint.from_xy(-self.f, 0.0)

    def vertex(self) -> ProjPoint:
        return ProjPoint.from_xy(0.0, 0.0)

    def directrix(self) -> Line:
        return Line(1.0, 0.0, -self.f)

    def point_at(self, y: float) -> ProjPoint:
        return ProjPoint.from_xy(-y * y / (4.0 * self.f), y)


def _require_nondegenerate(c: Conic, tol: float) -> np.ndarray:
    m = c.matrix()
    sv = np.linalg.svd(m, compute_uv=False)
    if sv[2] <= tol * sv[0]:
        raise DegenerateConic("conic matrix has rank < 3")
    return m


def polar_line(c: Conic, p: ProjPoint, tol: float = GEOM_TOL) -> Line:
    """Polar of p with respect to c (the tangent at p when p lies on c)."""
    m = _require_nondegenerate(c, tol)
    return Line.from_array(m @ p.as_array())


def pole_point(c: Conic, l: Line, tol: float = GEOM_TOL) -> ProjPoint:
    """Pole of l with respect to c; inverse of :func:`polar_line`."""
    m = _require_nondegenerate(c, tol)
    v = np.linalg.solve(m, l.as_array())
    return ProjPoint(float(v[0]), float(v[1]), float(v[2]))


def tangent_lines_from(
    c: Conic, p: ProjPoint, tol: float = GEOM_TOL
) -> list[Line]:
    """Tangent lines from p to c: two for an exterior point, one when p is
    on c, none when p is strictly inside an ellipse/circle."""
    m = _require_nondegenerate(c, tol)
    adj = np.linalg.inv(m) * np.linalg.det(m)  # dual conic (adjugate)
    # Lines through p form a pencil l = s*l1 + t*l2; pick two independent
    # lines through p and restrict the dual quadratic to the pencil.
    u = p.as_array()
    basis = np.eye(3)
    # two rows of [u]_x (cross-product matrix) span lines through p
    cand = np.array(
        [np.cross(u, basis[0]), np.cross(u, basis[1]), np.cross(u, basis[2])]
    )
    norms = np.linalg.norm(cand, axis=1)
    i1, i2 = np.argsort(norms)[::-1][:2]
    l1, l2 = cand[i1], cand[i2]
    q11 = float(l1 @ adj @ l1)
    q12 = float(l1 @ adj @ l2)
    q22 = float(l2 @ adj @ l2)
    scale = max(abs(q11), abs(q12), abs(q22))
    if scale == 0.0:
        return []
    disc = q12 * q12 - q11 * q22
    if abs(disc) <= tol * scale * scale:
        # p on the conic: single tangent, the polar of p
        return [polar_line(c, p, tol)]
    if disc < 0.0:
        return []
    root = math.sqrt(disc)
    lines = []
    # restricted quadratic q11 s^2 + 2 q12 s t + q22 t^2 = 0
    if abs(q11) >= abs(q22):
        for sgn in (+1.0, -1.0):
            s = (-q12 + sgn * root) / q11
            lines.append(Line.from_array(s * l1 + l2))
    else:
        for sgn in (+1.0, -1.0):
            t = (-q12 + sgn * root) / q22
            lines.append(Line.from_array(l1 + t * l2))
    return lines


def intersect_line_conic(
    c: Conic, l: Line, tol: float = GEOM_TOL
) -> list[tuple[ProjPoint, int]]:
    """Intersections of a line with a conic as (point, multiplicity) pairs.

    A tangency is returned once with multiplicity 2.
    """
    m = c.matrix()
    v = l.as_array()
    # two points spanning the line: columns of [l]_x with largest norm
    basis = np.eye(3)
    cand = np.array(
        [np.cross(v, basis[0]), np.cross(v, basis[1]), np.cross(v, basis[2])]
    )
    norms = np.linalg.norm(cand, axis=1)
    i1, i2 = np.argsort(norms)[::-1][:2]
    p1, p2 = cand[i1], cand[i2]
    a = float(p1 @ m @ p1)
    b = float(p1 @ m @ p2)
    d = float(p2 @ m @ p2)
    scale = max(abs(a), abs(b), abs(d))
    if scale == 0.0:
        raise ContainedLine("line lies on the (degenerate) conic")
    # restricted quadratic a s^2 + 2 b s t + d t^2 = 0 along p = s*p1 + t*p2
    disc = b * b - a * d
    if abs(disc) <= tol * scale * scale:
        if abs(a) >= abs(d):
            pt = -b / a * p1 + p2
        else:
            pt = p1 - b / d * p2
        return [(ProjPoint(*pt), 2)]
    if disc < 0.0:
        return []
    root = math.sqrt(disc)
    out = []
    if abs(a) >= abs(d):
        for sgn in (+1.0, -1.0):
            s = (-b + sgn * root) / a
            pt = s * p1 + p2
            out.append((ProjPoint(*pt), 1))
    else:
        for sgn in (+1.0, -1.0):
            t = (-b + sgn * root) / d
            pt = p1 + t * p2
            out.append((ProjPoint(*pt), 1))
    return out


def classify_conic(c: Conic, tol: float = GEOM_TOL) -> ConicClass:
    """Classify by the discriminant B^2 - 4AC and the rank of the matrix."""
    c = c.normalized()
    A, B, C, D, E, F = c.coeffs()
    delta = B * B - 4.0 * A * C
    # coefficients are normalized to unit max-abs, so scale^2 == 1
    parabolic = abs(delta) <= tol
    r = c.rank(tol)
    if r == 3:
        if parabolic:
            return ConicClass.PARABOLA
        if delta > 0.0:
            return ConicClass.HYPERBOLA
        # ellipse: real iff det(M) has sign opposite to A+C
        det = float(np.linalg.det(c.matrix()))
        if det * (A + C) > 0.0:
            return ConicClass.EMPTY
        if abs(A - C) <= tol and abs(B) <= tol:
            return ConicClass.CIRCLE
        return ConicClass.ELLIPSE
    if r == 2:
        if parabolic:
            # parallel line pair (real or imaginary): real iff the conic
            # takes both signs; test via the reduced 1d quadratic
            return ConicClass.LINE_PAIR
        if delta > 0.0:
            return ConicClass.LINE_PAIR
        return ConicClass.POINT
    return ConicClass.SINGLE_LINE


def conic_features(c: Conic, tol: float = GEOM_TOL) -> dict:
    """Metric features of a nondegenerate conic.

    Returns a dict with a ``class`` entry and, depending on the class:
    parabola -> focus, vertex, axis (unit direction of opening), directrix,
    focal_distance; ellipse/hyperbola -> center, foci, vertices, axes
    (semi-axis lengths); circle -> center, radius.
    """
    cls = classify_conic(c, tol)
    if cls in (
        ConicClass.LINE_PAIR,
        ConicClass.SINGLE_LINE,
        ConicClass.POINT,
        ConicClass.EMPTY,
    ):
        raise NoFeatures(f"no metric features for class {cls.value}")
    c = c.normalized()
    A, B, C, D, E, F = c.coeffs()
    m22 = np.array([[A, B / 2.0], [B / 2.0, C]])
    if cls is ConicClass.CIRCLE:
        cx, cy = np.linalg.solve(m22, [-D / 2.0, -E / 2.0])
        r2 = cx * cx + cy * cy - F / A
        return {
            "class": cls,
            "center": (float(cx), float(cy)),
            "radius": math.sqrt(max(r2, 0.0)) / 1.0,
        }
    if cls is ConicClass.PARABOLA:
        evals, evecs = np.linalg.eigh(m22)
        i0 = int(np.argmin(np.abs(evals)))  # (near-)zero eigenvalue: axis
        u = evecs[:, i0]  # axis direction
        v = evecs[:, 1 - i0]
        lam = float(evals[1 - i0])
        # rotated frame: lam*yy^2 + d*xx + e*yy + F = 0
        d = float(np.array([D, E]) @ u)
        e = float(np.array([D, E]) @ v)
        if d == 0.0:
            raise NoFeatures("degenerate parabola")
        yy0 = -e / (2.0 * lam)
        xx0 = -(F + lam * yy0 * yy0) / d
        vertex = xx0 * u + yy0 * v
        # lam*(yy-yy0)^2 = -d*(xx-xx0): semi-latus rectum 4p = |d/lam|
        p = abs(d / lam) / 4.0
        opening = -math.copysign(1.0, d / lam)
        axis = opening * u
        focus = vertex + p * axis
        dirpt = vertex - p * axis
        directrix = Line(
            float(axis[0]), float(axis[1]), -float(axis @ dirpt)
        )
        return {
            "class": cls,
            "vertex": (float(vertex[0]), float(vertex[1])),
            "focus": (float(focus[0]), float(focus[1])),
            "axis": (float(axis[0]), float(axis[1])),
            "directrix": directrix,
            "focal_distance": p,
        }
    # central conics
    cx, cy = np.linalg.solve(m22, [-D / 2.0, -E / 2.0])
    # conic in centered frame: x' M22 x' + F' = 0
    Fc = c(float(cx), float(cy))
    evals, evecs = np.linalg.eigh(m22)
    # semi-axis along eigenvector i: x'^2 * evals[i] = -Fc
    axes = {}
    semis = []
    for i in range(2):
        q = -Fc / evals[i]
        semis.append(math.sqrt(q) if q > 0 else -math.sqrt(-q))
    if cls is ConicClass.ELLIPSE:
        imaj = int(np.argmax(semis))
        a_len, b_len = semis[imaj], semis[1 - imaj]
        major = evecs[:, imaj]
        cfoc = math.sqrt(max(a_len * a_len - b_len * b_len, 0.0))
    else:  # hyperbola: transverse axis where semi^2 > 0
        imaj = int(np.argmax([s > 0 for s in semis]))
        a_len = semis[imaj]
        b_len = abs(semis[1 - imaj])
        major = evecs[:, imaj]
        cfoc = math.sqrt(a_len * a_len + b_len * b_len)
    center = np.array([cx, cy], dtype=float)
    f1 = center + cfoc * major
    f2 = center - cfoc * major
    v1 = center + a_len * major
    v2 = center - a_len * major
    return {
        "class": cls,
        "center": (float(cx), float(cy)),
        "foci": ((float(f1[0]), float(f1[1])), (float(f2[0]), float(f2[1]))),
        "vertices": ((float(v1[0]), float(v1[1])), (float(v2[0]), float(v2[1]))),
        "semi_axes": (float(a_len), float(b_len)),
        "axis": (float(major[0]), float(major[1])),
    }


def polar_image_conic(of: Conic, wrt: Conic, tol: float = GEOM_TOL) -> Conic:
    """Conic traced by the poles (w.r.t. ``wrt``) of the tangents of ``of``.

    Equivalently the polar dual of ``of`` under the polarity of ``wrt``:
    matrix M_wrt^T * adj(M_of) * M_wrt.
    """
    m_of = _require_nondegenerate(of, tol)
    m_wrt = _require_nondegenerate(wrt, tol)
    adj = np.linalg.inv(m_of) * np.linalg.det(m_of)
    m = m_wrt.T @ adj @ m_wrt
    return Conic.from_matrix(m / np.max(np.abs(m)))
