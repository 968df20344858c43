"""Locus tracing and curve fitting for center loci.

Fitters follow the estimator convention: construct with hyperparameters,
call ``fit(points)``, read fitted attributes with a trailing underscore,
query hyperparameters with ``get_params()``.  Points are (n, 2) arrays of
finite cartesian coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DegenerateFit, EmptyTrace, PonceletError
from .geom import Conic, classify_conic, conic_features

SQ2 = math.sqrt(2.0)
SQ5 = math.sqrt(5.0)


def validate_points(points, min_samples: int = 2) -> np.ndarray:
    """Coerce to a finite (n, 2) float array or raise DegenerateFit."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise DegenerateFit(f"expected an (n, 2) array, got shape {pts.shape}")
    if pts.shape[0] < min_samples:
        raise DegenerateFit(
            f"need at least {min_samples} points, got {pts.shape[0]}"
        )
    if not np.all(np.isfinite(pts)):
        raise DegenerateFit("points contain NaN or infinity")
    return pts


def trace_locus(point_fn, params) -> tuple[np.ndarray, list[float]]:
    """Sample ``point_fn(t)`` over the parameter grid.

    Parameters where the callable raises a package error (singular
    parameter, unbounded polygon, ...) are recorded as gaps and skipped.
    """
    pts: list[tuple[float, float]] = []
    gaps: list[float] = []
    for t in params:
        try:
            p = point_fn(t)
        except (PonceletError, ZeroDivisionError):
            gaps.append(float(t))
            continue
        pts.append((float(p[0]), float(p[1])))
    if not pts:
        raise EmptyTrace("no parameter in the grid produced a point")
    return np.array(pts), gaps


@dataclass
class FitResult:
    """Summary of a locus fit: model kind, parameters, residual extremes."""

    kind: str
    params: dict
    max_residual: float
    rms_residual: float
    n_points: int


class _BaseFitter:
    """Minimal estimator base: hyperparameters via get_params/set_params."""

    _param_names: tuple[str, ...] = ()

    def get_params(self) -> dict:
        return {name: getattr(self, name) for name in self._param_names}

    def set_params(self, **kwargs):
        for key, value in kwargs.items():
            if key not in self._param_names:
                raise ValueError(f"unknown parameter {key!r}")
            setattr(self, key, value)
        return self

    def _finish(self, kind: str, params: dict, res: np.ndarray) -> FitResult:
        self.result_ = FitResult(
            kind=kind,
            params=params,
            max_residual=float(np.max(np.abs(res))),
            rms_residual=float(np.sqrt(np.mean(res * res))),
            n_points=len(res),
        )
        return self.result_


class LineFitter(_BaseFitter):
    """Total-least-squares line fit; residuals are point-line distances."""

    def fit(self, points):
        pts = validate_points(points, 2)
        centroid = pts.mean(axis=0)
        centered = pts - centroid
        _, s, vt = np.linalg.svd(centered, full_matrices=False)
        if s[0] <= 1e-300:
            raise DegenerateFit("all points coincide")
        normal = vt[-1]
        a, b = float(normal[0]), float(normal[1])
        c = -float(normal @ centroid)
        res = pts @ np.array([a, b]) + c
        self.normal_ = (a, b)
        self.offset_ = c
        self._finish("line", {"a": a, "b": b, "c": c}, res)
        return self

    def residuals(self, points) -> np.ndarray:
        pts = validate_points(points, 1)
        a, b = self.normal_
        return pts @ np.array([a, b]) + self.offset_


class CircleFitter(_BaseFitter):
    """Algebraic circle fit; residuals are |distance to center - radius|."""

    def fit(self, points):
        pts = validate_points(points, 3)
        x, y = pts[:, 0], pts[:, 1]
        A = np.column_stack([x, y, np.ones_like(x)])
        rhs = x * x + y * y
        sol, *_ = np.linalg.lstsq(A, rhs, rcond=None)
        cx, cy = 0.5 * sol[0], 0.5 * sol[1]
        r2 = sol[2] + cx * cx + cy * cy
        if r2 <= 0.0:
            raise DegenerateFit("circle fit produced nonpositive radius")
        self.center_ = (float(cx), float(cy))
        self.radius_ = float(math.sqrt(r2))
        res = self.residuals(pts)
        self._finish(
            "circle",
            {"cx": self.center_[0], "cy": self.center_[1], "r": self.radius_},
            res,
        )
        return self

    def residuals(self, points) -> np.ndarray:
        pts = validate_points(points, 1)
        d = np.hypot(pts[:, 0] - self.center_[0], pts[:, 1] - self.center_[1])
        return d - self.radius_


class ConicFitter(_BaseFitter):
    """General conic fit A x^2 + B xy + C y^2 + D x + E y + F = 0 by SVD.

    Residuals are Sampson distances (value over gradient norm), which are
    comparable to geometric point-curve distances for near-fits.
    """

    def fit(self, points):
        pts = validate_points(points, 5)
        x, y = pts[:, 0], pts[:, 1]
        scale = max(float(np.max(np.abs(pts))), 1e-12)
        xs, ys = x / scale, y / scale
        design = np.column_stack(
            [xs * xs, xs * ys, ys * ys, xs, ys, np.ones_like(xs)]
        )
        _, s, vt = np.linalg.svd(design, full_matrices=False)
        if s[0] <= 1e-300:
            raise DegenerateFit("degenerate design matrix")
        A, B, C, D, E, F = vt[-1]
        # undo the coordinate scaling
        conic = Conic(
            A / scale**2,
            B / scale**2,
            C / scale**2,
            D / scale,
            E / scale,
            F,
        ).normalized()
        self.conic_ = conic
        self.conic_class_ = classify_conic(conic)
        res = self.residuals(pts)
        self._finish("conic", {"conic": conic, "class": self.conic_class_}, res)
        return self

    def residuals(self, points) -> np.ndarray:
        pts = validate_points(points, 1)
        c = self.conic_
        x, y = pts[:, 0], pts[:, 1]
        val = c.A * x * x + c.B * x * y + c.C * y * y + c.D * x + c.E * y + c.F
        gx = 2.0 * c.A * x + c.B * y + c.D
        gy = c.B * x + 2.0 * c.C * y + c.E
        grad = np.hypot(gx, gy)
        grad = np.where(grad < 1e-300, 1.0, grad)
        return val / grad

    def features(self) -> dict:
        return conic_features(self.conic_)


@dataclass(frozen=True)
class ImplicitCurve:
    """Bivariate polynomial sum of coeff * x^i * y^j given as term triples."""

    terms: tuple[tuple[float, int, int], ...]

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        total = np.zeros(np.broadcast(x, y).shape)
        for coeff, i, j in self.terms:
            total += coeff * x**i * y**j
        return total

    def gradient(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        gx = np.zeros(np.broadcast(x, y).shape)
        gy = np.zeros_like(gx)
        for coeff, i, j in self.terms:
            if i > 0:
                gx += coeff * i * x ** (i - 1) * y**j
            if j > 0:
                gy += coeff * j * x**i * y ** (j - 1)
        return gx, gy

    def sampson_residual(self, points) -> np.ndarray:
        pts = validate_points(points, 1)
        x, y = pts[:, 0], pts[:, 1]
        val = self(x, y)
        gx, gy = self.gradient(x, y)
        grad = np.hypot(gx, gy)
        grad = np.where(grad < 1e-300, 1.0, grad)
        return val / grad


def incenter_quartic(f: float) -> ImplicitCurve:
    """Quartic containing the incenter locus of the N=3 polar family."""
    return ImplicitCurve(
        (
            (-5.0 * SQ2 - 6.0, 2, 2),
            ((4.0 * SQ2 + 2.0) * f * f, 2, 0),
            ((10.0 * SQ2 + 12.0) * f, 1, 2),
            ((8.0 * SQ2 + 4.0) * f**3, 1, 0),
            ((3.0 * SQ2 - 16.0) * f * f, 0, 2),
            (-14.0 * f**4, 0, 0),
        )
    )


def spieker_quartic(f: float) -> ImplicitCurve:
    """Quartic containing the Spieker-center locus of the N=3 polar
    family."""
    return ImplicitCurve(
        (
            (4.0 * (11.0 * SQ2 + 16.0), 4, 0),
            (-4.0 * (3.0 * SQ2 + 5.0), 2, 2),
            (-4.0 * (37.0 * SQ2 + 50.0) * f, 3, 0),
            (8.0 * (2.0 * SQ2 + 1.0) * f, 1, 2),
            (21.0 * (5.0 * SQ2 + 8.0) * f * f, 2, 0),
            (-4.0 * (9.0 * SQ2 + 8.0) * f**3, 1, 0),
            (-(SQ2 + 4.0) * f * f, 0, 2),
            (7.0 * f**4, 0, 0),
        )
    )


def polar_perimeter_centroid_decic(f: float) -> ImplicitCurve:
    """Degree-ten curve containing the perimeter-centroid locus of the
    N=4 polar family."""
    terms = (
        (-(1457008.0 * SQ5 + 3257968.0) * f, 7, 2),
        ((122156.0 * SQ5 + 273148.0) * f**2, 4, 4),
        ((465164.0 * SQ5 + 1040132.0) * f**2, 6, 2),
        (-(96506.0 * SQ5 + 215698.0) * f**6, 2, 2),
        (-(119256.0 * SQ5 + 266664.0) * f**3, 3, 4),
        ((505052.0 * SQ5 + 1129268.0) * f**5, 3, 2),
        ((8564.0 * SQ5 + 19204.0) * f**7, 1, 2),
        (-(881712.0 * SQ5 + 1971568.0), 10, 0),
        ((43955.0 * SQ5 + 98289.0) * f**4, 2, 4),
        ((24568.0 * SQ5 + 54936.0) * f, 5, 4),
        (-(7250.0 * SQ5 + 16210.0) * f**5, 1, 4),
        (-(1274930.0 * SQ5 + 2850838.0) * f**4, 4, 2),
        ((1235568.0 * SQ5 + 2762832.0) * f**3, 5, 2),
        ((4457696.0 * SQ5 + 9967712.0) * f, 9, 0),
        (-(7787152.0 * SQ5 + 17412608.0) * f**2, 8, 0),
        ((5470456.0 * SQ5 + 12232344.0) * f**3, 7, 0),
        (-(755997.0 * SQ5 + 1690535.0) * f**4, 6, 0),
        (-(812098.0 * SQ5 + 1815898.0) * f**5, 5, 0),
        ((330322.0 * SQ5 + 738968.0) * f**6, 4, 0),
        ((448.0 * SQ5 + 1002.0) * f**6, 0, 4),
        (-(228.0 * SQ5 + 672.0) * f**8, 0, 2),
        (-(7300.0 * SQ5 + 16956.0) * f**7, 3, 0),
        ((2750.0 * SQ5 + 7150.0) * f**9, 1, 0),
        (-(16145.0 * SQ5 + 36103.0) * f**8, 2, 0),
        (-(84196.0 * SQ5 + 188268.0), 6, 4),
        ((544928.0 * SQ5 + 1218496.0), 8, 2),
        (-726.0 * f**10, 0, 0),
    )
    return ImplicitCurve(terms)


def incenter_strip_bounds(f: float) -> tuple[float, float]:
    """The two vertical lines tightly bounding the N=3 polar incenter
    locus (width about f/850).

    The quartic is linear in y^2: P = y^2 Q(x) + R(x).  The strip runs
    from the axis crossing (positive root of R) to the vertical asymptote
    (smaller root of Q), approached as the parameter grows.
    """
    lo = (-1.0 + math.sqrt((2.0 * SQ2 + 8.0) / (2.0 * SQ2 + 1.0))) * f
    hi = (1.0 - math.sqrt((8.0 * SQ2 - 10.0) / (5.0 * SQ2 + 6.0))) * f
    return tuple(sorted((lo, hi)))


def spieker_strip_bounds(f: float) -> tuple[float, float]:
    """Closed-form vertical bounds of the N=3 polar Spieker locus
    (width about f/1700)."""
    lo = (SQ2 - 1.0 + math.sqrt(10.0 - 7.0 * SQ2) / 2.0) * f
    hi = (SQ2 - 2.0 ** (-0.25)) * f
    return tuple(sorted((lo, hi)))


def polar_perimeter_centroid_strip_bounds(f: float) -> tuple[float, float]:
    """Closed-form vertical bounds of the N=4 polar perimeter-centroid
    locus (width about f/25)."""
    lo = (5.0 + SQ2 - SQ5 * SQ2 - SQ5) * f / 2.0
    hi = (SQ5 * SQ2 - SQ5 - 2.0 * SQ2 + 3.0) * f / 2.0
    return tuple(sorted((lo, hi)))


def strip_width(points) -> float:
    """Width of the smallest vertical strip containing the points."""
    pts = validate_points(points, 1)
    return float(np.max(pts[:, 0]) - np.min(pts[:, 0]))


def refine_strip_bounds(point_fn, params, points=None) -> tuple[float, float]:
    """Extremize the x-coordinate of a locus over its parameter.

    Starts from the sampled extremes and polishes each with a bounded
    scalar minimization, so the strip bounds are resolved well below the
    sampling granularity.
    """
    if points is None:
        points, _ = trace_locus(point_fn, params)
    params = np.asarray(list(params), dtype=float)
    xs = []
    for t in params:
        try:
            xs.append(float(point_fn(t)[0]))
        except (PonceletError, ZeroDivisionError):
            xs.append(math.nan)
    xs = np.array(xs)
    ok = np.isfinite(xs)
    if not np.any(ok):
        raise EmptyTrace("no parameter in the grid produced a point")

    def polish(idx: int, sign: float) -> float:
        i = int(idx)
        lo = params[max(0, i - 1)]
        hi = params[min(len(params) - 1, i + 1)]
        if lo == hi:
            return xs[i]

        def objective(t: float) -> float:
            # the bracket may cross a singular parameter; penalize it
            try:
                return sign * point_fn(t)[0]
            except (PonceletError, ZeroDivisionError):
                return math.inf

        res = minimize_scalar(
            objective, bounds=(lo, hi), method="bounded",
            options={"xatol": 1e-13},
        )
        return float(sign * min(res.fun, sign * xs[i]))

    imin = int(np.nanargmin(np.where(ok, xs, np.inf)))
    imax = int(np.nanargmax(np.where(ok, xs, -np.inf)))
    return polish(imin, +1.0), polish(imax, -1.0)


