"""Generic Poncelet transverse iteration and closure solving.

The outer curve is a general conic; the caustic may be a circle (the usual
case here) or any nondegenerate conic.  A transverse step draws the tangent
chord from the current vertex to the caustic and returns its second
intersection with the outer conic.  Vertices are kept homogeneous, so a
chord through the point at infinity (an axis-parallel chord of a parabola)
is handled without special cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadBracket,
    ClosureViolation,
    DegenerateChord,
    NoTangent,
)
from .geom import (
    CircleSpec,
    Conic,
    ConicClass,
    ProjPoint,
    classify_conic,
    conic_features,
    pole_point,
    tangent_lines_from,
)

CLOSURE_TOL = 1e-12

# Bisection brackets for the closing caustic radius r/f of the
# parabola-inscribed family; rotation number is monotone in r on each.
CLOSURE_BRACKETS = {
    3: (0.7, 0.9),
    4: (0.95, 0.99),
    5: (0.99, 0.999),
    6: (0.999, 0.9999),
}


@dataclass(frozen=True)
class TransverseState:
    """One vertex of a transverse in progress."""

    current: ProjPoint
    tangency: ProjPoint  # tangency point of the incoming chord on the caustic
    step_index: int = 0


@dataclass(frozen=True)
class FamilyConfig:
    """A parabola-inscribed Poncelet family: N-gons inscribed in the
    canonical parabola of focal distance f, circumscribing the circle of
    radius r centered at the focus (-f, 0)."""

    N: int
    f: float
    r: float
    outer: Conic
    caustic: CircleSpec

    @property
    def ratio(self) -> float:
        return self.r / self.f


def _as_conic(caustic) -> Conic:
    return caustic.to_conic() if isinstance(caustic, CircleSpec) else caustic


def _second_intersection(m: np.ndarray, p: ProjPoint, q: ProjPoint) -> ProjPoint:
    """Second intersection with the outer conic (matrix m) of the line
    through p (on the conic) and q."""
    pv, qv = p.as_array(), q.as_array()
    a = float(qv @ m @ qv)
    b = float(pv @ m @ qv)
    scale = float(np.max(np.abs(m))) * float(
        np.max(np.abs(pv)) * np.max(np.abs(qv))
    )
    if abs(b) <= 1e-14 * scale:
        raise DegenerateChord("chord is tangent to the outer conic at p")
    if abs(a) <= 1e-14 * scale * np.max(np.abs(qv)) / max(np.max(np.abs(pv)), 1e-300):
        return q.normalized()
    t = -2.0 * b / a
    v = pv + t * qv
    return ProjPoint(float(v[0]), float(v[1]), float(v[2])).normalized()


def transverse_step(
    outer: Conic,
    caustic,
    p: ProjPoint,
    branch: int = +1,
    prev_tangency: ProjPoint | None = None,
) -> TransverseState:
    """One Poncelet step from vertex p on the outer conic.

    Of the two tangents from p to the caustic, the one touching at
    ``prev_tangency`` is the incoming chord and is excluded; with no
    history, ``branch`` picks a side deterministically.  Returns the new
    vertex together with the tangency point of the chord just drawn.
    """
    cau = _as_conic(caustic)
    lines = tangent_lines_from(cau, p)
    if not lines:
        raise NoTangent("no real tangent from the current vertex")
    touches = [pole_point(cau, l).normalized() for l in lines]
    if len(lines) == 1:
        choice = 0
    elif prev_tangency is not None:
        # pick the tangent that is not the incoming chord
        d = [
            float(np.max(np.abs(np.cross(t.as_array(), prev_tangency.as_array()))))
            for t in touches
        ]
        choice = int(np.argmax(d))
    else:
        # deterministic initial side, invariant under scaling: pick the
        # tangency point by its orientation relative to the ray from p to
        # the caustic center
        if isinstance(caustic, CircleSpec):
            ccx, ccy = caustic.center.xy()
        else:
            ccx, ccy = conic_features(cau)["center"]
        px, py = p.xy()
        cross = []
        for t in touches:
            tx, ty = t.xy()
            cross.append((tx - px) * (ccy - py) - (ty - py) * (ccx - px))
        choice = int(np.argmin(cross)) if branch >= 0 else int(np.argmax(cross))
    tangency = touches[choice]
    nxt = _second_intersection(outer.matrix(), p, tangency)
    return TransverseState(current=nxt, tangency=tangency)


def _arc_parameter(outer: Conic, p: ProjPoint) -> float:
    """Global arc parameter on the outer conic: y for a parabola, the
    angle about the center for a circle/ellipse."""
    cls = classify_conic(outer)
    if cls is ConicClass.PARABOLA:
        x, y = p.xy()
        return y
    feats = conic_features(outer)
    cx, cy = feats["center"]
    x, y = p.xy()
    return math.atan2(y - cy, x - cx)


def iterate_transverse(
    outer: Conic,
    caustic,
    start: ProjPoint,
    steps: int,
    branch: int = +1,
) -> list[TransverseState]:
    """Run ``steps`` transverse steps; returns the list of visited states
    (excluding the start)."""
    states: list[TransverseState] = []
    p = start
    prev = None
    for _ in range(steps):
        st = transverse_step(outer, caustic, p, branch=branch, prev_tangency=prev)
        states.append(st)
        p, prev = st.current, st.tangency
    return states


def closure_defect(
    outer: Conic, caustic, start: ProjPoint, N: int, branch: int = +1
) -> float:
    """Signed arc-parameter distance between P_{N+1} and P_1 (zero iff the
    transverse closes after N steps)."""
    states = iterate_transverse(outer, caustic, start, N, branch=branch)
    end = states[-1].current
    s0 = _arc_parameter(outer, start)
    s1 = _arc_parameter(outer, end)
    d = s1 - s0
    if classify_conic(outer) is not ConicClass.PARABOLA:
        d = (d + math.pi) % (2.0 * math.pi) - math.pi
    return d


def rotation_defect(
    outer: Conic,
    caustic,
    start: ProjPoint,
    N: int,
    branch: int = +1,
    winding: int = 1,
) -> float:
    """Total advance of the caustic tangency point over N steps, minus
    ``winding`` full turns.  Continuous in the caustic radius even when a
    vertex passes through infinity (where the y-defect wraps), hence the
    quantity used for bisection.  The parabola-inscribed families close
    with winding number N - 1."""
    if isinstance(caustic, CircleSpec):
        cx, cy = caustic.center.xy()
    else:
        feats = conic_features(_as_conic(caustic))
        cx, cy = feats["center"]
    states = iterate_transverse(outer, caustic, start, N + 1, branch=branch)
    total = 0.0
    angles = []
    for s in states:
        tx, ty = s.tangency.xy()
        angles.append(math.atan2(ty - cy, tx - cx))
    for a0, a1 in zip(angles, angles[1:]):
        total += (a1 - a0) % (2.0 * math.pi)
    return total - 2.0 * math.pi * winding


def solve_closure_radius(
    f: float, N: int, bracket: tuple[float, float] | None = None
) -> float:
    """Caustic radius r (for focal distance f) closing the
    parabola-inscribed family in N steps, by bisection on the closure
    defect.  The bracket is in units of r/f."""
    if bracket is None:
        if N in CLOSURE_BRACKETS:
            bracket = CLOSURE_BRACKETS[N]
        else:
            bracket = (CLOSURE_BRACKETS[6][1], 1.0 - 1e-9)
    lo, hi = bracket
    outer = _canonical_parabola_conic(f)
    start = ProjPoint.from_xy(-(2.0 * f) ** 2 / (4.0 * f), 2.0 * f)

    def defect(ratio: float) -> float:
        caustic = CircleSpec(ProjPoint.from_xy(-f, 0.0), ratio * f)
        return rotation_defect(outer, caustic, start, N, winding=N - 1)

    dlo, dhi = defect(lo), defect(hi)
    if dlo == 0.0:
        return lo * f
    if dhi == 0.0:
        return hi * f
    if math.copysign(1.0, dlo) == math.copysign(1.0, dhi):
        raise BadBracket(f"no sign change on bracket {bracket} for N={N}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        dm = defect(mid)
        if dm == 0.0:
            lo = hi = mid
            break
        if math.copysign(1.0, dm) == math.copysign(1.0, dlo):
            lo, dlo = mid, dm
        else:
            hi = mid
    r = 0.5 * (lo + hi) * f
    caustic = CircleSpec(ProjPoint.from_xy(-f, 0.0), r)
    if abs(closure_defect(outer, caustic, start, N)) > 1e-9 * f:
        raise ClosureViolation("bisection did not converge to a closing radius")
    return r


def _canonical_parabola_conic(f: float) -> Conic:
    return Conic(0.0, 0.0, 1.0, 4.0 * f, 0.0, 0.0)


def make_family_config(N: int, f: float, r: float) -> FamilyConfig:
    return FamilyConfig(
        N=N,
        f=f,
        r=r,
        outer=_canonical_parabola_conic(f),
        caustic=CircleSpec(ProjPoint.from_xy(-f, 0.0), r),
    )


@dataclass
class Orbit:
    """One closed N-gon of a family, with its polar polygon."""

    family: FamilyConfig
    y1: float
    vertices: list[ProjPoint]
    polar_vertices: list[ProjPoint] = field(default_factory=list)

    @property
    def is_bounded(self) -> bool:
        return all(not v.is_infinite() for v in self.vertices)

    @property
    def polar_is_bounded(self) -> bool:
        return all(not v.is_infinite() for v in self.polar_vertices)


def polar_polygon(outer: Conic, vertices: list[ProjPoint]) -> list[ProjPoint]:
    """Vertices of the polygon bounded by the tangents to ``outer`` at the
    given (inscribed) vertices: intersections of consecutive tangents."""
    from .geom import polar_line

    n = len(vertices)
    tangents = [polar_line(outer, v) for v in vertices]
    return [
        tangents[i].meet(tangents[(i + 1) % n]).normalized() for i in range(n)
    ]


def generate_orbit(
    cfg: FamilyConfig, y1: float, closure_tol: float = 1e-9
) -> Orbit:
    """Engine-iterated orbit at driving parameter y1, with polar polygon."""
    start = ProjPoint.from_xy(-y1 * y1 / (4.0 * cfg.f), y1)
    states = iterate_transverse(cfg.outer, cfg.caustic, start, cfg.N)
    end = states[-1].current
    if not end.isclose(start, closure_tol):
        raise ClosureViolation(
            f"orbit at y1={y1} does not close (config r/f={cfg.ratio})"
        )
    vertices = [start] + [s.current for s in states[:-1]]
    polar = polar_polygon(cfg.outer, vertices)
    return Orbit(family=cfg, y1=y1, vertices=vertices, polar_vertices=polar)


def generate_family(
    cfg: FamilyConfig, params: list[float], closure_tol: float = 1e-9
) -> tuple[list[Orbit], list[float]]:
    """Orbits over a parameter grid; singular parameters are skipped and
    returned separately as the gap record."""
    orbits: list[Orbit] = []
    gaps: list[float] = []
    for y1 in params:
        try:
            orbit = generate_orbit(cfg, y1, closure_tol)
        except (NoTangent, DegenerateChord, ClosureViolation, ZeroDivisionError):
            gaps.append(y1)
            continue
        orbits.append(orbit)
    return orbits, gaps
