"""Command line interface.

Subcommands: ``closure`` (closing caustic radius), ``trace`` (sample a
center locus to CSV), ``fit`` (fit a model to a traced locus), ``verify``
(run the proposition suite), ``plot`` (standalone SVG picture of a
family and its traces).

Exit codes: 0 success, 1 check failure, 2 usage error.  No environment
variables are consulted; defaults may instead be supplied with
``--config file.toml`` whose top-level keys mirror the long option names.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

try:
    import tomllib
except ImportError:  # python < 3.11
    import tomli as tomllib

import numpy as np

from . import centers as ct
from . import families as fam
from . import loci
from .engine import generate_orbit, solve_closure_radius
from .errors import BadBracket, PonceletError
from .geom import ConicClass
from .verify import run_suite

EXACT_FORMS = {
    3: "2*(sqrt(2) - 1)",
    4: "2*sqrt(sqrt(5) - 2)",
    5: "unique root in (0, 1) of x^6 + 12x^5 - 28x^4 + 32x^3 + 112x^2 - 64x - 64",
}

CSV_HEADER = "y1,x,y"


def _fmt(x: float) -> str:
    return repr(float(x))


# ------------------------------------------------------------------ trace


def _target_point_fn(target: str, N: int, f: float):
    """Map a target name to a point-valued function of y1.

    Targets: ``xK`` / ``xK-polar`` for triangle centers (N=3 only) and
    ``cJ`` / ``cJ-polar`` (J in 0,1,2) for polygon centroids (any N).
    """
    name = target.lower()
    polar = name.endswith("-polar")
    if polar:
        name = name[: -len("-polar")]
    if name.startswith("x"):
        try:
            k = int(name[1:])
        except ValueError:
            raise KeyError(target)
        if N != 3 or k not in ct.SUPPORTED_CENTERS:
            raise KeyError(target)
        poly_fn = fam.polar_triangle if polar else fam.triangle_orbit
        return lambda y1: ct.triangle_center(poly_fn(f, y1), k)
    if name.startswith("c"):
        try:
            j = int(name[1:])
        except ValueError:
            raise KeyError(target)
        if j not in ct.CENTROIDS:
            raise KeyError(target)
        if N == 3:
            poly_fn = fam.polar_triangle if polar else fam.triangle_orbit
            return lambda y1: ct.polygon_centroid(poly_fn(f, y1), j)
        if N == 4:
            poly_fn = fam.polar_quad if polar else fam.quad_orbit
            return lambda y1: ct.polygon_centroid(poly_fn(f, y1), j)
        cfg = fam.family_config(N, f)

        def point(y1, j=j, polar=polar):
            orbit = generate_orbit(cfg, y1)
            poly = orbit.polar_vertices if polar else orbit.vertices
            return ct.polygon_centroid(poly, j)

        return point
    raise KeyError(target)


def _grid(args) -> np.ndarray:
    return np.linspace(
        args.grid_min * args.f, args.grid_max * args.f, args.samples
    )


def _trace_rows(point_fn, grid):
    """Yield CSV body lines; singular parameters become gap comments."""
    gap_start = None
    prev_gap = None
    for y1 in grid:
        try:
            p = point_fn(float(y1))
        except (PonceletError, ZeroDivisionError):
            if gap_start is None:
                gap_start = float(y1)
            prev_gap = float(y1)
            continue
        if gap_start is not None:
            yield f"# gap,{_fmt(gap_start)},{_fmt(prev_gap)}"
            gap_start = None
        yield f"{_fmt(float(y1))},{_fmt(p[0])},{_fmt(p[1])}"
    if gap_start is not None:
        yield f"# gap,{_fmt(gap_start)},{_fmt(prev_gap)}"


def cmd_trace(args) -> int:
    try:
        point_fn = _target_point_fn(args.target, args.n, args.f)
    except KeyError:
        print(f"unsupported trace target: {args.target}", file=sys.stderr)
        return 2
    lines = [CSV_HEADER]
    lines.extend(_trace_rows(point_fn, _grid(args)))
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# -------------------------------------------------------------------- fit


def read_trace_csv(stream) -> np.ndarray:
    """Parse the output of ``trace`` back into an (n, 2) point array."""
    pts = []
    for raw in stream:
        line = raw.strip()
        if not line or line.startswith("#") or line == CSV_HEADER:
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise ValueError(f"malformed trace row: {line!r}")
        pts.append((float(parts[1]), float(parts[2])))
    return np.array(pts, dtype=float)


def fit_points(points: np.ndarray, model: str, tol: float) -> dict:
    """Fit the requested model; ``auto`` escalates line -> circle -> conic."""
    order = [model] if model != "auto" else ["line", "circle", "conic"]
    last = None
    for kind in order:
        fitter = {
            "line": loci.LineFitter,
            "circle": loci.CircleFitter,
            "conic": loci.ConicFitter,
        }[kind]()
        try:
            fitter.fit(points)
        except PonceletError:
            continue
        res = fitter.result_
        if model == "auto" and kind == "circle":
            # a near-line trace yields an absurdly large circle; let the
            # escalation fall through to the conic model instead
            span = float(np.max(points) - np.min(points))
            if fitter.radius_ > 1e3 * max(span, 1e-300):
                continue
        features: dict = {}
        if kind == "line":
            coeffs = [fitter.normal_[0], fitter.normal_[1], fitter.offset_]
            features = {"normal": list(fitter.normal_), "offset": fitter.offset_}
        elif kind == "circle":
            coeffs = [fitter.center_[0], fitter.center_[1], fitter.radius_]
            features = {"center": list(fitter.center_), "radius": fitter.radius_}
        else:
            c = fitter.conic_
            coeffs = [c.A, c.B, c.C, c.D, c.E, c.F]
            features = {"class": fitter.conic_class_.value}
            if fitter.conic_class_ in (
                ConicClass.PARABOLA,
                ConicClass.ELLIPSE,
                ConicClass.HYPERBOLA,
                ConicClass.CIRCLE,
            ):
                feats = fitter.features()
                for key, val in feats.items():
                    if key in ("class", "directrix"):
                        continue
                    features[key] = (
                        list(val) if isinstance(val, tuple) else val
                    )
        last = {
            "model": kind,
            "coefficients": [float(v) for v in coeffs],
            "rms_residual": res.rms_residual,
            "max_residual": res.max_residual,
            "features": features,
            "strip": {
                "x_min": float(np.min(points[:, 0])),
                "x_max": float(np.max(points[:, 0])),
            },
        }
        if model != "auto" or res.max_residual < tol:
            return last
    if last is None:
        raise PonceletError("no model could be fitted to the trace")
    return last


def cmd_fit(args) -> int:
    if args.input and args.input != "-":
        with open(args.input) as fh:
            points = read_trace_csv(fh)
    else:
        points = read_trace_csv(sys.stdin)
    if points.size == 0:
        print("trace contains no points", file=sys.stderr)
        return 2
    try:
        report = fit_points(points, args.model, args.tol)
    except PonceletError as exc:
        print(f"fit failed: {exc}", file=sys.stderr)
        return 1
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------- closure


def cmd_closure(args) -> int:
    bracket = tuple(args.bracket) if args.bracket else None
    try:
        r = solve_closure_radius(args.f, args.n, bracket=bracket)
    except BadBracket as exc:
        print(f"bad bracket: {exc}", file=sys.stderr)
        return 2
    exact = EXACT_FORMS.get(args.n, "no closed form known; numerical root")
    print(f"N = {args.n}, f = {_fmt(args.f)}")
    print(f"r/f exact form: {exact}")
    print(f"r/f = {_fmt(r / args.f)}")
    print(f"r   = {_fmt(r)}")
    return 0


# ----------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    report = run_suite(filter_glob=args.filter)
    payload = report.to_dict()
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        print(
            f"{status} [{check.kind:10s}] {check.name:42s} "
            f"dev={check.max_deviation:.3e} tol={check.tolerance:.1e} "
            f"n={check.samples}"
        )
    s = payload["summary"]
    print(
        f"passed={s['passed']} failed={s['failed']} "
        f"conjecture_evidence={s['conjecture_evidence']}"
    )
    return 0 if report.all_theorems_pass else 1


# ------------------------------------------------------------------- plot


def _svg_path(points, sx, sy) -> str:
    cmds = []
    for i, (x, y) in enumerate(points):
        op = "M" if i == 0 else "L"
        cmds.append(f"{op}{sx(x):.3f},{sy(y):.3f}")
    return " ".join(cmds)


def render_svg(f: float, r: float, traces: dict, stationary=(), fits=()) -> str:
    """Deterministic standalone SVG: the parabola, the caustic circle,
    one polyline per trace, dots at stationary points.

    The view window is taken from robust (5th-95th percentile) extents of
    the traces, so samples escaping toward infinity near singular
    parameters do not blow up the frame; polylines are broken there.
    """
    xs = [-4.0 * f, 2.0 * f]
    ys = [-4.0 * f, 4.0 * f]
    for pts in traces.values():
        if len(pts):
            xs += [float(np.percentile(pts[:, 0], 5)),
                   float(np.percentile(pts[:, 0], 95))]
            ys += [float(np.percentile(pts[:, 1], 5)),
                   float(np.percentile(pts[:, 1], 95))]
    pad = 0.05 * max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad
    W = 720.0
    H = W * (y1 - y0) / (x1 - x0)

    def sx(x):
        return (x - x0) / (x1 - x0) * W

    def sy(y):
        return H - (y - y0) / (y1 - y0) * H

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W:.0f}" '
        f'height="{H:.0f}" viewBox="0 0 {W:.0f} {H:.0f}">',
        f'<rect width="{W:.0f}" height="{H:.0f}" fill="white"/>',
    ]
    span = math.sqrt(max(4.0 * f * (x1 - x0), 1e-12))
    ts = np.linspace(-2.0 * span, 2.0 * span, 400)
    par = [(-t * t / (4.0 * f), t) for t in ts]
    parts.append(
        f'<path d="{_svg_path(par, sx, sy)}" fill="none" stroke="black" '
        'stroke-width="1.5"/>'
    )
    circ = [
        (-f + r * math.cos(a), r * math.sin(a))
        for a in np.linspace(0.0, 2.0 * math.pi, 256)
    ]
    parts.append(
        f'<path d="{_svg_path(circ, sx, sy)}" fill="none" stroke="gray" '
        'stroke-width="1.0" stroke-dasharray="4,3"/>'
    )
    palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"]
    for i, (name, pts) in enumerate(sorted(traces.items())):
        color = palette[i % len(palette)]
        # break the polyline wherever a sample leaves the view window
        segments: list[list] = [[]]
        for x, y in pts:
            if x0 <= x <= x1 and y0 <= y <= y1:
                segments[-1].append((x, y))
            elif segments[-1]:
                segments.append([])
        d = " ".join(
            _svg_path(seg, sx, sy) for seg in segments if len(seg) > 1
        )
        if not d:
            continue
        parts.append(
            f'<path d="{d}" fill="none" '
            f'stroke="{color}" stroke-width="1.2"><title>{name}</title></path>'
        )
    for x, y in stationary:
        parts.append(
            f'<circle cx="{sx(x):.3f}" cy="{sy(y):.3f}" r="4" fill="black"/>'
        )
    for fit in fits:
        label = fit.get("model", "?")
        parts.append(
            f'<text x="10" y="{20 + 16 * len(parts) % 60}" '
            f'font-size="12" fill="#555">fit: {label} '
            f"rms={fit.get('rms_residual', 0.0):.2e}</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_plot(args) -> int:
    traces = {}
    stationary = []
    grid = _grid(args)
    for target in args.target:
        try:
            point_fn = _target_point_fn(target, args.n, args.f)
        except KeyError:
            print(f"unsupported trace target: {target}", file=sys.stderr)
            return 2
        try:
            pts, _ = loci.trace_locus(point_fn, grid)
        except PonceletError:
            print(f"empty trace for target: {target}", file=sys.stderr)
            return 2
        traces[target] = pts
        if loci.strip_width(pts) < 1e-9 * args.f and (
            float(np.max(pts[:, 1]) - np.min(pts[:, 1])) < 1e-9 * args.f
        ):
            stationary.append(
                (float(np.mean(pts[:, 0])), float(np.mean(pts[:, 1])))
            )
    if not traces:
        print("no targets given", file=sys.stderr)
        return 2
    fits = []
    for path in args.fit_json or []:
        with open(path) as fh:
            fits.append(json.load(fh))
    r = fam.closure_ratio(args.n) * args.f
    svg = render_svg(args.f, r, traces, stationary, fits)
    with open(args.output, "w") as fh:
        fh.write(svg)
    return 0


# ------------------------------------------------------------------ main


def _add_grid_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid-min", type=float, default=-8.0,
                   help="lower end of the y1/f grid (default -8)")
    p.add_argument("--grid-max", type=float, default=8.0,
                   help="upper end of the y1/f grid (default 8)")
    p.add_argument("--samples", type=int, default=400,
                   help="number of grid points (default 400)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poncelet",
        description="Parabola-inscribed Poncelet polygon families: closure "
        "radii, center loci, invariant verification.",
    )
    parser.add_argument("--config", help="TOML file with option defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closure", help="solve the closing caustic radius")
    p.add_argument("--n", type=int, required=True, help="polygon vertex count")
    p.add_argument("--f", type=float, default=1.0, help="focal distance")
    p.add_argument("--bracket", type=float, nargs=2, metavar=("LO", "HI"),
                   help="bisection bracket in units of r/f")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("trace", help="sample a center locus to CSV")
    p.add_argument("--target", required=True,
                   help="locus target, e.g. x4, x2-polar, c0, c1-polar")
    p.add_argument("--n", type=int, default=3, help="polygon vertex count")
    p.add_argument("--f", type=float, default=1.0, help="focal distance")
    p.add_argument("-o", "--output", help="output CSV path (default stdout)")
    _add_grid_options(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("fit", help="fit a model to a traced locus")
    p.add_argument("--model", choices=("auto", "line", "circle", "conic"),
                   default="auto")
    p.add_argument("-i", "--input", help="trace CSV path (default stdin)")
    p.add_argument("-o", "--output", help="output JSON path (default stdout)")
    p.add_argument("--tol", type=float, default=1e-7,
                   help="max-residual acceptance threshold for --model auto")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("verify", help="run the full proposition check suite")
    p.add_argument("--json", help="also write the report as JSON to this path")
    p.add_argument("--filter", help="only run checks matching this name glob")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plot", help="render a family and traces as SVG")
    p.add_argument("--target", action="append", required=True,
                   help="locus target (repeatable)")
    p.add_argument("--n", type=int, default=3, help="polygon vertex count")
    p.add_argument("--f", type=float, default=1.0, help="focal distance")
    p.add_argument("-o", "--output", required=True, help="output SVG path")
    p.add_argument("--fit-json", action="append",
                   help="fit-report JSON to annotate on the plot (repeatable)")
    _add_grid_options(p)
    p.set_defaults(func=cmd_plot)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv) -> list[str]:
    """Pull --config out of argv and fold the TOML values into defaults."""
    if "--config" not in argv:
        return list(argv)
    argv = list(argv)
    i = argv.index("--config")
    try:
        path = argv[i + 1]
    except IndexError:
        parser.error("--config needs a file path")
    del argv[i : i + 2]
    with open(path, "rb") as fh:
        values = tomllib.load(fh)
    defaults = {key.replace("-", "_"): val for key, val in values.items()}
    for action in parser._subparsers._group_actions:
        for subparser in action.choices.values():
            subparser.set_defaults(
                **{
                    k: v
                    for k, v in defaults.items()
                    if any(a.dest == k for a in subparser._actions)
                }
            )
    return argv


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    argv = _apply_config(parser, argv)
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"file not found: {exc.filename}", file=sys.stderr)
        return 2
    except PonceletError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
