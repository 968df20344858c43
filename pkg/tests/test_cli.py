import io
import json
import math

import numpy as np
import pytest

from poncelet import loci
from poncelet.cli import (
    CSV_HEADER,
    _target_point_fn,
    fit_points,
    main,
    read_trace_csv,
    render_svg,
)

SQ2 = math.sqrt(2.0)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_closure_prints_exact_and_numeric(capsys):
    code, out, _ = run_cli(capsys, "closure", "--n", "3")
    assert code == 0
    assert "2*(sqrt(2) - 1)" in out
    assert "0.8284271247461" in out


def test_closure_bad_bracket_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "closure", "--n", "3", "--bracket", "0.1", "0.2")
    assert code == 2
    assert "bracket" in err


def test_trace_csv_format(capsys):
    # odd sample count over a symmetric grid hits the y1 = 0 singularity
    # of the four-vertex family exactly
    code, out, _ = run_cli(
        capsys, "trace", "--target", "c0", "--n", "4", "--samples", "51"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == CSV_HEADER
    gaps = [l for l in lines if l.startswith("# gap,")]
    rows = [l for l in lines if not l.startswith("#") and l != CSV_HEADER]
    assert gaps, "the grid crosses the singular parameter y1 = 0"
    assert all(len(l.split(",")) == 3 for l in rows)
    # full precision: values round-trip through repr
    y1, x, y = rows[0].split(",")
    assert repr(float(x)) == x


def test_trace_unsupported_target(capsys):
    code, _, err = run_cli(capsys, "trace", "--target", "x123456")
    assert code == 2
    assert "unsupported" in err


def test_trace_fit_round_trip_is_bit_identical(tmp_path, capsys):
    csv_path = tmp_path / "trace.csv"
    code, _, _ = run_cli(
        capsys, "trace", "--target", "x2", "-o", str(csv_path),
        "--samples", "120",
    )
    assert code == 0
    with open(csv_path) as fh:
        pts = read_trace_csv(fh)
    # in-process fit on the same grid
    fn = _target_point_fn("x2", 3, 1.0)
    direct, _ = loci.trace_locus(fn, np.linspace(-8.0, 8.0, 120))
    assert pts.shape == direct.shape
    assert np.array_equal(pts, direct)
    via_cli = fit_points(pts, "conic", 1e-7)
    in_process = fit_points(direct, "conic", 1e-7)
    assert via_cli == in_process


def test_fit_auto_escalates_to_conic(tmp_path, capsys):
    csv_path = tmp_path / "t.csv"
    code, _, _ = run_cli(
        capsys, "trace", "--target", "x2", "-o", str(csv_path)
    )
    assert code == 0
    json_path = tmp_path / "fit.json"
    code, _, _ = run_cli(
        capsys, "fit", "-i", str(csv_path), "-o", str(json_path)
    )
    assert code == 0
    report = json.loads(json_path.read_text())
    assert report["model"] == "conic"
    assert report["features"]["class"] == "parabola"
    assert report["rms_residual"] < 1e-6
    assert set(report["strip"]) == {"x_min", "x_max"}


def test_fit_line_model_on_line_target(tmp_path, capsys):
    csv_path = tmp_path / "x4.csv"
    run_cli(capsys, "trace", "--target", "x4", "-o", str(csv_path))
    code, out, _ = run_cli(capsys, "fit", "-i", str(csv_path), "--model", "line")
    assert code == 0
    report = json.loads(out)
    assert report["model"] == "line"
    a, b, c = report["coefficients"]
    # vertical line x = (5 - 2 sqrt 2)
    assert abs(b / a) < 1e-6
    assert -c / a == pytest.approx(5.0 - 2.0 * SQ2, abs=1e-6)


def test_verify_json_matches_schema(tmp_path, capsys):
    jsonschema = pytest.importorskip("jsonschema")
    out_path = tmp_path / "report.json"
    code, _, _ = run_cli(
        capsys, "verify", "--filter", "closure_*", "--json", str(out_path)
    )
    assert code == 0
    report = json.loads(out_path.read_text())
    import pathlib

    schema_path = (
        pathlib.Path(__file__).resolve().parents[1]
        / "schemas"
        / "verify_report.schema.json"
    )
    schema = json.loads(schema_path.read_text())
    jsonschema.validate(report, schema)
    assert report["schema_version"] == 1
    assert report["summary"]["failed"] == 0


def test_plot_writes_svg(tmp_path, capsys):
    svg_path = tmp_path / "out.svg"
    code, _, _ = run_cli(
        capsys,
        "plot", "--target", "x2", "--target", "x110-polar",
        "-o", str(svg_path), "--samples", "80",
    )
    assert code == 0
    svg = svg_path.read_text()
    assert svg.startswith("<svg")
    assert svg.count("<path") >= 4  # parabola, caustic, two traces
    assert "<circle" in svg  # stationary-point marker


def test_plot_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    for path in (a, b):
        code, _, _ = run_cli(
            capsys, "plot", "--target", "c0", "--n", "4",
            "-o", str(path), "--samples", "60",
        )
        assert code == 0
    assert a.read_text() == b.read_text()


def test_plot_empty_trace_is_usage_error(tmp_path, capsys):
    code, _, err = run_cli(
        capsys,
        "plot", "--target", "c1", "--n", "4", "-o", str(tmp_path / "x.svg"),
        "--grid-min", "0.97173", "--grid-max", "0.97174", "--samples", "3",
    )
    assert code == 2
    assert "empty trace" in err


def test_config_toml_sets_defaults(tmp_path, capsys):
    cfg = tmp_path / "opts.toml"
    cfg.write_text('samples = 7\nf = 2.0\n')
    code, out, _ = run_cli(
        capsys, "--config", str(cfg), "trace", "--target", "x3"
    )
    assert code == 0
    rows = [
        l for l in out.splitlines() if not l.startswith("#") and l != CSV_HEADER
    ]
    assert len(rows) == 7
    # grid spans [-8 f, 8 f] with f = 2 from the config
    assert float(rows[0].split(",")[0]) == pytest.approx(-16.0)


def test_render_svg_contains_fit_annotation():
    pts = np.array([[0.0, 0.0], [0.5, 1.0], [1.0, 2.0]])
    svg = render_svg(
        1.0, 0.8, {"demo": pts}, fits=[{"model": "line", "rms_residual": 1e-12}]
    )
    assert "fit: line" in svg


def test_read_trace_csv_rejects_malformed():
    with pytest.raises(ValueError):
        read_trace_csv(io.StringIO("y1,x,y\n1.0,2.0\n"))
