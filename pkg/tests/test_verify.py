import json

from poncelet import families as fam
from poncelet.verify import (
    TOLERANCES,
    InvariantReport,
    collinearity_check,
    default_grid,
    euler_line_through_focus,
    run_suite,
    stationarity_check,
)


def test_default_grid_avoids_singular_params():
    grid = default_grid(3)
    for s in fam.singular_params(3):
        assert all(abs(y - s) > 1e-2 for y in grid)
    assert len(grid) > 300


def test_collinearity_check_zero_for_collinear():
    assert collinearity_check((0, 0), (1, 1), (2, 2)) < 1e-15
    assert collinearity_check((0, 0), (1, 1), (2, 2.5)) > 1e-3


def test_stationarity_check_report():
    pts = [(1.0, 2.0), (1.0 + 1e-12, 2.0)]
    rep = stationarity_check(pts, expected=(1.0, 2.0), name="demo")
    assert rep.passed
    assert rep.samples == 2
    rep2 = stationarity_check([(0.0, 0.0), (1.0, 0.0)], name="demo2")
    assert not rep2.passed


def test_euler_line_distance_is_tiny_on_polar_family():
    assert euler_line_through_focus(fam.polar_triangle(1.0, 2.2), 1.0) < 1e-10


def test_report_serialization_round_trips():
    rep = InvariantReport(
        name="x", paper_ref="y", passed=True, max_deviation=1e-12,
        tolerance=1e-9, samples=10,
    )
    payload = json.loads(json.dumps(rep.to_dict()))
    assert payload["pass"] is True
    assert payload["name"] == "x"


def test_filter_glob_limits_checks():
    report = run_suite(filter_glob="closure_*")
    assert report.checks
    assert all(c.name.startswith("closure_") for c in report.checks)


def test_tolerances_table_is_single_source():
    # every check tolerance appearing in the full suite traces back to the
    # table (or is a classification sentinel)
    assert TOLERANCES["incidence"] == 1e-9
    assert TOLERANCES["collinearity"] == 1e-10
    assert TOLERANCES["conserved"] == 1e-9


def test_suite_to_dict_schema_fields(suite):
    payload = suite.to_dict()
    assert payload["schema_version"] == 1
    assert set(payload["summary"]) == {"passed", "failed", "conjecture_evidence"}
    for check in payload["checks"]:
        assert {"name", "paper_ref", "pass", "max_deviation",
                "tolerance", "samples"} <= set(check)
