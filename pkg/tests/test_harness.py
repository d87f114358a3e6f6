import json
import math

import pytest
from pydantic import ValidationError

from zetameans.errors import DomainError, InsufficientData
from zetameans.harness import (
    CSV_COLUMNS,
    CheckResult,
    SweepRow,
    VerifyReport,
    correction_ab,
    fit_error_exponents,
    grid_points,
    render_rows,
    run_sweep,
    verify,
    verify_exit_code,
    write_rows,
)
from zetameans.schemas import Estimator, OutputFormat, PolicyModel, SweepSpec, XRule

FAST = PolicyModel(precision_bits=53, tol=1e-10)


def _row(t, x, residual, error_flag=""):
    return SweepRow(
        sigma=0.5, t=t, x=x, y=t / (2 * math.pi * x), dist_y=0.1, in_A=False,
        oracle=1.0, estimate=1.0 + residual, residual=residual, error_flag=error_flag,
    )


# ─── rows and output ────────────────────────────────────────────────────────

def test_csv_row_format():
    row = SweepRow(sigma=0.5, t=100.0, x=2, y=7.5, dist_y=0.5, in_A=True)
    assert row.to_csv_row() == ["0.5", "100", "2", "7.5", "0.5", "true", "", "", "", "", "0", ""]
    assert row.ok
    row.error_flag = "PoleError"
    assert not row.ok


def test_render_csv_header_and_line_endings():
    text = render_rows([_row(100.0, 1, 0.01)])
    lines = text.split("\n")
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert "\r" not in text
    assert text.endswith("\n")
    assert len(lines) == 3


def test_render_json():
    payload = json.loads(render_rows([_row(100.0, 1, 0.01)], OutputFormat.JSON))
    assert payload[0]["x"] == 1
    assert payload[0]["in_A"] is False


def test_render_is_deterministic():
    rows = [_row(100.0, x, 0.01 * x) for x in (1, 2, 3)]
    assert render_rows(rows) == render_rows(rows)


def test_write_rows_to_file(tmp_path):
    path = tmp_path / "rows.csv"
    write_rows([_row(100.0, 1, 0.01), _row(200.0, 1, 0.005)], str(path))
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("sigma,t,x")
    assert len(lines) == 3


# ─── grid ───────────────────────────────────────────────────────────────────

def test_fixed_rule_drops_cells_past_t_over_2pi():
    spec = SweepSpec(estimator=Estimator.COR3, t_grid=[100.0], x_values=[1, 2, 50])
    assert grid_points(spec) == [(0.5, 100.0, 1), (0.5, 100.0, 2)]


def test_proportional_rule():
    spec = SweepSpec(
        estimator=Estimator.COR3, t_grid=[100.0], x_rule=XRule.PROPORTIONAL, x_values=[0.5, 1.0]
    )
    assert [x for _, _, x in grid_points(spec)] == [8, 15]


def test_all_cells_rule():
    spec = SweepSpec(estimator=Estimator.COR3, t_grid=[20.0], x_rule=XRule.ALL_CELLS)
    assert [x for _, _, x in grid_points(spec)] == [1, 2, 3]


def test_theorem3_has_one_row_per_t():
    spec = SweepSpec(estimator=Estimator.THM3, sigma=[0.5, 0.3], t_grid=[100.0, 200.0])
    assert grid_points(spec) == [(0.5, 100.0, 0), (0.5, 200.0, 0), (0.3, 100.0, 0), (0.3, 200.0, 0)]


def test_empty_cells_give_header_only():
    spec = SweepSpec(estimator=Estimator.COR3, t_grid=[100.0], x_values=[])
    rows = run_sweep(spec)
    assert rows == []
    assert render_rows(rows) == ",".join(CSV_COLUMNS) + "\n"


def test_sweep_spec_validation():
    assert SweepSpec(estimator="cor3", sigma=0.5, t_grid=[100.0]).sigma == [0.5]
    with pytest.raises(ValidationError):
        SweepSpec(estimator="cor3", t_grid=[200.0, 100.0])
    with pytest.raises(ValidationError):
        SweepSpec(estimator="cor3", t_grid=[])
    with pytest.raises(ValidationError):
        SweepSpec(estimator="cor3", t_grid=[100.0], x_values=[1.5])
    with pytest.raises(ValidationError):
        SweepSpec(estimator="cor3", t_grid=[100.0], x_rule="proportional", x_values=[2.0])


# ─── sweeps ─────────────────────────────────────────────────────────────────

def test_corollary3_sweep():
    spec = SweepSpec(
        estimator=Estimator.COR3, t_grid=[200.0, 400.0, 800.0], x_values=[1, 2, 4], policy=FAST
    )
    rows = run_sweep(spec)
    assert len(rows) == 9
    assert all(row.ok for row in rows)
    for row in rows:
        assert row.residual == abs(row.oracle - row.estimate)
        assert row.residual <= 20 * row.x / row.t
        assert row.predicted_scale == pytest.approx(row.x / row.t)


def test_failing_row_is_flagged_not_raised():
    spec = SweepSpec(estimator=Estimator.COR3, sigma=0.3, t_grid=[100.0], x_values=[1], policy=FAST)
    rows = run_sweep(spec)
    assert rows[0].error_flag == "DomainError"
    assert rows[0].residual is None
    assert render_rows(rows).split("\n")[1].endswith(",DomainError")


@pytest.mark.slow
def test_worker_count_does_not_change_output():
    spec = SweepSpec(
        estimator=Estimator.COR3, t_grid=[200.0, 400.0], x_values=[1, 2, 4], policy=FAST
    )
    assert render_rows(run_sweep(spec, workers=1)) == render_rows(run_sweep(spec, workers=2))


@pytest.mark.slow
def test_theorem3_sweep_row():
    spec = SweepSpec(estimator=Estimator.THM3, t_grid=[2 * math.pi * 20.5], policy=FAST)
    rows = run_sweep(spec)
    assert len(rows) == 1
    assert rows[0].x == 0
    assert rows[0].ok
    assert rows[0].oracle > 0


# ─── fits ───────────────────────────────────────────────────────────────────

def test_fit_recovers_exponents():
    rows = [_row(t, x, 3 * x / t) for t in (100.0, 200.0, 400.0) for x in (1, 2, 4)]
    fit = fit_error_exponents(rows)
    assert fit.exponents["t"] == pytest.approx(-1, abs=1e-9)
    assert fit.exponents["x"] == pytest.approx(1, abs=1e-9)
    assert fit.constant == pytest.approx(3, rel=1e-9)
    assert fit.r_squared == pytest.approx(1.0)
    assert fit.points == 9


def test_fit_of_constant_residuals():
    rows = [_row(t, 1, 0.5) for t in (100.0, 200.0, 400.0, 800.0, 1600.0, 3200.0)]
    fit = fit_error_exponents(rows)
    assert fit.r_squared == 0.0
    assert fit.exponents["t"] == pytest.approx(0, abs=1e-9)
    assert fit.exponents["x"] == 0.0


def test_fit_skips_error_rows_and_needs_six():
    rows = [_row(t, 1, 1 / t) for t in (100.0, 200.0, 400.0, 800.0, 1600.0)]
    rows.append(_row(3200.0, 1, 0.0, error_flag="ToleranceNotMet"))
    with pytest.raises(InsufficientData):
        fit_error_exponents(rows)


def test_fit_floors_residuals_at_tol():
    rows = [_row(t, 1, 0.0) for t in (100.0, 200.0, 400.0, 800.0, 1600.0, 3200.0)]
    fit = fit_error_exponents(rows, tol=1e-12)
    assert fit.constant == pytest.approx(1e-12)


# ─── verification ───────────────────────────────────────────────────────────

def test_verify_lattice_suite():
    report = verify("lattice")
    assert report.passed
    assert verify_exit_code(report) == 0
    names = {check.name for check in report.checks}
    assert "exceptional_set_example" in names
    assert "hyperbola_matches_naive" in names


def test_verify_unknown_suite():
    with pytest.raises(DomainError):
        verify("bogus")


def test_verify_exit_code_on_failure():
    report = VerifyReport(suite="identities", checks=[CheckResult("a", True), CheckResult("b", False)])
    assert not report.passed
    assert verify_exit_code(report) == 1
    assert report.to_dict()["passed"] is False


@pytest.mark.slow
def test_correction_ab_passes_with_unit_factor(policy):
    result = correction_ab(policy)
    factors = result.detail["factors"]
    assert set(factors) == {"0.25", "1.0"}
    assert all(len(entry["reduction"]) == 3 for entry in factors.values())
    assert result.passed
    assert result.detail["best_factor"] == "1.0"
    assert max(factors["1.0"]["band_error"]) < min(factors["0.25"]["band_error"])


@pytest.mark.slow
def test_verify_identities_passes(policy):
    report = verify("identities", policy)
    failed = [check.name for check in report.checks if not check.passed]
    assert failed == []
    assert verify_exit_code(report) == 0
