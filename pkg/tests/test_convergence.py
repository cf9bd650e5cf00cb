"""Tests for convergence studies"""
import pytest
from pydantic import ValidationError

from app.config import settings
from app.exceptions import ConvergenceReportError, InvalidArgumentError
from app.models.run_config import RunConfig
from app.models.scheme import SchemeKind
from app.services.convergence_service import run_convergence, steps_to_reach


def study(scheme, symbol, kappa, **kwargs):
    return RunConfig(scheme=scheme, symbol=symbol, kappa=kappa, final_time=2.0, levels=4, **kwargs)


@pytest.mark.parametrize("scheme,symbol,kappa,expected", [
    ("be", "oscillator:c=1", 1 / 20, 0.85),
    ("bdf2", "oscillator:c=1", 1 / 20, 1.8),
    ("tr", "oscillator:c=1", 1 / 20, 1.8),
    ("radau3", "antiderivative", 1 / 10, 2.7),
    ("lobatto4", "antiderivative", 1 / 5, 3.7),
    ("radau3", "resolvent:c=-1", 1 / 10, 2.5),
])
def test_observed_orders(scheme, symbol, kappa, expected):
    report = run_convergence(study(scheme, symbol, kappa))
    assert len(report.rows) == 4
    assert report.rows[0].order is None
    assert min(report.orders) >= expected
    errors = [row.error for row in report.rows]
    assert errors == sorted(errors, reverse=True)


def test_marching_path_gives_the_same_errors():
    fast = run_convergence(study("bdf2", "oscillator:c=1", 1 / 20))
    marching = run_convergence(study("bdf2", "oscillator:c=1", 1 / 20, method="mot"))
    for a, b in zip(fast.rows, marching.rows):
        assert a.error == pytest.approx(b.error, rel=1e-4)


def test_steps_reach_final_time():
    assert steps_to_reach(SchemeKind.MULTISTEP, 0.05, 2.0) == 40
    assert steps_to_reach(SchemeKind.RUNGE_KUTTA, 0.05, 2.0) == 39
    with pytest.raises(InvalidArgumentError):
        steps_to_reach(SchemeKind.MULTISTEP, 0.3, 2.0)


def test_zero_signal_has_no_order():
    with pytest.raises(ConvergenceReportError):
        run_convergence(study("be", "oscillator:c=1", 1 / 20, signal="zero"))


def test_symbol_without_reference():
    with pytest.raises(InvalidArgumentError):
        run_convergence(study("be", "power:alpha=2", 1 / 20))


def test_csv_is_written(out_dir):
    report = run_convergence(study("bdf2", "oscillator:c=1", 1 / 20, out=str(out_dir)), write_csv=True)
    path = out_dir / "convergence_bdf2_oscillator.csv"
    lines = path.read_text().splitlines()
    assert lines[0] == "kappa,steps,error,order"
    assert len(lines) == 5
    assert lines[1].endswith(",")
    assert report.to_csv() == path.read_text()


def test_worker_count_does_not_change_results(monkeypatch):
    sequential = run_convergence(study("radau3", "resolvent:c=-1", 1 / 10))
    monkeypatch.setattr(settings, "max_workers", 4)
    threaded = run_convergence(study("radau3", "resolvent:c=-1", 1 / 10))
    assert [row.error for row in threaded.rows] == [row.error for row in sequential.rows]


def test_three_levels_are_rejected():
    with pytest.raises(ValidationError):
        RunConfig(levels=3)


def test_finest_errors_sit_above_the_contour_floor():
    report = run_convergence(study("lobatto4", "antiderivative", 1 / 5))
    assert report.rows[-1].error < 1e-8
    assert report.rows[-1].order >= 3.7
