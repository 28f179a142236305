import math

import numpy as np
import pandas as pd
import pytest

from src.application.services.concentration.calibration import (
    calibrate_D,
    calibrate_scale,
    calibrate_W,
    coverage_count,
    empirical_moments,
    scale_grid,
    validation_violations,
)
from src.domain.models.errors import ArgumentError, CalibrationError
from src.domain.models.reports import TailTable


def _table(values):
    return TailTable.from_values(values, thresholds=[0.5, 1.0])


def test_scale_grid_spans_closed_range():
    grid = scale_grid()
    assert grid[0] == pytest.approx(1e-3)
    assert grid[-1] == pytest.approx(1e3)
    assert np.all(np.diff(grid) > 0)
    assert grid[1] / grid[0] == pytest.approx(1.05)


def test_all_zero_values_calibrate_to_grid_minimum():
    table = _table(np.zeros(200))
    assert calibrate_scale(table, lambda u: u, [2.0, 3.0]) == pytest.approx(1e-3)


def test_unreachable_scale_raises_with_diagnostics():
    # Senaryo: tüm |G| değerleri ızgaranın üst ucundaki eşikten büyük
    table = _table(np.full(200, 1e9))
    with pytest.raises(CalibrationError) as info:
        calibrate_scale(table, lambda u: u, [2.0, 3.0])
    diagnostics = info.value.diagnostics
    assert isinstance(diagnostics, pd.DataFrame)
    assert list(diagnostics.columns) == ["u", "threshold", "exceed_fraction", "se", "allowed", "ok"]
    assert not diagnostics["ok"].any()


def test_calibrated_scale_is_minimal_on_grid():
    values = np.linspace(0.0, 1.0, 1000)
    shape = lambda u: 1.0  # noqa: E731
    u_grid = [2.0]
    scale = calibrate_scale(_table(values), shape, u_grid)
    grid = scale_grid()
    idx = int(np.searchsorted(grid, scale))
    assert grid[idx] == pytest.approx(scale)
    assert validation_violations(_table(values), shape, scale, u_grid) == 0
    assert validation_violations(_table(values), shape, grid[idx - 1], u_grid) == 1


def test_calibrate_W_uses_tail_shape():
    rng = np.random.default_rng(0)
    table = _table(rng.standard_normal(2000))
    W = calibrate_W(table, L_frak=1.0, sigma_tilde=0.5, u_grid=[2.0, 3.0, 4.0])
    for u in (2.0, 3.0, 4.0):
        fraction, se = table.exceedance(math.e * W * u ** 0.5)
        assert fraction <= math.exp(-u) + 2.0 * se


def test_calibration_rejects_small_u():
    table = _table(np.ones(10))
    with pytest.raises(ArgumentError):
        calibrate_W(table, 1.0, 1.0, [1.0, 2.0])
    with pytest.raises(ArgumentError):
        calibrate_D(table, 10, 0.1, 2.0, 1.0, [1.5])
    with pytest.raises(ArgumentError):
        calibrate_scale(table, lambda u: u, [])


def test_empirical_moments():
    moments = empirical_moments([3.0, -4.0], [1.0, 2.0])
    assert moments[0] == pytest.approx((1.0, 3.5))
    assert moments[1] == pytest.approx((2.0, math.sqrt(12.5)))
    assert empirical_moments([0.0, 0.0], [4.0]) == [(4.0, 0.0)]
    with pytest.raises(ArgumentError):
        empirical_moments([1.0], [0.5])


def test_empirical_moments_survive_large_powers():
    p, value = empirical_moments([1e3, 2e3], [200.0])[0]
    assert math.isfinite(value)
    assert value == pytest.approx(2e3 * 0.5 ** (1.0 / 200.0))


def test_coverage_count():
    assert coverage_count([0.95, 1.05, 1.3], target=1.0, epsilon=0.1) == 2
