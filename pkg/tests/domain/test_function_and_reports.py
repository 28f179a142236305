import math

import numpy as np
import pytest

from src.domain.models.calibration import CalibrationConstants, PACRequest, Provenance, with_default_iota_dd
from src.domain.models.errors import ArgumentError
from src.domain.models.function_class import TestFunction, constant_function, coordinate_function
from src.domain.models.reports import CoverageReport, TailTable
from src.domain.models.trajectory import Trajectory


def test_test_function_rejects_negative_growth():
    with pytest.raises(ArgumentError):
        TestFunction(eval=lambda x: x[..., 0], eta1=-1.0, L_frak=1.0)


def test_plus_and_scaled_keep_envelope_and_mean():
    f = constant_function(2.0)
    g = coordinate_function(0).scaled(3.0)
    h = f.plus(g)
    x = np.array([[1.0], [-2.0]])
    np.testing.assert_allclose(h(x), [5.0, -4.0])
    assert h.eta1 == 1.0
    assert h.centered_mean is None  # x'in ortalaması bilinmiyor
    assert f.scaled(-1.0).centered_mean == -2.0


def test_trajectory_is_read_only_and_indexes_time():
    traj = Trajectory(t0=1.0, step=0.5, states=np.zeros((5, 1)), seed=1, replicate_id=0)
    assert traj.n_steps == 4
    assert traj.horizon == pytest.approx(2.0)
    assert traj.time_of(2) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        traj.states[0, 0] = 1.0


def test_trajectory_copies_caller_array():
    # Senaryo: çağıranın float64 dizisi dondurulmamalı
    states = np.zeros((3, 1))
    traj = Trajectory(t0=0.0, step=0.1, states=states, seed=0, replicate_id=0)
    states[0, 0] = 5.0
    assert states.flags.writeable
    assert traj.states[0, 0] == 0.0


def test_trajectory_subsample_skips_initial_state():
    states = np.arange(7, dtype=float).reshape(-1, 1)
    traj = Trajectory(t0=0.0, step=0.1, states=states, seed=0, replicate_id=0)
    np.testing.assert_allclose(traj.subsample(2).ravel(), [2.0, 4.0, 6.0])


def test_trajectory_rejects_non_finite_states():
    with pytest.raises(ArgumentError):
        Trajectory(t0=0.0, step=0.1, states=np.array([[0.0], [np.nan]]), seed=0, replicate_id=0)


def test_pac_request_validation():
    assert PACRequest(0.1, 0.05).log_inv_delta() == pytest.approx(math.log(20.0))
    with pytest.raises(ArgumentError):
        PACRequest(0.0, 0.05)
    with pytest.raises(ArgumentError):
        PACRequest(0.1, 1.0)


def test_calibration_constants_track_provenance():
    consts = CalibrationConstants()
    assert consts.provenance["W_frak"] == Provenance.DEFAULT
    calibrated = consts.with_calibrated(W_frak=2.5)
    user = calibrated.with_user(D_frak=0.7)
    assert calibrated.W_frak == 2.5
    assert user.provenance["W_frak"] == Provenance.CALIBRATED
    assert user.provenance["D_frak"] == Provenance.USER
    assert user.to_dict()["D_frak"] == {"value": 0.7, "provenance": "user"}


def test_calibration_constants_reject_unknown_or_non_positive():
    with pytest.raises(ArgumentError):
        CalibrationConstants(W_frak=0.0)
    with pytest.raises(ArgumentError):
        CalibrationConstants().with_user(Z=1.0)


def test_default_iota_dd_is_midpoint_and_keeps_user_value():
    assert with_default_iota_dd(CalibrationConstants(), 0.4).iota_dd == pytest.approx(0.2)
    assert with_default_iota_dd(CalibrationConstants(iota_dd=0.1), 0.4).iota_dd == 0.1


def test_tail_table_fractions_are_monotone_and_queryable():
    values = [-3.0, -1.0, 0.5, 2.0]
    table = TailTable.from_values(values, thresholds=[2.5, 0.0, 1.0])
    assert table.thresholds == (0.0, 1.0, 2.5)
    assert table.exceed_fraction == (1.0, 0.5, 0.25)
    fraction, se = table.exceedance(1.5)
    assert fraction == 0.5
    assert se == pytest.approx(math.sqrt(0.25 / 4))


def test_tail_table_rejects_empty_values():
    with pytest.raises(ArgumentError):
        TailTable.from_values([], thresholds=[1.0])


def test_coverage_report_verdict():
    report = CoverageReport(runs=100, within_eps=97, epsilon=0.1, delta=0.05, target_value=0.0)
    assert report.coverage == pytest.approx(0.97)
    assert report.verdict == "pass"
    failing = CoverageReport(runs=100, within_eps=50, epsilon=0.1, delta=0.05, target_value=0.0)
    assert failing.verdict == "fail"
