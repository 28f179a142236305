from dataclasses import replace

import numpy as np
import pytest

from src.application.services.registry.model_registry import deterministic_model, ou_model
from src.application.services.simulation.euler_engine import simulate_batch
from src.application.services.simulation.observers import PathObserver, SnapshotObserver, WindowSumObserver
from src.application.services.simulation.simulation_service import SimulationService, StationaryMethod
from src.domain.models.diffusion import DiffusionModel, ErgodicityParams, constant_diffusion
from src.domain.models.errors import ArgumentError, DivergenceError, ExperimentError, UnsupportedMethodError


def _explosive_model():
    params = ErgodicityParams.with_default_iota(
        q=-1.0, q_prime=1.0, M0=0.0, r_frak=1.0, lambda_minus=1.0, lambda_plus=1.0, Lambda_cap=1.0
    )
    return DiffusionModel(
        dim=1,
        drift=lambda x: np.asarray(x) ** 3,
        diffusion=constant_diffusion(np.zeros((1, 1))),
        ergodicity=params,
        name="explosive",
    )


def test_deterministic_model_follows_euler_recursion(simulation):
    traj = simulation.euler_maruyama(deterministic_model(1), np.array([1.0]), 3, seed=1, step=0.1)
    np.testing.assert_allclose(traj.states.ravel(), [1.0, 0.9, 0.81, 0.729])
    assert traj.horizon == pytest.approx(0.3)


def test_same_seed_and_replicate_reproduce_the_path(simulation, ou):
    a = simulation.euler_maruyama(ou, np.zeros(1), 50, seed=7, replicate_id=3)
    b = simulation.euler_maruyama(ou, np.zeros(1), 50, seed=7, replicate_id=3)
    c = simulation.euler_maruyama(ou, np.zeros(1), 50, seed=7, replicate_id=4)
    np.testing.assert_array_equal(a.states, b.states)
    assert not np.array_equal(a.states, c.states)


def test_replicate_results_do_not_depend_on_batching(ou):
    # Senaryo: aynı replikalar farklı grup boyutu ve iş parçacığı sayısıyla koşturuluyor
    ids = range(10)
    small = SimulationService(euler_step=1e-2, batch_size=3, threads=4).run_replicates(ou, np.zeros(1), 40, 11, ids)
    large = SimulationService(euler_step=1e-2, batch_size=64, threads=1).run_replicates(ou, np.zeros(1), 40, 11, ids)
    np.testing.assert_array_equal(small.final_states, large.final_states)


def test_single_path_matches_batch_member(simulation, ou):
    batch = simulation.run_replicates(ou, np.zeros(1), 30, 5, range(4))
    single = simulation.euler_maruyama(ou, np.zeros(1), 30, seed=5, replicate_id=2)
    np.testing.assert_array_equal(batch.final_states[2], single.endpoint())


def test_ou_mean_decays_like_euler_recursion(simulation, ou):
    result = simulation.run_replicates(ou, np.array([2.0]), 100, 3, range(2000))
    expected = 2.0 * 0.99 ** 100
    assert result.final_states.mean() == pytest.approx(expected, abs=0.1)


def test_divergence_is_reported_with_step_index(simulation):
    with pytest.raises(DivergenceError) as info:
        simulation.euler_maruyama(_explosive_model(), np.array([10.0]), 50, seed=0, step=0.1)
    assert info.value.step_index > 0
    assert info.value.replicate_id == 0


def test_batch_masks_diverged_replicates():
    result = simulate_batch(_explosive_model(), np.array([[10.0], [0.0]]), 0.1, 20, 0, [0, 1])
    assert list(result.alive) == [False, True]
    assert np.isnan(result.final_states[0, 0])
    assert result.final_states[1, 0] == 0.0


def test_window_sum_and_snapshot_observers():
    model = deterministic_model(1)
    window = WindowSumObserver(lambda x: x[:, 0], start=1, stop=4)
    snapshot = SnapshotObserver([2])
    result = simulate_batch(model, np.array([[1.0]]), 0.1, 3, 0, [0], observers=[window, snapshot])
    assert result.observations[0][0] == pytest.approx(0.9 + 0.81 + 0.729)
    assert result.observations[1][0, 0, 0] == pytest.approx(0.81)


def test_invalid_step_is_rejected(simulation, ou):
    with pytest.raises(ArgumentError):
        simulation.euler_maruyama(ou, np.zeros(1), 10, seed=0, step=-1.0)


def test_exact_stationary_sampling_requires_sampler(simulation):
    with pytest.raises(UnsupportedMethodError):
        simulation.sample_stationary(deterministic_model(1), StationaryMethod("exact"), seed=0)


def test_exact_stationary_samples_have_unit_variance(simulation, ou):
    draws = simulation.sample_stationary_batch(ou, StationaryMethod("exact"), 9, range(4000))
    assert draws.shape == (4000, 1)
    assert draws.var() == pytest.approx(1.0, abs=0.1)


def test_default_stationary_method():
    assert StationaryMethod.default_for(ou_model(1)).kind == "exact"
    method = StationaryMethod.default_for(deterministic_model(1))
    assert method.kind == "burnin" and method.T_burn == pytest.approx(20.0)
    with pytest.raises(ArgumentError):
        StationaryMethod("burnin", 0.0)


def test_drift_condition_holds_for_ou(simulation, ou):
    report = simulation.check_drift_condition(ou, [1.0, 5.0, 50.0])
    assert report.holds
    assert report.witness is None


def test_drift_condition_reports_witness_when_violated(simulation):
    report = simulation.check_drift_condition(_explosive_model(), [1.0, 2.0])
    assert not report.holds
    assert report.worst_margin > 0
    assert report.witness is not None


def test_ellipticity_constants_for_ou(simulation, ou):
    lam_minus, lam_plus, trace = simulation.ellipticity_constants(ou, np.array([[1.0], [-3.0]]))
    assert (lam_minus, lam_plus, trace) == pytest.approx((2.0, 2.0, 2.0))


def _tail_explosive_ou():
    def drift(x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 1.0, 50.0 * x ** 3, -x)

    return replace(ou_model(1), drift=drift, stationary_sampler=None, name="tail-explosive")


def test_burnin_losses_are_marked_and_survivors_keep_their_streams(simulation):
    # Senaryo: burn-in'de ıraksayan replikalar ana koşuya girmez ama sonuçta yer alır
    model = _tail_explosive_ou()
    method = StationaryMethod("burnin", 1.0)
    ids = range(200)
    x0s, started = simulation.stationary_starts(model, method, 3, ids)
    assert not started.all() and started.any()
    assert np.isnan(x0s[~started]).all()

    def observers():
        return [WindowSumObserver(lambda x: x[:, 0], 0, 5), SnapshotObserver([2])]

    result = simulation.run_from_stationary(model, method, 5, 8, 3, ids, observer_factory=observers)
    assert result.final_states.shape == (200, 1)
    assert result.observations[1].shape == (1, 200, 1)
    assert not result.alive[~started].any()
    assert (result.diverged_step[~started] == 0).all()

    survivors = np.flatnonzero(started)
    direct = simulation.run_replicates(model, x0s[started], 5, 8, survivors, observer_factory=observers)
    np.testing.assert_array_equal(result.observations[0][started], direct.observations[0])
    np.testing.assert_array_equal(result.observations[1][:, started], direct.observations[1])


def test_all_burnin_paths_lost_is_an_experiment_error(simulation, mocker):
    lost = (np.full((4, 1), np.nan), np.zeros(4, dtype=bool))
    mocker.patch.object(simulation, "stationary_starts", return_value=lost)
    with pytest.raises(ExperimentError):
        simulation.run_from_stationary(ou_model(1), StationaryMethod("burnin", 1.0), 5, 0, 1, range(4))


def test_worker_count_resolves_auto_threads(mocker):
    mocker.patch("src.application.services.simulation.simulation_service.os.cpu_count", return_value=6)
    assert SimulationService(threads=0).worker_count(100) == 6
    assert SimulationService(threads=0).worker_count(2) == 2
    assert SimulationService(threads=3).worker_count(100) == 3


def test_path_observer_requires_observe_and_result():
    class OnlyObserve(PathObserver):
        def observe(self, k, states, alive):
            pass

    with pytest.raises(TypeError):
        PathObserver()
    with pytest.raises(TypeError):
        OnlyObserve()
