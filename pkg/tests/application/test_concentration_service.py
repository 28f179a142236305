from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import numpy as np
import pytest

from src.application.services.concentration.concentration_service import ConcentrationLabService
from src.application.services.registry.model_registry import deterministic_model, ou_model
from src.application.services.simulation.simulation_service import SimulationService, StationaryMethod
from src.domain.models.calibration import PACRequest
from src.domain.models.errors import ArgumentError, ExperimentError
from src.domain.models.function_class import coordinate_function


@pytest.fixture
def lab(simulation):
    return ConcentrationLabService(simulation)


def test_tail_experiment_on_ou(lab, ou):
    table = lab.run_tail_experiment(ou, coordinate_function(0), 2.0, 200, None, 1, [0.5, 1.0, 2.0])
    assert table.replicates == 200
    assert table.diverged == 0
    assert table.metadata["init"] == "exact"
    assert table.metadata["t"] == pytest.approx(2.0)
    assert list(table.exceed_fraction) == sorted(table.exceed_fraction, reverse=True)


def test_tail_experiment_does_not_depend_on_batch_size(ou):
    # Senaryo: aynı deney iki farklı grup boyutuyla koşturuluyor
    small = ConcentrationLabService(SimulationService(euler_step=1e-2, batch_size=7, threads=3))
    large = ConcentrationLabService(SimulationService(euler_step=1e-2, batch_size=256, threads=1))
    a = small.run_tail_experiment(ou, coordinate_function(0), 1.0, 120, None, 5, [1.0])
    b = large.run_tail_experiment(ou, coordinate_function(0), 1.0, 120, None, 5, [1.0])
    np.testing.assert_array_equal(a.sorted_values, b.sorted_values)


def test_tail_experiment_requires_enough_replicates(lab, ou):
    with pytest.raises(ArgumentError):
        lab.run_tail_experiment(ou, coordinate_function(0), 1.0, 50, None, 0, [1.0])


def test_discrete_tail_experiment(lab, ou):
    table = lab.run_discrete_tail_experiment(ou, coordinate_function(0), 40, 0.05, 100, None, 2, [1.0])
    assert table.replicates == 100
    assert table.metadata["n"] == 40
    with pytest.raises(ArgumentError):
        lab.run_discrete_tail_experiment(ou, coordinate_function(0), 40, 0.015, 100, None, 2, [1.0])


def test_second_moment_of_functional_on_ou(lab, ou):
    # t = 2 için E[G_t(x)^2] = 2 (1 - (1 - e^{-2}) / 2) ~ 1.135
    values, diverged = lab.functional_values(ou, coordinate_function(0), 2.0, 400, StationaryMethod("exact"), 3)
    assert diverged == 0
    assert np.mean(values ** 2) == pytest.approx(1.135, abs=0.35)


def test_pac_coverage_with_fake_estimator(lab):
    def estimator(run_id, seed):
        return 0.0 if run_id % 2 == 0 else 5.0

    report = lab.pac_coverage(estimator, target=0.0, req=PACRequest(0.1, 0.05), runs=20, seed=0)
    assert report.runs == 20
    assert report.within_eps == 10
    assert report.coverage == pytest.approx(0.5)
    assert report.verdict == "fail"


def test_pac_coverage_requires_twenty_runs(lab):
    with pytest.raises(ArgumentError):
        lab.pac_coverage(lambda rid, seed: 0.0, 0.0, PACRequest(0.1, 0.05), runs=5, seed=0)


def test_burnin_coverage_on_deterministic_model(lab):
    report = lab.burnin_coverage(
        deterministic_model(1), coordinate_function(0), v=5.0, t=5.0, target=0.0,
        req=PACRequest(0.01, 0.05), runs=20, seed=0, x0=np.array([1.0]),
    )
    assert report.coverage == pytest.approx(1.0)
    assert report.verdict == "pass"


def test_discretisation_rms_grows_with_delta(lab, ou):
    rows = lab.discretisation_rms(ou, coordinate_function(0), 2.0, [0.02, 0.1, 0.5], 200, seed=4)
    rms = [row["rms"] for row in rows]
    assert rms[0] < rms[1] < rms[2]
    with pytest.raises(ArgumentError):
        lab.discretisation_rms(ou, coordinate_function(0), 2.0, [0.3], 100, seed=4)


def _tail_explosive_ou():
    """x > 1 bölgesinde 50 x^3 drift: oraya ulaşan yol birkaç adımda ıraksar."""
    base = ou_model(1)

    def drift(x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 1.0, 50.0 * x ** 3, -x)

    return replace(base, drift=drift, stationary_sampler=None, name="tail-explosive")


def _starts_with_losses(replicates, lost):
    x0s = np.zeros((replicates, 1))
    started = np.ones(replicates, dtype=bool)
    x0s[lost] = np.nan
    started[lost] = False
    return x0s, started


def test_burnin_losses_are_excluded_and_counted(lab, simulation, ou, mocker):
    # Senaryo: 400 replikadan 3'ü burn-in sırasında ıraksıyor (%0.75 < %1)
    lost = [5, 17, 300]
    full = _starts_with_losses(400, [])
    mocker.patch.object(simulation, "stationary_starts", side_effect=[_starts_with_losses(400, lost), full])
    method = StationaryMethod("burnin", 1.0)

    values, diverged = lab.functional_values(ou, coordinate_function(0), 0.5, 400, method, 2)
    reference, _ = lab.functional_values(ou, coordinate_function(0), 0.5, 400, method, 2)

    assert diverged == 3
    assert values.size == 397
    np.testing.assert_array_equal(values, np.delete(reference, lost))


def test_burnin_losses_count_towards_divergence_limit(lab, simulation, ou, mocker):
    mocker.patch.object(simulation, "stationary_starts", return_value=_starts_with_losses(100, [1, 2]))
    with pytest.raises(ExperimentError):
        lab.run_tail_experiment(ou, coordinate_function(0), 0.5, 100, StationaryMethod("burnin", 1.0), 0, [1.0])


def test_explosive_burnin_is_a_runtime_error(lab):
    # Senaryo: burn-in yollarının bir kısmı ıraksıyor; sonuç kullanım hatası değil deney hatası
    with pytest.raises(ExperimentError):
        lab.functional_values(
            _tail_explosive_ou(), coordinate_function(0), 0.05, 400, StationaryMethod("burnin", 1.0), 3
        )


def test_pac_coverage_uses_all_cores_when_threads_is_auto(mocker):
    # Senaryo: threads=0 -> os.cpu_count()
    mocker.patch("src.application.services.simulation.simulation_service.os.cpu_count", return_value=6)
    pool = mocker.patch(
        "src.application.services.concentration.concentration_service.ThreadPoolExecutor",
        wraps=ThreadPoolExecutor,
    )
    auto = ConcentrationLabService(SimulationService(euler_step=1e-2, threads=0))
    auto.pac_coverage(lambda rid, seed: 0.0, 0.0, PACRequest(0.1, 0.05), runs=20, seed=0)
    assert pool.call_args.kwargs["max_workers"] == 6
