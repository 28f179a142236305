from dataclasses import replace

import numpy as np
import pytest

from src.application.services.lasso.diagnostics import (
    cone_probes,
    in_cone,
    l2_distance,
    oracle_check,
    plugin_constants,
    restricted_eigenvalue_probe,
    top_s_indices,
)
from src.application.services.lasso.gram import (
    GramObserver,
    build_dictionary,
    check_growth_L1,
    drift_model,
    gram_and_target,
    psi_matrix,
    systems_from_sums,
)
from src.application.services.lasso.lasso_service import LassoService
from src.application.services.lasso.solver import kkt_residual, lasso_path, lasso_solve, mle, soft_threshold
from src.application.services.registry.model_registry import sparse_linear_matrix, sparse_linear_setup
from src.application.services.simulation.euler_engine import simulate_batch
from src.domain.models.errors import ArgumentError, NumericalError
from src.domain.models.lasso import GramSystem


def _system(Psi, h, T=10.0):
    Psi = np.asarray(Psi, dtype=float)
    return GramSystem(Psi_bar=Psi, h_bar=np.asarray(h, dtype=float), T=T, N=Psi.shape[0])


# -------------------- Çözücü -------------------- #

def test_soft_threshold():
    assert soft_threshold(3.0, 1.0) == 2.0
    assert soft_threshold(-3.0, 1.0) == -2.0
    assert soft_threshold(0.5, 1.0) == 0.0


def test_large_lambda_gives_zero_solution():
    sys = _system(np.eye(2), [0.3, -0.2])
    fit = lasso_solve(sys, lam=0.6)
    np.testing.assert_array_equal(fit.theta_hat, [0.0, 0.0])
    assert fit.kkt_residual == 0.0


def test_two_dimensional_solution_matches_brute_force():
    sys = _system([[2.0, 0.5], [0.5, 1.0]], [1.0, -0.3])
    fit = lasso_solve(sys, lam=0.4)
    grid = np.linspace(-2.0, 2.0, 2001)
    a, b = np.meshgrid(grid, grid, indexing="ij")
    values = 2.0 * a ** 2 + a * b + b ** 2 - 2.0 * (a - 0.3 * b) + 0.4 * (np.abs(a) + np.abs(b))
    assert fit.objective <= values.min() + 1e-9
    best = np.unravel_index(np.argmin(values), values.shape)
    assert fit.theta_hat == pytest.approx([a[best], b[best]], abs=5e-3)
    assert kkt_residual(sys, fit.theta_hat, 0.4) < 1e-6


def test_lasso_path_is_ordered_and_reaches_mle():
    sys = _system([[2.0, 0.5], [0.5, 1.0]], [1.0, -0.3])
    fits = lasso_path(sys, [0.0, 1.0, 0.4])
    assert [f.lam for f in fits] == [1.0, 0.4, 0.0]
    np.testing.assert_allclose(fits[-1].theta_hat, mle(sys), atol=1e-7)
    assert LassoService.l1_path_summary(fits)[0]["lambda"] == 1.0


def test_solver_rejects_bad_input():
    sys = _system(np.eye(2), [1.0, 1.0])
    with pytest.raises(ArgumentError):
        lasso_solve(sys, lam=-1.0)
    with pytest.raises(ArgumentError):
        lasso_solve(_system([[0.0, 0.0], [0.0, 1.0]], [1.0, 1.0]), lam=0.1)
    with pytest.raises(ArgumentError):
        lasso_path(sys, [])


def test_mle_on_singular_system():
    with pytest.raises(NumericalError):
        mle(_system([[1.0, 1.0], [1.0, 1.0]], [1.0, 1.0]))


def test_gram_system_rejects_asymmetric_matrix():
    with pytest.raises(ArgumentError):
        _system([[1.0, 0.5], [0.0, 1.0]], [0.0, 0.0])


# -------------------- Gram sistemi -------------------- #

def test_psi_matrix_for_linear_dictionary_in_one_dimension():
    dictionary = build_dictionary(1, [(-1.0, 1.0)])
    sigma = lambda x: np.broadcast_to(np.array([[2.0]]), np.asarray(x).shape[:-1] + (1, 1))  # noqa: E731
    # psi(x) = x, a0^{-1} = 1/4
    assert psi_matrix(dictionary, sigma, np.array([3.0]))[0, 0] == pytest.approx(9.0 / 4.0)


def test_observer_sums_match_stored_trajectory(simulation):
    # Senaryo: aynı yol hem saklanarak hem de gözlemciyle işleniyor
    model, dictionary, _ = sparse_linear_setup(d=2)
    traj = simulation.euler_maruyama(model, np.zeros(2), 500, seed=9, replicate_id=1)
    direct = gram_and_target(traj, dictionary, model.diffusion)

    observer = GramObserver(dictionary, model.diffusion)
    result = simulate_batch(model, np.zeros((1, 2)), traj.step, 500, 9, [1], observers=[observer])
    streamed = systems_from_sums(result.observations[0], 500, traj.step)[0]

    np.testing.assert_allclose(streamed.Psi_bar, direct.Psi_bar, rtol=1e-9, atol=1e-12)
    np.testing.assert_allclose(streamed.h_bar, direct.h_bar, rtol=1e-9, atol=1e-12)
    assert streamed.T == pytest.approx(direct.T)


def test_gram_and_target_rejects_dimension_mismatch(simulation, ou):
    traj = simulation.euler_maruyama(ou, np.zeros(1), 10, seed=0)
    with pytest.raises(ArgumentError):
        gram_and_target(traj, build_dictionary(2, [(-1.0, 1.0)]), ou.diffusion)


def test_drift_model_reproduces_sparse_linear_drift():
    model, dictionary, theta0 = sparse_linear_setup(d=3)
    rebuilt = drift_model(dictionary, theta0, model.diffusion, model.ergodicity)
    x = np.array([[1.0, -2.0, 0.5], [0.0, 3.0, 1.0]])
    np.testing.assert_allclose(rebuilt.drift(x), model.drift(x))


def test_growth_condition_for_linear_dictionary():
    model, dictionary, _ = sparse_linear_setup(d=2)
    report = check_growth_L1(dictionary, model.diffusion, 1.0, [[0.0, 0.0], [1.0, 2.0], [10.0, -3.0]])
    assert report.holds
    violated = check_growth_L1(dictionary, model.diffusion, 0.01, [[10.0, 10.0]])
    assert not violated.holds
    assert violated.witness == (10.0, 10.0)


# -------------------- Tanılar -------------------- #

def test_top_s_indices_breaks_ties_by_index():
    np.testing.assert_array_equal(top_s_indices(np.array([1.0, -1.0, 0.5]), 1), [0])
    np.testing.assert_array_equal(top_s_indices(np.array([0.1, -3.0, 2.0]), 2), [1, 2])


def test_in_cone():
    zeta = np.array([1.0, 0.1, 0.0])
    assert in_cone(zeta, 1, 0.2)
    assert not in_cone(zeta, 1, 0.05)


def test_cone_probes_lie_in_cone():
    probes = cone_probes(N=6, s=2, c0=3.0, n_probe=100, seed=1)
    assert probes.shape == (112, 6)
    assert all(in_cone(p, 2, 3.0) for p in probes)
    with pytest.raises(ArgumentError):
        cone_probes(N=6, s=2, c0=3.0, n_probe=50, seed=1)


def test_restricted_eigenvalue_of_identity_is_one():
    value, witness = restricted_eigenvalue_probe(_system(np.eye(4), np.zeros(4)), s=2, c0=1.0, n_probe=100)
    assert value == pytest.approx(1.0)
    assert witness.shape == (4,)


def test_oracle_check_and_plugin_constants():
    sys = _system([[2.0, 0.0], [0.0, 1.0]], [1.0, 0.0])
    fit = lasso_solve(sys, lam=0.2)
    e_inf, D_inf = plugin_constants(sys)
    assert (e_inf, D_inf) == pytest.approx((1.0, 2.0))
    lhs, rhs, holds = oracle_check(fit, np.array([0.5, 0.0]), sys, 1, e_inf)
    assert lhs == pytest.approx(l2_distance(fit.theta_hat, [0.5, 0.0], sys))
    assert rhs == pytest.approx(0.2 ** 2 * 2.0)
    assert holds
    with pytest.raises(NumericalError):
        plugin_constants(_system([[1.0, 2.0], [2.0, 1.0]], [0.0, 0.0]))


# -------------------- Servis -------------------- #

def test_fit_recovers_negative_drift_on_ou(simulation, ou):
    traj = simulation.euler_maruyama(ou, np.zeros(1), 40_000, seed=6)
    system, fit = LassoService(simulation).fit(traj, build_dictionary(1, [(-1.0, 1.0)]), ou.diffusion, lam=0.01)
    assert system.T == pytest.approx(400.0)
    assert fit.theta_hat[0] == pytest.approx(-1.0, abs=0.3)


def test_default_lambda_uses_plugin_constants(simulation, ou):
    traj = simulation.euler_maruyama(ou, np.zeros(1), 5_000, seed=6)
    system, fit = LassoService(simulation).fit(traj, build_dictionary(1, [(-1.0, 1.0)]), ou.diffusion)
    assert fit.lam == pytest.approx(LassoService.default_lambda(system))


def test_oracle_experiment_on_small_sparse_linear_model(simulation):
    model, dictionary, theta0 = sparse_linear_setup(d=2)
    experiment = LassoService(simulation).oracle_experiment(
        model, dictionary, theta0, model.diffusion, T=20.0, replicates=4, seed=3
    )
    assert experiment.s0 == 4
    assert len(experiment.records) == 4
    assert experiment.T == pytest.approx(20.0)
    assert all(r.rhs > 0 and r.lam > 0 for r in experiment.records)
    assert 0.0 <= experiment.holds_fraction <= 1.0


def test_oracle_experiment_rejects_wrong_theta_size(simulation):
    model, dictionary, _ = sparse_linear_setup(d=2)
    with pytest.raises(ArgumentError):
        LassoService(simulation).oracle_experiment(model, dictionary, np.zeros(3), model.diffusion, 1.0, 1, 0)


def test_oracle_error_halves_when_T_doubles(simulation):
    # Senaryo: hızlı karışan doğrusal model, tüm gerçek katsayılar aktif kalır;
    # lambda^2 ~ 1/T olduğundan medyan hata T iki katına çıkınca en az %40 düşer
    model, dictionary, _ = sparse_linear_setup(d=2)
    A = 9.0 * sparse_linear_matrix(2)
    fast = replace(
        model, drift=lambda x: np.asarray(x, dtype=float) @ A.T, stationary_sampler=None, name="fast-linear"
    )
    service = LassoService(simulation)
    theta0 = A.reshape(-1)

    short = service.oracle_experiment(fast, dictionary, theta0, fast.diffusion, T=200.0, replicates=50, seed=21)
    long = service.oracle_experiment(fast, dictionary, theta0, fast.diffusion, T=400.0, replicates=50, seed=21)

    assert short.holds_fraction >= 0.9
    assert long.holds_fraction >= 0.9
    assert long.median_error <= 0.6 * short.median_error
