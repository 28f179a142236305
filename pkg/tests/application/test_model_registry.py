import numpy as np
import pytest

from src.application.services.registry.model_registry import (
    BuiltinModelRegistry,
    ou_scaled_model,
    sparse_linear_matrix,
)
from src.application.services.simulation.simulation_service import StationaryMethod
from src.domain.models.errors import ArgumentError


@pytest.fixture
def registry():
    return BuiltinModelRegistry()


def test_catalogue_names(registry):
    assert registry.model_names() == ["deterministic", "heavy-drift", "ou", "ou-scaled", "sparse-linear", "subexp"]
    assert registry.lasso_model_names() == ["sparse-linear"]


def test_unknown_names_and_parameters_are_rejected(registry):
    with pytest.raises(ArgumentError):
        registry.get_model("ou2")
    with pytest.raises(ArgumentError):
        registry.get_model("ou", {"theta": 2.0})
    with pytest.raises(ArgumentError):
        registry.get_function("x3")


def test_integer_parameters_must_be_integral(registry):
    assert registry.get_model("ou", {"d": "3"}).dim == 3
    with pytest.raises(ArgumentError):
        registry.get_model("ou", {"d": 2.5})


def test_sparse_linear_setup(registry):
    model, dictionary, theta0 = registry.get_lasso_setup("sparse-linear", {"d": 4})
    assert dictionary.N == 16
    assert np.count_nonzero(theta0) == 4 + 2
    x = np.array([[0.5, -1.0, 2.0, 0.0]])
    np.testing.assert_allclose(dictionary.drift(theta0, x), model.drift(x))


def test_sparse_linear_matrix_is_stable():
    A = sparse_linear_matrix(3)
    assert np.linalg.eigvalsh(A).max() == pytest.approx(-0.7)
    with pytest.raises(ArgumentError):
        sparse_linear_matrix(1)


def test_ou_scaled_stationary_variance(simulation):
    model = ou_scaled_model(theta=2.0, s=1.0)
    draws = simulation.sample_stationary_batch(model, StationaryMethod("exact"), 1, range(5000))
    assert draws.var() == pytest.approx(0.25, abs=0.03)
    assert model.ergodicity.lambda_plus == pytest.approx(1.0)


@pytest.mark.parametrize("name", ["ou", "ou-scaled", "heavy-drift", "subexp", "sparse-linear", "deterministic"])
def test_builtin_models_satisfy_drift_condition(registry, simulation, name):
    model = registry.get_model(name)
    M0 = model.ergodicity.M0
    report = simulation.check_drift_condition(model, [max(M0, 1.0), 5.0, 50.0])
    assert report.holds


def test_potentials_and_functions(registry):
    heavy = registry.get_potential("heavy", {"q": 0.25})
    assert heavy.q == 0.25
    assert registry.get_potential("gaussian", {"d": 2}).dim == 2
    f = registry.get_function("x2", {"offset": 1.0})
    assert f(np.array([[1.0, 1.0]]))[0] == pytest.approx(1.0)
