import math

import numpy as np
import pytest

from src.domain.models.diffusion import DiffusionModel, ErgodicityParams, constant_diffusion
from src.domain.models.errors import ArgumentError, EvaluationError


def _params(**overrides):
    values = dict(q=-1.0, q_prime=1.0, M0=0.0, r_frak=1.0, lambda_minus=2.0, lambda_plus=2.0, Lambda_cap=2.0)
    values.update(overrides)
    return ErgodicityParams.with_default_iota(**values)


def test_default_iota_satisfies_admissibility():
    params = _params()
    # q+ = 0 -> iota = r / lambda_+ = 0.5 ve r > iota * lambda_+ / 2 = 0.5 sağlanır
    assert params.iota == pytest.approx(0.5)
    assert params.r_frak > params.iota * params.lambda_plus * (1.0 - params.q_plus()) / 2.0


def test_iota_too_large_is_rejected():
    with pytest.raises(ArgumentError):
        ErgodicityParams(q=0.0, q_prime=0.0, M0=0.0, r_frak=1.0, lambda_minus=1.0, lambda_plus=1.0,
                         Lambda_cap=1.0, iota=2.0)


@pytest.mark.parametrize("q", [-1.5, 1.0])
def test_q_outside_range_is_rejected(q):
    with pytest.raises(ArgumentError):
        ErgodicityParams(q=q, q_prime=0.0, M0=0.0, r_frak=1.0, lambda_minus=1.0, lambda_plus=1.0,
                         Lambda_cap=1.0, iota=0.1)


def test_lambda_minus_cannot_exceed_lambda_plus():
    with pytest.raises(ArgumentError):
        _params(lambda_minus=3.0, lambda_plus=2.0)


def test_iota_prime_for_q_zero():
    params = _params(q=0.0, q_prime=0.0)
    # q+ = 0: iota' = iota * (r - lambda_+ iota / 2)
    expected = params.iota * (params.r_frak - params.lambda_plus * params.iota / 2.0)
    assert params.iota_prime() == pytest.approx(expected)
    assert params.default_iota_dd() == pytest.approx(0.5 * expected)


def test_lyapunov_is_exponential_of_norm():
    params = _params()
    x = np.array([[3.0, 4.0]])
    assert params.lyapunov(x)[0] == pytest.approx(math.exp(params.iota * 5.0))


def test_validate_detects_non_elliptic_diffusion():
    model = DiffusionModel(
        dim=1,
        drift=lambda x: -x,
        diffusion=constant_diffusion(np.array([[0.5]])),
        ergodicity=_params(),
        name="weak-noise",
    )
    with pytest.raises(EvaluationError) as info:
        model.validate(np.array([[1.0], [2.0]]))
    assert info.value.point is not None


def test_validate_detects_non_finite_drift():
    model = DiffusionModel(
        dim=1,
        drift=lambda x: np.where(x > 5.0, np.inf, -x),
        diffusion=constant_diffusion(np.array([[math.sqrt(2.0)]])),
        ergodicity=_params(),
        name="blowup",
    )
    with pytest.raises(EvaluationError) as info:
        model.validate(np.array([[1.0], [10.0]]))
    assert info.value.point == [10.0]


def test_constant_diffusion_broadcasts_over_batch():
    sigma = constant_diffusion(np.eye(2))
    assert sigma(np.zeros((5, 2))).shape == (5, 2, 2)
