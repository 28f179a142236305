import math

import pytest

from src.application.services.bounds import (
    burnin_length_continuous,
    burnin_length_discrete,
    cattiaux_c,
    cattiaux_threshold,
    cattiaux_u_window,
    choose_discrete_exponents,
    continuous_moment_bound,
    continuous_tail_threshold,
    discrete_moment_bound,
    ergodicity_tv_bound,
    gram_deviation_tail,
    kappa,
    lasso_lambda_min,
    lasso_T0,
    mu_moment_constant,
    oracle_bound,
    rate_exponent,
    sample_length_continuous,
    sample_size_discrete,
    sparse_oracle_rhs,
    table_order_step,
    ula_tuning,
    ula_tuning_check,
    ula_tv_bound,
    ula_tv_tuning,
)
from src.application.services.registry.model_registry import ou_model
from src.domain.models.calibration import CalibrationConstants, PACRequest
from src.domain.models.errors import ArgumentError, RegimeError

REQ = PACRequest(0.1, 0.05)


# -------------------- Üsler -------------------- #

def test_rate_exponent_bounded_and_unbounded():
    assert rate_exponent(0.0, 0.5, 0.0) == pytest.approx(0.5)
    assert rate_exponent(0.0, -0.5, 3.0) == pytest.approx(1.0)
    assert rate_exponent(1.0, 0.0, 0.0) == pytest.approx(2.5)


def test_kappa_reference_values():
    assert kappa(0.0, 0.0) == pytest.approx(2.0 / 3.0)
    assert kappa(0.5, 1.0) == pytest.approx(1.0 / (6.0 + 1.0 + 3.0 - 0.5))
    with pytest.raises(ArgumentError):
        kappa(0.0, 1.5)


def test_cattiaux_constant_reference_values():
    assert cattiaux_c(0.0, 1.0) == pytest.approx(0.5)
    assert cattiaux_c(0.5, 1.0) == pytest.approx(math.sqrt(3.0) / 2.0)
    with pytest.raises(ArgumentError):
        cattiaux_c(0.0, 0.0)


def test_mu_moment_constant_formula():
    expected = math.exp(math.e / 2.0 + 1.0 / 12.0) / math.e * math.sqrt(2.0 * math.pi)
    assert mu_moment_constant(0.0, 1.0, 1.0) == pytest.approx(expected)
    with pytest.raises(ArgumentError):
        mu_moment_constant(0.0, 1.0, 0.5)


def test_discrete_exponents_for_linear_drift_use_alpha():
    choice = choose_discrete_exponents(-1.0, 1.0, 1.0, 0.0)
    assert choice.r is None
    assert choice.gamma_tilde == choice.alpha == 2.0
    assert choice.is_feasible(-1.0)


def test_discrete_exponents_grid_search_is_feasible_and_optimal():
    choice = choose_discrete_exponents(0.5, 0.0, 1.0, 0.0, eta1=2.0)
    assert 1.05 <= choice.r <= 20.0
    assert choice.is_feasible(0.5)
    forced = choose_discrete_exponents(0.5, 0.0, 1.0, 0.0, eta1=2.0, r=2.0)
    assert forced.r == 2.0
    assert choice.rho <= forced.rho + 1e-12


def test_discrete_exponents_reject_r_at_most_one():
    with pytest.raises(ArgumentError):
        choose_discrete_exponents(0.0, 0.0, 1.0, 0.0, r=1.0)


# -------------------- Sürekli veri -------------------- #

def test_moment_and_tail_thresholds():
    assert continuous_moment_bound(4.0, 2.0, 3.0, 0.0, 0.0, 0.0) == pytest.approx(2.0 * 3.0 * 4.0)
    assert continuous_tail_threshold(2.0, 1.0, 1.0, 0.0, 0.0, 0.0) == pytest.approx(2.0 * math.e)
    with pytest.raises(ArgumentError):
        continuous_tail_threshold(1.0, 1.0, 1.0, 0.0, 0.0, 0.0)


def test_sample_length_unbounded_formula():
    sigma = rate_exponent(1.0, 0.0, 0.0)
    expected = (math.e * math.log(20.0) ** sigma / 0.1) ** 2
    assert sample_length_continuous(REQ, 1.0, 0.0, 0.0, 1.0, CalibrationConstants()) == pytest.approx(expected)


def test_sample_length_bounded_formula():
    consts = CalibrationConstants(iota_dd=1.0)
    c = cattiaux_c(0.0, 1.0)
    expected = ((math.log(2.0 / 0.05) / c + 1.0) / min(1.0, 0.1 / 2.0)) ** 2
    assert sample_length_continuous(REQ, 0.0, 0.0, 0.0, 1.0, consts) == pytest.approx(expected)


def test_sample_length_decreases_with_epsilon():
    consts = CalibrationConstants()
    coarse = sample_length_continuous(PACRequest(0.2, 0.05), 1.0, 0.0, 0.0, 1.0, consts)
    fine = sample_length_continuous(PACRequest(0.1, 0.05), 1.0, 0.0, 0.0, 1.0, consts)
    assert fine > coarse


def test_sample_length_regime_boundaries():
    consts = CalibrationConstants(iota_dd=1.0)
    with pytest.raises(RegimeError):
        sample_length_continuous(PACRequest(0.1, 0.8), 0.0, 0.0, 0.0, 1.0, consts)
    with pytest.raises(RegimeError):
        sample_length_continuous(PACRequest(0.1, 0.2), 1.0, 0.0, 0.0, 1.0, consts)


def test_bounded_regime_requires_iota_dd():
    with pytest.raises(ArgumentError):
        sample_length_continuous(REQ, 0.0, 0.0, 0.0, 1.0, CalibrationConstants())


def test_burnin_lengths():
    consts = CalibrationConstants(iota_dd=0.5)
    v = burnin_length_continuous(REQ, 1.0, 0.0, consts)
    assert v == pytest.approx(max(1.0, math.log(2.0 / 0.05) / 0.5))
    m = burnin_length_discrete(REQ, 0.1, 0.0, consts)
    assert m == math.ceil(math.log(2.0 / 0.05) / (0.5 * 0.1))


def test_cattiaux_threshold_and_window():
    threshold = cattiaux_threshold(3.0, 100.0, 0.0, 1.0, 1.0)
    assert threshold == pytest.approx(2.0 * (3.0 / 0.5 + 0.1))
    lower, upper = cattiaux_u_window(100.0, 0.0, 1.0, 1.0)
    assert lower == pytest.approx(1.0)
    assert upper == pytest.approx(0.5 * 100.0 / 10.0)


def test_ergodicity_tv_bound_decreases_in_time():
    params = ou_model(1).ergodicity
    early = ergodicity_tv_bound(1.0, 0.5, params)
    late = ergodicity_tv_bound(10.0, 0.5, params)
    assert late < early
    assert ergodicity_tv_bound(0.0, 0.0, params) == pytest.approx(1.0)


# -------------------- Ayrık veri -------------------- #

def test_discrete_moment_bound_formula():
    choice = choose_discrete_exponents(-1.0, 1.0, 1.0, 0.0)
    consts = CalibrationConstants(D_frak=2.0)
    value = discrete_moment_bound(100, 0.01, 4.0, consts, choice, 0.0, -1.0, 1.0)
    sigma = rate_exponent(0.0, -1.0, 1.0)
    expected = 2.0 * (10.0 * 0.01 ** 1.5 + 0.01 * 4.0 ** choice.rho + 4.0 ** sigma)
    assert value == pytest.approx(expected)


def test_sample_size_discrete_regimes():
    consts = CalibrationConstants()
    n_min, choice = sample_size_discrete(REQ, 0.001, 0.0, -1.0, 1.0, 1.0, 0.0, consts)
    assert n_min > 0
    assert choice.r is None
    with pytest.raises(RegimeError):
        sample_size_discrete(REQ, 0.1, 0.0, -1.0, 1.0, 1.0, 0.0, consts)
    with pytest.raises(RegimeError):
        sample_size_discrete(PACRequest(0.1, 0.5), 0.001, 0.0, -1.0, 1.0, 1.0, 0.0, consts)


# -------------------- Lasso -------------------- #

def test_lasso_lambda_min_formula():
    expected = 2.0 * math.sqrt(3.0 / 100.0 * math.log(1500.0))
    assert lasso_lambda_min(100.0, 25, 0.1, 1.0, 1.0) == pytest.approx(expected)
    with pytest.raises(ArgumentError):
        lasso_lambda_min(100.0, 1, 10.0, 1.0, 1.0)


def test_lasso_T0_grows_as_eps0_shrinks():
    loose = lasso_T0(0.5, 2, 3.0, 1.0, 0.0, 0.0, 4, 1.0)
    tight = lasso_T0(0.01, 2, 3.0, 1.0, 0.0, 0.0, 4, 1.0)
    assert tight > loose > 0


def test_oracle_right_hand_sides():
    assert sparse_oracle_rhs(0.5, 3, 2.0) == pytest.approx(0.75)
    assert oracle_bound(0.0, 3, 0.5, 2.0, 1.0) == pytest.approx(2.0 * 4.0 * 9.0 / (2.0 * 2.0) * 3 * 0.25)


def test_gram_deviation_tail_requires_large_R():
    assert 0.0 < gram_deviation_tail(100.0, 1.0, 1.0, 1.0, 0.0, 0.0) < 1.0
    with pytest.raises(ArgumentError):
        gram_deviation_tail(100.0, 0.1, 1.0, 1.0, 0.0, 0.0)


# -------------------- ULA -------------------- #

def _ula_args():
    return dict(q=0.5, eta1=2.0, eta2=1.0, eta3=0.0, d=1, L_lip=1.0, grad_sup=1.0)


def test_ula_tuning_satisfies_its_own_constraints():
    consts = CalibrationConstants(iota_dd=0.1)
    args = _ula_args()
    tuning = ula_tuning(REQ, consts=consts, **args)
    assert tuning.delta_step == pytest.approx(0.9 * min(tuning.caps))
    assert tuning.n >= 1 and tuning.m >= 1
    checks = ula_tuning_check(tuning, REQ, consts=consts, **args)
    assert all(checks.values())


def test_ula_tuning_rejects_non_heavy_q_and_bad_regime():
    consts = CalibrationConstants(iota_dd=0.1)
    args = _ula_args()
    args["q"] = -0.5
    with pytest.raises(ArgumentError):
        ula_tuning(REQ, consts=consts, **args)
    with pytest.raises(RegimeError):
        ula_tuning(PACRequest(0.1, 0.9), consts=consts, **_ula_args())


def test_ula_tv_tuning_meets_target():
    consts = CalibrationConstants(iota_dd=0.2)
    step, n, bound = ula_tv_tuning(0.1, 0.5, 1, 1.0, 1.0, consts)
    assert step > 0 and n >= 1
    assert bound <= 0.1 * (1.0 + 1e-9)
    assert bound == pytest.approx(ula_tv_bound(n, step, 1.0, 0.5, 1, 1.0, 1.0, consts))


def test_table_order_step_formula():
    sigma = rate_exponent(2.0, 0.5, 0.0)
    expected = (0.05 * 0.1) ** 2 / 2 * math.log(20.0) ** (-2.0 * sigma)
    assert table_order_step(REQ, 0.5, 2.0, 2) == pytest.approx(expected)


# -------------------- Elle hesaplanmış referans değerler -------------------- #

EXACT = 1e-9


def test_sample_length_unbounded_reference_case():
    # eta=1, q=0, q'=1 -> varsigma = 3.5; (e * 4^3.5 / 0.1)^2
    value = sample_length_continuous(PACRequest(0.1, math.exp(-4.0)), 1.0, 0.0, 1.0, 1.0, CalibrationConstants())
    assert value == pytest.approx((math.e * 128.0 / 0.1) ** 2, rel=EXACT)
    assert value == pytest.approx(1.2107e7, rel=1e-4)


def test_sample_length_bounded_reference_case():
    # ((log(2/delta) / c + 1) / (eps / 2))^2 = ((2 * 4 + 1) / 0.05)^2
    consts = CalibrationConstants(iota_dd=1.0)
    value = sample_length_continuous(PACRequest(0.1, 2.0 * math.exp(-4.0)), 0.0, 0.0, 0.0, 1.0, consts)
    assert value == pytest.approx(32400.0, rel=EXACT)


def test_forced_r2_exponent_pairs():
    choice = choose_discrete_exponents(0.0, 1.0, 1.0, 0.0, r=2.0)
    assert choice.alpha == 2.0
    assert choice.gamma_tilde == pytest.approx(5.0, rel=1e-5)
    assert choice.rho == pytest.approx(5.0, rel=1e-5)
    assert choice.is_feasible(0.0)

    flat = choose_discrete_exponents(0.0, 0.0, 0.0, 0.0, r=2.0)
    assert flat.alpha == 0.0
    assert flat.gamma_tilde == pytest.approx(3.0, rel=1e-5)
    assert flat.rho == pytest.approx(2.0, rel=1e-5)


def test_sample_size_discrete_reference_case():
    # ikinci dal baskın: 0.01 * 4^5 < 4^3.5 = 128 -> (3 e 128 / 0.1)^2 / 0.01
    n_min, choice = sample_size_discrete(
        PACRequest(0.1, math.exp(-4.0)), 0.01, 1.0, 0.0, 1.0, 1.0, 0.0, CalibrationConstants(), r=2.0
    )
    assert choice.sigma_tilde == pytest.approx(3.5, rel=EXACT)
    assert n_min == pytest.approx((3.0 * math.e * 128.0 / 0.1) ** 2 / 0.01, rel=EXACT)
    assert n_min == pytest.approx(1.0902e10, rel=1e-3)


def test_discrete_moment_bound_reference_case():
    choice = choose_discrete_exponents(0.0, 1.0, 1.0, 0.0, r=2.0)
    value = discrete_moment_bound(100, 0.1, 2.0, CalibrationConstants(), choice, 1.0, 0.0, 1.0)
    expected = 10.0 * 0.1 ** 1.5 + 0.1 * 2.0 ** choice.rho + 2.0 ** 3.5
    assert value == pytest.approx(expected, rel=EXACT)
    assert value == pytest.approx(14.830, abs=1e-3)


def test_lasso_T0_reference_case():
    # (2 log 21 + 1)^3 * 18^2 * 3^2 * e^2
    value = lasso_T0(math.exp(-1.0), 1, 1.0, 1.0, 0.0, 0.0, 1, 1.0)
    expected = (2.0 * math.log(21.0) + 1.0) ** 3 * 18.0 ** 2 * 9.0 * math.e ** 2
    assert value == pytest.approx(expected, rel=EXACT)
    assert value == pytest.approx(7.68e6, rel=1e-3)


def test_lasso_T0_scales_with_c_squared():
    base = lasso_T0(0.1, 2, 1.0, 1.0, 0.0, 0.0, 5, 1.0)
    assert lasso_T0(0.1, 2, 1.0, 3.0, 0.0, 0.0, 5, 1.0) == pytest.approx(9.0 * base, rel=EXACT)


def test_lasso_lambda_min_reference_case():
    # log(6N / eps0) = 1 için 2 sqrt(3 / 3)
    assert lasso_lambda_min(3.0, 1, 6.0 / math.e, 1.0, 1.0) == pytest.approx(2.0, rel=EXACT)
    assert lasso_lambda_min(12.0, 1, 6.0 / math.e, 1.0, 1.0) == pytest.approx(1.0, rel=EXACT)


def test_ula_tv_bound_reference_case():
    consts = CalibrationConstants(iota_dd=1.0)
    value = ula_tv_bound(10_000, 1e-3, 1.0, 0.5, 1, 1.0, 0.0, consts)
    expected = math.exp(-(10.0 ** (1.0 / 3.0))) + math.sqrt(1e4 * 1e-6 / 2.0)
    assert value == pytest.approx(expected, rel=EXACT)
    assert value == pytest.approx(0.1866, abs=5e-4)
    assert ula_tv_bound(0, 1e-3, 1.0, 0.5, 1, 1.0, 0.0, consts) == pytest.approx(1.0, rel=EXACT)


def test_kappa_reference_cases():
    assert kappa(-1.0, 0.0) == pytest.approx(2.0, rel=EXACT)
    assert kappa(0.5, 1.0) == pytest.approx(1.0 / 9.5, rel=EXACT)
