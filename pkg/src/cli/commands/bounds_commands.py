# src/cli/commands/bounds_commands.py

from __future__ import annotations

from src.application.container import AppContainer
from src.application.services.bounds import (
    burnin_length_continuous,
    burnin_length_discrete,
    cattiaux_c,
    cattiaux_threshold,
    cattiaux_u_window,
    choose_discrete_exponents,
    discrete_moment_bound,
    ergodicity_tv_bound,
    kappa,
    lasso_lambda_min,
    lasso_T0,
    mu_moment_constant,
    rate_exponent,
    sample_length_continuous,
    sample_size_discrete,
    table_order_step,
    ula_tuning,
    ula_tv_bound,
    ula_tv_tuning,
)
from src.cli.commands.base import CommandResult, constants_from, fmt, mapping_result, resolve_model, scalar_result
from src.cli.config_parser import RunConfig
from src.domain.models.calibration import CalibrationConstants, PACRequest

# Model verilmeyen sınır komutlarında iota'' için nominal değer
MODEL_FREE_IOTA_DD = 1.0


def _req(p) -> PACRequest:
    return PACRequest(p["eps"], p["delta"])


def _consts(p) -> CalibrationConstants:
    return constants_from(p, CalibrationConstants(iota_dd=MODEL_FREE_IOTA_DD))


def rate(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    return scalar_result("rate_exponent", rate_exponent(p["eta"], p["q"], p["q_prime"]))


def concentration_c(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    return scalar_result("c", cattiaux_c(p["q"], p["iota_dd"]))


def psi_cont(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    value = sample_length_continuous(_req(p), p["eta"], p["q"], p["q_prime"], p["L"], _consts(p))
    return scalar_result("psi_cont", value)


def psi_disc(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    n_min, choice = sample_size_discrete(
        _req(p), p["step"], p["eta1"], p["q"], p["q_prime"], p["eta2"], p["eta3"], _consts(p), r=p["r"]
    )
    return scalar_result("psi_disc", n_min, r=choice.r, rho=choice.rho, sigma_tilde=choice.sigma_tilde)


def phi(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    choice = choose_discrete_exponents(p["q"], p["q_prime"], p["eta2"], p["eta3"], eta1=p["eta1"], r=p["r"])
    value = discrete_moment_bound(
        p["n"], p["step"], p["p"], _consts(p), choice, p["eta1"], p["q"], p["q_prime"]
    )
    return scalar_result("phi", value, r=choice.r, rho=choice.rho)


def kappa_command(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    return scalar_result("kappa", kappa(p["q"], p["eta"]))


def t0(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    return scalar_result("T0", lasso_T0(p["eps0"], p["s"], p["c0"], p["c"], p["q"], p["eta"], p["d"], p["e_inf"]))


def lambda_min(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    return scalar_result("lambda_min", lasso_lambda_min(p["T"], p["N"], p["eps0"], p["D_inf"], p["e_inf"]))


def ula_tune(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    req = _req(p)
    tuning = ula_tuning(
        req, p["q"], p["eta1"], p["eta2"], p["eta3"], p["d"], p["L_lip"], p["grad_sup"], _consts(p)
    )
    summary = {
        "delta_step": tuning.delta_step,
        "n": tuning.n,
        "m": tuning.m,
        "caps": list(tuning.caps),
        "order_step": table_order_step(req, p["q"], p["eta1"], p["d"]),
    }
    text = f"Delta={fmt(tuning.delta_step)} n={tuning.n} m={tuning.m}"
    return mapping_result(summary, text)


def ula_tv(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    value = ula_tv_bound(p["n"], p["step"], p["nu_Vq"], p["q"], p["d"], p["L_lip"], p["grad_sup"], _consts(p))
    return scalar_result("ula_tv", value)


def ula_tv_tune(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    step, n, bound = ula_tv_tuning(p["eps"], p["q"], p["d"], p["L_lip"], p["grad_sup"], _consts(p), p["nu_Vq"])
    return mapping_result({"delta_step": step, "n": n, "bound": bound}, f"Delta={fmt(step)} n={n} bound={fmt(bound)}")


def mu_const(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    return scalar_result("mu_const", mu_moment_constant(p["q"], p["iota"], p["V_expectation"]))


def cattiaux(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    threshold = cattiaux_threshold(p["u"], p["t"], p["q"], p["iota_dd"], p["L"])
    lower, upper = cattiaux_u_window(p["t"], p["q"], p["iota_dd"], p["c_small"])
    return scalar_result("threshold", threshold, u_lower=lower, u_upper=upper, u_in_window=lower <= p["u"] < upper)


def burnin(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    consts = _consts(p)
    if p["step"] is None:
        return scalar_result("burnin_time", burnin_length_continuous(_req(p), p["eta"], p["q"], consts))
    return scalar_result("burnin_steps", burnin_length_discrete(_req(p), p["step"], p["q"], consts))


def tv_ergodic(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    model = resolve_model(config, container)
    value = ergodicity_tv_bound(p["t"], p["x_norm"], model.ergodicity, p["C"])
    return scalar_result("tv_bound", value, model=model.name, iota_prime=model.ergodicity.iota_prime())


HANDLERS = {
    ("bounds", "rate"): rate,
    ("bounds", "c"): concentration_c,
    ("bounds", "psi-cont"): psi_cont,
    ("bounds", "psi-disc"): psi_disc,
    ("bounds", "phi"): phi,
    ("bounds", "kappa"): kappa_command,
    ("bounds", "t0"): t0,
    ("bounds", "lambda-min"): lambda_min,
    ("bounds", "ula-tune"): ula_tune,
    ("bounds", "ula-tv"): ula_tv,
    ("bounds", "ula-tv-tune"): ula_tv_tune,
    ("bounds", "mu-const"): mu_const,
    ("bounds", "cattiaux"): cattiaux,
    ("bounds", "burnin"): burnin,
    ("bounds", "tv-ergodic"): tv_ergodic,
}
