# src/cli/commands/concentration_commands.py

from __future__ import annotations

import math

import numpy as np

from src.application.container import AppContainer
from src.application.services.analysis.functionals import center
from src.application.services.bounds import (
    burnin_length_continuous,
    choose_discrete_exponents,
    continuous_moment_bound,
    rate_exponent,
    sample_length_continuous,
)
from src.application.services.concentration.calibration import (
    calibrate_D,
    calibrate_W,
    empirical_moments,
    validation_violations,
)
from src.cli.commands.base import (
    CommandResult,
    constants_from,
    fmt,
    mapping_result,
    resolve_function,
    resolve_init,
    resolve_model,
)
from src.cli.config_parser import RunConfig
from src.domain.models.calibration import CalibrationConstants, PACRequest
from src.domain.models.errors import ArgumentError
from src.infrastructure.random.stream_factory import sub_seed

DEFAULT_THRESHOLDS = tuple(float(v) for v in np.linspace(0.0, 5.0, 21))
_VALIDATION_LABEL = 41


def _tail_table(config: RunConfig, container: AppContainer, seed: int):
    p = config.params
    model = resolve_model(config, container)
    f = resolve_function(config, container)
    init = resolve_init(config, model)
    thresholds = p.get("thresholds") or DEFAULT_THRESHOLDS
    service = container.concentration_service
    if p.get("n") is None:
        table = service.run_tail_experiment(model, f, p["t"], p["replicates"], init, seed, thresholds)
    else:
        delta = p.get("delta_step") or container.simulation_service.euler_step
        table = service.run_discrete_tail_experiment(model, f, p["n"], delta, p["replicates"], init, seed, thresholds)
    return model, f, table


def tails(config: RunConfig, container: AppContainer) -> CommandResult:
    model, f, table = _tail_table(config, container, config.seed)
    values = table.sorted_values
    second_moment = float(np.mean(values ** 2)) if values.size else math.nan
    summary = {
        "model": model.name,
        "f": f.name,
        "replicates": table.replicates,
        "diverged": table.diverged,
        "second_moment": second_moment,
        "metadata": table.metadata,
    }
    rows = [[r["threshold"], r["exceed_fraction"], r["se"]] for r in table.rows()]
    text = f"replicates={table.replicates} second_moment={fmt(second_moment)}"
    return CommandResult(summary, ["threshold", "exceed_fraction", "se"], rows, text)


def calibrate(config: RunConfig, container: AppContainer) -> CommandResult:
    """W^ (sürekli) veya D^ (ayrık, --n ve --delta-step ile) kalibrasyonu; isteğe bağlı bağımsız doğrulama."""
    p = config.params
    if p["kind"] == "D" and p["n"] is None:
        raise ArgumentError("kind=D için --n gerekli.")
    if p["kind"] == "W" and p["n"] is not None:
        raise ArgumentError("kind=W sürekli tablo kullanır; --n verilmemeli.")
    model, f, table = _tail_table(config, container, config.seed)
    params = model.ergodicity
    sigma_tilde = rate_exponent(f.eta1, params.q, params.q_prime)
    u_grid = list(p["u_grid"])
    if p["kind"] == "W":
        value = calibrate_W(table, f.L_frak, sigma_tilde, u_grid, p["slack"])

        def shape(u: float) -> float:
            return math.e * f.L_frak * u ** sigma_tilde
    else:
        delta = p["delta_step"] or container.simulation_service.euler_step
        choice = choose_discrete_exponents(params.q, params.q_prime, f.eta2 or 0.0, f.eta3 or 0.0, eta1=f.eta1)
        value = calibrate_D(table, p["n"], delta, choice.rho, sigma_tilde, u_grid, p["slack"])
        base = math.sqrt(p["n"]) * delta ** 1.5

        def shape(u: float) -> float:
            return math.e * (base + delta * u ** choice.rho + u ** sigma_tilde)

    name = "W_frak" if p["kind"] == "W" else "D_frak"
    consts = CalibrationConstants().with_calibrated(**{name: value})
    summary = {
        "kind": p["kind"],
        "value": value,
        "sigma_tilde": sigma_tilde,
        "u_grid": u_grid,
        "constants": consts.to_dict(),
    }
    rows = []
    for u in u_grid:
        fraction, se = table.exceedance(value * shape(u))
        rows.append([u, value * shape(u), fraction, se, math.exp(-u)])
    if p["validate"]:
        _, _, fresh = _tail_table(config, container, sub_seed(config.seed, _VALIDATION_LABEL))
        summary["validation_violations"] = validation_violations(fresh, shape, value, u_grid)
    text = f"{name}={fmt(value)}"
    if "validation_violations" in summary:
        text += f" violations={summary['validation_violations']}"
    return CommandResult(summary, ["u", "threshold", "exceed_fraction", "se", "exp_minus_u"], rows, text)


def moments(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    model = resolve_model(config, container)
    f = resolve_function(config, container)
    values, diverged = container.concentration_service.functional_values(
        model, f, p["t"], p["replicates"], resolve_init(config, model), config.seed
    )
    params = model.ergodicity
    rows = []
    for order, moment in empirical_moments(values, p["p_list"]):
        bound = continuous_moment_bound(order, f.L_frak, p["W"], f.eta1, params.q, params.q_prime)
        rows.append([order, moment, bound])
    summary = {"model": model.name, "f": f.name, "replicates": int(values.size), "diverged": diverged}
    text = " ".join(f"p={fmt(r[0])}:{fmt(r[1])}" for r in rows)
    return CommandResult(summary, ["p", "moment", "bound"], rows, text)


def coverage(config: RunConfig, container: AppContainer) -> CommandResult:
    """Burn-in ortalaması için PAC kapsama; v ve t verilmezse sınırlardan hesaplanır."""
    p = config.params
    model = resolve_model(config, container)
    f = resolve_function(config, container)
    params = model.ergodicity
    req = PACRequest(p["eps"], p["delta"])
    consts = constants_from(p, CalibrationConstants(iota_dd=params.default_iota_dd()))
    v = p["v"] if p["v"] is not None else burnin_length_continuous(req, f.eta1, params.q, consts)
    t = p["t"] if p["t"] is not None else sample_length_continuous(
        req, f.eta1, params.q, params.q_prime, f.L_frak, consts
    )
    target = _target(config, container, model, f)
    report = container.concentration_service.burnin_coverage(model, f, v, t, target, req, p["runs"], config.seed)
    summary = dict(report.to_dict())
    summary["constants"] = consts.to_dict()
    rows = [[r["run_id"], r["estimate"], r["within"]] for r in report.rows()]
    text = f"coverage={fmt(report.coverage)} se={fmt(report.standard_error)} verdict={report.verdict}"
    return CommandResult(summary, ["run_id", "estimate", "within"], rows, text)


def poisson(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    model = resolve_model(config, container)
    f = resolve_function(config, container)
    mean = p["mean"] if p["mean"] is not None else _target(config, container, model, f)
    x = np.asarray(p["x"], dtype=float)
    if x.size != model.dim:
        raise ArgumentError(f"x boyutu {x.size} != d={model.dim}")
    estimate = container.poisson_service.estimate_poisson_potential(
        model, center(f, mean), x, p["horizon"], p["replicates"], config.seed
    )
    summary = {
        "estimate": estimate.estimate,
        "stderr": estimate.stderr,
        "replicates": estimate.replicates,
        "excluded": estimate.excluded,
        "warning": estimate.warning,
        "mean": mean,
    }
    return mapping_result(summary, f"{fmt(estimate.estimate)} +- {fmt(estimate.stderr)}")


def rms(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    model = resolve_model(config, container)
    f = resolve_function(config, container)
    rows = container.concentration_service.discretisation_rms(
        model, f, p["horizon"], p["deltas"], p["replicates"], config.seed, resolve_init(config, model)
    )
    table = [[r["delta"], r["rms"], r["replicates"]] for r in rows]
    text = " ".join(f"Delta={fmt(r['delta'])}:{fmt(r['rms'])}" for r in rows)
    return CommandResult({"model": model.name, "f": f.name, "horizon": p["horizon"]}, ["delta", "rms", "replicates"], table, text)


def _target(config: RunConfig, container: AppContainer, model, f) -> float:
    if config.params.get("target") is not None:
        return float(config.params["target"])
    if f.centered_mean is not None:
        return f.centered_mean
    return container.poisson_service.plugin_mean(model, f, config.seed)


HANDLERS = {
    ("conc-lab", "tails"): tails,
    ("conc-lab", "calibrate"): calibrate,
    ("conc-lab", "moments"): moments,
    ("conc-lab", "coverage"): coverage,
    ("conc-lab", "poisson"): poisson,
    ("conc-lab", "rms"): rms,
}
