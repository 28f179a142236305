# src/cli/commands/ula_commands.py

from __future__ import annotations

from src.application.container import AppContainer
from src.application.services.langevin.quadrature import quadrature_target_integral
from src.application.services.langevin.ula import ula_chain, ula_estimator
from src.cli.commands.base import CommandResult, constants_from, fmt, mapping_result, resolve_function, start_point
from src.cli.config_parser import RunConfig
from src.domain.models.calibration import PACRequest


def _potential(config: RunConfig, container: AppContainer):
    p = config.params
    return container.registry.get_potential(p["potential"], p["potential_params"])


def run(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    pot = _potential(config, container)
    chain = ula_chain(pot, p["step"], p["n_steps"], start_point(p["x0"], pot.dim), config.seed, p["replicate"])
    columns = ["step"] + [f"x{j + 1}" for j in range(pot.dim)]
    rows = [[k, *state.tolist()] for k, state in enumerate(chain.states)]
    summary = {"potential": pot.name, "delta_step": chain.delta_step, "n_steps": chain.n_steps}
    return CommandResult(summary, columns, rows, text=" ".join(fmt(v) for v in chain.states[-1]))


def estimate(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    pot = _potential(config, container)
    f = resolve_function(config, container)
    chain = ula_chain(pot, p["step"], p["m"] + p["n"], start_point(p["x0"], pot.dim), config.seed)
    value = ula_estimator(chain, p["m"], p["n"], f)
    summary = {"potential": pot.name, "f": f.name, "estimate": value, "m": p["m"], "n": p["n"], "delta_step": p["step"]}
    text = fmt(value)
    target = p["target"]
    if target is None and pot.dim <= 2:
        target = quadrature_target_integral(pot, f)
    if target is not None:
        summary["target"] = target
        summary["error"] = abs(value - target)
        text += f" target={fmt(target)}"
    return mapping_result(summary, text)


def pac(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    pot = _potential(config, container)
    f = resolve_function(config, container)
    report = container.langevin_service.ula_pac_experiment(
        pot,
        f,
        PACRequest(p["eps"], p["delta"]),
        constants_from(p),
        p["runs"],
        config.seed,
        n_override=p["n"],
        m_override=p["m"],
        delta_override=p["step"],
        target=p["target"],
    )
    rows = [[r["run_id"], r["estimate"], r["within"]] for r in report.rows()]
    text = f"coverage={fmt(report.coverage)} se={fmt(report.standard_error)} verdict={report.verdict}"
    if report.exploratory:
        text += " (exploratory)"
    return CommandResult(report.to_dict(), ["run_id", "estimate", "within"], rows, text)


HANDLERS = {
    ("ula", "run"): run,
    ("ula", "estimate"): estimate,
    ("ula", "pac"): pac,
}
