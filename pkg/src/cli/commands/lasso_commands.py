# src/cli/commands/lasso_commands.py

from __future__ import annotations

from typing import Optional, Tuple

import numpy as np

from src.application.container import AppContainer
from src.application.services.lasso.diagnostics import l2_distance, restricted_eigenvalue_probe
from src.application.services.lasso.gram import build_dictionary, gram_and_target
from src.application.services.lasso.solver import lasso_path
from src.cli.commands.base import CommandResult, fmt, start_point
from src.cli.config_parser import RunConfig
from src.domain.models.diffusion import DiffusionModel
from src.domain.models.errors import ArgumentError, ConfigError
from src.domain.models.lasso import Dictionary


def parse_blocks(raw: str, d: int) -> Dictionary:
    """"-1:1,0:2" -> iki bloklu sözlük."""
    pairs = []
    for item in raw.split(","):
        if ":" not in item:
            raise ConfigError("blocks", f"'q~:alpha~' bekleniyordu: '{item}'")
        q_text, alpha_text = item.split(":", 1)
        try:
            pairs.append((float(q_text), float(alpha_text)))
        except ValueError as exc:
            raise ConfigError("blocks", f"sayı bekleniyordu: '{item}'") from exc
    return build_dictionary(d, pairs)


def _setup(config: RunConfig, container: AppContainer) -> Tuple[DiffusionModel, Dictionary, Optional[np.ndarray]]:
    p = config.params
    registry = container.registry
    if p["model"] in registry.lasso_model_names():
        return registry.get_lasso_setup(p["model"], p["model_params"])
    model = registry.get_model(p["model"], p["model_params"])
    return model, parse_blocks(p["blocks"], model.dim), None


def _system(config: RunConfig, container: AppContainer):
    p = config.params
    model, dictionary, theta0 = _setup(config, container)
    simulation = container.simulation_service
    n_steps = max(1, int(round(p["T"] / simulation.euler_step)))
    traj = simulation.euler_maruyama(model, start_point(p["x0"], model.dim), n_steps, config.seed)
    return model, dictionary, theta0, traj


def fit(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    model, dictionary, theta0, traj = _system(config, container)
    service = container.lasso_service
    system, result = service.fit(traj, dictionary, model.diffusion, p["lam"], p["eps0"], p["tol"], p["max_sweeps"])
    summary = {"model": model.name, "N": dictionary.N, "T": system.T, **result.to_dict()}
    if theta0 is not None:
        summary["l2_error"] = l2_distance(result.theta_hat, theta0, system)

    if p["lambdas"] is not None:
        fits = lasso_path(system, p["lambdas"], p["tol"], p["max_sweeps"])
        rows = [[r["lambda"], r["l1_norm"], r["support_size"]] for r in service.l1_path_summary(fits)]
        text = " ".join(f"{fmt(r[0])}:{fmt(r[1])}" for r in rows)
        return CommandResult(summary, ["lambda", "l1_norm", "support_size"], rows, text)

    rows = []
    for i, value in enumerate(result.theta_hat):
        block, k, l = dictionary.slot_of(i)
        truth = float(theta0[i]) if theta0 is not None else float("nan")
        rows.append([i, block, k, l, float(value), truth])
    text = f"lambda={fmt(result.lam)} support={list(result.support())}"
    return CommandResult(summary, ["i", "block", "k", "l", "theta", "theta0"], rows, text)


def probe_re(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    model, dictionary, _, traj = _system(config, container)
    system = gram_and_target(traj, dictionary, model.diffusion)
    value, witness = restricted_eigenvalue_probe(system, p["s"], p["c0"], p["n_probe"], config.seed)
    summary = {
        "model": model.name,
        "N": dictionary.N,
        "s": p["s"],
        "c0": p["c0"],
        "re_min": value,
        "lambda_min": system.min_eigenvalue(),
        "witness": witness.tolist(),
    }
    rows = [[i, float(v)] for i, v in enumerate(witness)]
    return CommandResult(summary, ["i", "witness"], rows, text=fmt(value))


def oracle(config: RunConfig, container: AppContainer) -> CommandResult:
    p = config.params
    model, dictionary, theta0 = _setup(config, container)
    if theta0 is None:
        raise ArgumentError(f"'{p['model']}' için bilinen theta0 yok; oracle deneyi yapılamaz.")
    x0 = None if p["x0"] is None else start_point(p["x0"], model.dim)
    experiment = container.lasso_service.oracle_experiment(
        model, dictionary, theta0, model.diffusion, p["T"], p["replicates"], config.seed, p["eps0"], p["s0"], x0
    )
    columns = ["replicate_id", "lambda", "lhs", "rhs", "holds", "e_inf_hat", "D_inf_hat", "l1_norm"]
    rows = [[r[c] for c in columns] for r in experiment.rows()]
    text = f"holds_fraction={fmt(experiment.holds_fraction)} median_error={fmt(experiment.median_error)}"
    return CommandResult(experiment.to_dict(), columns, rows, text)


HANDLERS = {
    ("lasso", "fit"): fit,
    ("lasso", "probe-re"): probe_re,
    ("lasso", "oracle"): oracle,
}
