# src/cli/commands/simulate_commands.py

from __future__ import annotations

import numpy as np

from src.application.container import AppContainer
from src.application.services.langevin.potentials import check_potential, langevin_model
from src.cli.commands.base import CommandResult, fmt, resolve_model, start_point
from src.cli.config_parser import RunConfig


def simulate(config: RunConfig, container: AppContainer) -> CommandResult:
    """Tek yol; tablo (time, x1..xd)."""
    p = config.params
    model = resolve_model(config, container)
    step = p["step"] or container.simulation_service.euler_step
    n_steps = max(1, int(round(p["T"] / step)))
    traj = container.simulation_service.euler_maruyama(
        model,
        start_point(p["x0"], model.dim),
        n_steps,
        config.seed,
        p["replicate"],
        step=step,
        brownian_resolution=p["brownian_resolution"],
    )
    times = traj.times()
    columns = ["time"] + [f"x{j + 1}" for j in range(model.dim)]
    rows = [[float(t), *state.tolist()] for t, state in zip(times, traj.states)]
    endpoint = traj.endpoint()
    summary = {
        "model": model.name,
        "n_steps": traj.n_steps,
        "step": traj.step,
        "horizon": traj.horizon,
        "endpoint": endpoint.tolist(),
    }
    return CommandResult(summary, columns, rows, text=" ".join(fmt(v) for v in endpoint))


def potential_check(config: RunConfig, container: AppContainer) -> CommandResult:
    """U(q) ve sonlu fark denetimi, ardından Langevin difüzyonu için drift koşulu."""
    p = config.params
    pot = container.registry.get_potential(p["potential"], p["potential_params"])
    if p["radii"] is None:
        base = max(pot.M0, 1.0)
        radii = [base * k for k in (1.0, 2.0, 5.0, 10.0, 50.0)]
    else:
        radii = list(p["radii"])
    report = check_potential(pot, radii, p["directions"], config.seed)
    drift = container.simulation_service.check_drift_condition(langevin_model(pot), radii, p["directions"], config.seed)
    summary = {
        "potential": pot.name,
        "q": pot.q,
        "M0": pot.M0,
        "r_frak": pot.r_frak,
        "L_lip": pot.L_lip,
        "grad_sup": pot.grad_sup,
        "potential_check": report.to_dict(),
        "drift_check": drift.to_dict(),
    }
    rows = [
        ["potential", int(report.holds), report.worst_margin, report.probes],
        ["drift", int(drift.holds), drift.worst_margin, drift.probes],
    ]
    text = f"holds={report.holds and drift.holds} worst_margin={fmt(report.worst_margin)}"
    return CommandResult(summary, ["check", "holds", "worst_margin", "probes"], rows, text)


HANDLERS = {
    ("simulate", None): simulate,
    ("potential", "check"): potential_check,
}
