# src/application/services/langevin/ula.py

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from src.application.services.analysis.functionals import evaluate_finite
from src.application.services.langevin.potentials import langevin_model
from src.application.services.simulation.euler_engine import BatchResult, euler_maruyama
from src.application.services.simulation.observers import WindowSumObserver
from src.application.services.simulation.simulation_service import SimulationService
from src.domain.models.errors import ArgumentError
from src.domain.models.function_class import TestFunction
from src.domain.models.langevin import Potential, UlaChain


def ula_chain(
    pot: Potential,
    delta_step: float,
    n_steps: int,
    x0: np.ndarray,
    seed: int,
    replicate_id: int = 0,
) -> UlaChain:
    """
    theta_{k+1} = theta_k - Delta grad U(theta_k) + sqrt(2 Delta) xi_{k+1}.

    Langevin difüzyonunun Euler adımıyla aynıdır; gürültü (seed, replicate_id) akışından gelir.

    Raises:
        DivergenceError: zincir ıraksarsa.
    """
    if not delta_step > 0:
        raise ArgumentError(f"delta_step pozitif olmalı: {delta_step}")
    traj = euler_maruyama(langevin_model(pot), x0, delta_step, n_steps, seed, replicate_id)
    return UlaChain(states=traj.states, delta_step=delta_step, seed=seed, replicate_id=replicate_id)


def ula_estimator(chain: UlaChain, m: int, n: int, f: TestFunction) -> float:
    """H_{m,n,Delta}(f) = (1/n) sum_{k=m+1}^{m+n} f(theta_k)."""
    if m < 0 or n < 1:
        raise ArgumentError("m >= 0 ve n >= 1 olmalı.")
    if chain.states.shape[0] < m + n + 1:
        raise ArgumentError(f"Zincir kısa: {chain.states.shape[0]} < m + n + 1 = {m + n + 1}")
    values = evaluate_finite(f, chain.states[m + 1:m + n + 1])
    return math.fsum(values) / n


def ula_estimates_batch(
    simulation: SimulationService,
    pot: Potential,
    delta_step: float,
    m: int,
    n: int,
    f: TestFunction,
    seed: int,
    replicate_ids: Sequence[int],
    x0: np.ndarray | None = None,
) -> tuple[np.ndarray, BatchResult]:
    """
    Bağımsız zincirler için ula_estimator değerleri; zincirler saklanmaz.

    Returns:
        (estimates, result): estimates yalnızca ıraksamayan zincirler içindir.
    """
    if m < 0 or n < 1:
        raise ArgumentError("m >= 0 ve n >= 1 olmalı.")
    start = np.zeros(pot.dim) if x0 is None else np.atleast_1d(np.asarray(x0, dtype=float))
    result = simulation.run_replicates(
        langevin_model(pot),
        start,
        m + n,
        seed,
        replicate_ids,
        observer_factory=lambda: [WindowSumObserver(f, m + 1, m + n + 1, name=f.name)],
        step=delta_step,
    )
    return result.observations[0][result.alive] / n, result
