# src/application/services/analysis/poisson_service.py

from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np

from src.application.services.analysis.functionals import evaluate_finite
from src.application.services.simulation.observers import WindowSumObserver
from src.application.services.simulation.simulation_service import SimulationService
from src.domain.models.diffusion import DiffusionModel, ErgodicityParams
from src.domain.models.errors import ArgumentError
from src.domain.models.function_class import TestFunction
from src.domain.models.reports import PoissonEstimate
from src.infrastructure.random.stream_factory import sub_seed

logger = logging.getLogger(__name__)

PLUGIN_STEPS = 100_000
_PLUGIN_LABEL = 23


def default_horizon(params: ErgodicityParams) -> float:
    """Kesme ufku: max(12, 6 / iota')."""
    rate = params.iota_prime()
    return max(12.0, 6.0 / rate) if rate > 0 else 12.0


class PoissonService:
    """
    Poisson potansiyeli L^{-1}[f](x) = int_0^inf E^x[-f(X_t)] dt için Monte Carlo tahmincisi
    ve merkezleme için plug-in ortalama.
    """

    def __init__(self, simulation: SimulationService) -> None:
        self._simulation = simulation

    # ==================== Public API ==================== #

    def estimate_poisson_potential(
        self,
        model: DiffusionModel,
        f: TestFunction,
        x: np.ndarray,
        horizon: Optional[float],
        replicates: int,
        seed: int,
    ) -> PoissonEstimate:
        """
        -int_0^horizon f(X_t) dt ortalaması (X_0 = x). Kesme yanlılığı e^{-horizon} mertebesindedir
        ve düzeltilmez.

        Args:
            f: centered_mean dolu olmalı; f - centered_mean entegre edilir.
        Returns:
            PoissonEstimate (estimate, stderr, excluded)
        """
        if f.centered_mean is None:
            raise ArgumentError("f merkezlenmiş olmalı (centered_mean yok); önce plugin_mean/center kullanın.")
        if replicates < 2:
            raise ArgumentError("replicates >= 2 olmalı.")
        horizon = default_horizon(model.ergodicity) if horizon is None else horizon
        if not horizon > 0:
            raise ArgumentError("horizon pozitif olmalı.")
        step = self._simulation.euler_step
        n_steps = max(1, int(round(horizon / step)))
        mean = f.centered_mean

        logger.info(
            "Poisson potansiyeli: model=%s, f=%s, ufuk=%g, replika=%d", model.name, f.name, horizon, replicates
        )
        result = self._simulation.run_replicates(
            model,
            np.atleast_1d(np.asarray(x, dtype=float)),
            n_steps,
            seed,
            range(replicates),
            observer_factory=lambda: [WindowSumObserver(lambda s: f(s) - mean, 0, n_steps, name=f.name)],
        )
        integrals = -result.observations[0][result.alive] * step
        excluded = result.n_diverged
        if excluded > 0.01 * replicates:
            logger.warning("Poisson tahmini: %d/%d yol ıraksadı ve dışlandı.", excluded, replicates)
        kept = integrals.size
        if kept < 2:
            raise ArgumentError("Tahmin için yeterli yol kalmadı.")
        estimate = math.fsum(integrals) / kept
        variance = math.fsum((integrals - estimate) ** 2) / (kept - 1)
        return PoissonEstimate(
            estimate=estimate,
            stderr=math.sqrt(variance / kept),
            replicates=replicates,
            excluded=excluded,
        )

    def plugin_mean(
        self,
        model: DiffusionModel,
        f: TestFunction,
        seed: int,
        n_steps: int = PLUGIN_STEPS,
    ) -> float:
        """Yardımcı uzun bir yoldan (ayrı alt seed) uzun dönem ortalaması."""
        traj = self._simulation.euler_maruyama(
            model,
            np.zeros(model.dim),
            n_steps,
            sub_seed(seed, _PLUGIN_LABEL),
        )
        values = evaluate_finite(f, traj.states[1:])
        return math.fsum(values) / values.size
