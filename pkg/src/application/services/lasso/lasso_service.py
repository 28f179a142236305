# src/application/services/lasso/lasso_service.py

from __future__ import annotations

import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from src.application.services.bounds.lasso_bounds import lasso_lambda_min
from src.application.services.lasso.diagnostics import oracle_check, plugin_constants, support
from src.application.services.lasso.gram import GramObserver, gram_and_target, systems_from_sums
from src.application.services.lasso.solver import DEFAULT_MAX_SWEEPS, DEFAULT_TOL, lasso_solve
from src.application.services.simulation.simulation_service import SimulationService
from src.domain.models.diffusion import DiffusionFn, DiffusionModel
from src.domain.models.errors import ArgumentError, ExperimentError
from src.domain.models.lasso import Dictionary, GramSystem, LassoFit, OracleExperiment, OracleRecord
from src.domain.models.trajectory import Trajectory

logger = logging.getLogger(__name__)

DEFAULT_EPS0 = 0.1
MAX_DIVERGED_FRACTION = 0.01


class LassoService:
    """
    Yol verisinden seyrek drift tahmini: Gram sistemi, lambda seçimi, çözüm ve oracle denetimleri.
    """

    def __init__(self, simulation: SimulationService) -> None:
        self._simulation = simulation

    # ==================== Public API ==================== #

    def fit(
        self,
        traj: Trajectory,
        dictionary: Dictionary,
        sigma0: DiffusionFn,
        lam: Optional[float] = None,
        eps0: float = DEFAULT_EPS0,
        tol: float = DEFAULT_TOL,
        max_sweeps: int = DEFAULT_MAX_SWEEPS,
    ) -> Tuple[GramSystem, LassoFit]:
        """
        Tek yoldan Lasso tahmini.

        Args:
            lam: verilmezse plug-in sabitlerle lasso_lambda_min(T, N, eps0, D^, e^) kullanılır.
        """
        system = gram_and_target(traj, dictionary, sigma0)
        if lam is None:
            lam = self.default_lambda(system, eps0)
        fit = lasso_solve(system, lam, tol, max_sweeps)
        logger.info(
            "Lasso tahmini: N=%d, T=%g, lambda=%.4g, destek=%s", system.N, system.T, lam, list(support(fit.theta_hat))
        )
        return system, fit

    @staticmethod
    def default_lambda(system: GramSystem, eps0: float = DEFAULT_EPS0) -> float:
        e_inf, D_inf = plugin_constants(system)
        return lasso_lambda_min(system.T, system.N, eps0, D_inf, e_inf)

    def oracle_experiment(
        self,
        model: DiffusionModel,
        dictionary: Dictionary,
        theta0: np.ndarray,
        sigma0: DiffusionFn,
        T: float,
        replicates: int,
        seed: int,
        eps0: float = DEFAULT_EPS0,
        s0: Optional[int] = None,
        x0: Optional[np.ndarray] = None,
    ) -> OracleExperiment:
        """
        Bağımsız yollar üzerinde oracle eşitsizliği: her replikada Gram sistemi yol boyunca biriktirilir,
        lambda plug-in sabitlerle seçilir, lhs <= rhs denetlenir.

        Args:
            s0: verilmezse ||theta0||_0.

        Raises:
            ExperimentError: yolların %1'inden fazlası ıraksarsa.
        """
        theta0 = np.asarray(theta0, dtype=float).reshape(-1)
        if theta0.size != dictionary.N:
            raise ArgumentError(f"theta0 boyutu {theta0.size} != N={dictionary.N}")
        if replicates < 1 or not T > 0:
            raise ArgumentError("replicates >= 1 ve T > 0 olmalı.")
        s0 = int(np.count_nonzero(theta0)) if s0 is None else s0
        step = self._simulation.euler_step
        n_steps = max(1, int(round(T / step)))
        start = np.zeros(model.dim) if x0 is None else np.asarray(x0, dtype=float)

        logger.info("Oracle deneyi: %s, N=%d, T=%g, s0=%d, replika=%d", model.name, dictionary.N, T, s0, replicates)
        result = self._simulation.run_replicates(
            model,
            start,
            n_steps,
            seed,
            range(replicates),
            observer_factory=lambda: [GramObserver(dictionary, sigma0)],
        )
        if result.n_diverged > MAX_DIVERGED_FRACTION * replicates:
            raise ExperimentError(f"{result.n_diverged}/{replicates} yol ıraksadı.")
        if result.n_diverged:
            logger.warning("Oracle deneyi: %d yol ıraksadı ve dışlandı.", result.n_diverged)

        sums = result.observations[0][result.alive]
        ids = result.replicate_ids[result.alive]
        records = []
        for rid, system in zip(ids, systems_from_sums(sums, n_steps, step)):
            e_inf, D_inf = plugin_constants(system)
            lam = lasso_lambda_min(system.T, system.N, eps0, D_inf, e_inf)
            fit = lasso_solve(system, lam)
            lhs, rhs, holds = oracle_check(fit, theta0, system, s0, e_inf)
            records.append(
                OracleRecord(
                    replicate_id=int(rid),
                    lam=lam,
                    lhs=lhs,
                    rhs=rhs,
                    holds=holds,
                    e_inf_hat=e_inf,
                    D_inf_hat=D_inf,
                    l1_norm=fit.l1_norm,
                )
            )
        experiment = OracleExperiment(T=n_steps * step, s0=s0, records=tuple(records), diverged=result.n_diverged)
        logger.info(
            "Oracle deneyi bitti: sağlanma oranı=%.3f, medyan hata=%.4g",
            experiment.holds_fraction,
            experiment.median_error,
        )
        return experiment

    @staticmethod
    def l1_path_summary(fits: Sequence[LassoFit]) -> list:
        return [{"lambda": f.lam, "l1_norm": f.l1_norm, "support_size": len(f.support())} for f in fits]
