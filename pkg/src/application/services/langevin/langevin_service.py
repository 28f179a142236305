# src/application/services/langevin/langevin_service.py

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from src.application.services.bounds.ula_bounds import ula_tuning, ula_tuning_check
from src.application.services.langevin.potentials import langevin_model
from src.application.services.langevin.quadrature import quadrature_target_integral
from src.application.services.langevin.ula import ula_estimates_batch
from src.application.services.simulation.simulation_service import SimulationService
from src.domain.models.calibration import CalibrationConstants, PACRequest, with_default_iota_dd
from src.domain.models.errors import ArgumentError, ExperimentError
from src.domain.models.function_class import TestFunction
from src.domain.models.langevin import Potential, UlaTuning
from src.domain.models.reports import CoverageReport

logger = logging.getLogger(__name__)

MAX_DIVERGED_FRACTION = 0.01


class LangevinService:
    """
    ULA tabanlı PAC deneyleri: hedef kuadratürle hesaplanır, (Delta, n, m) sınırlardan ayarlanır,
    bağımsız zincirler x0 = 0'dan koşturulur.
    """

    def __init__(self, simulation: SimulationService) -> None:
        self._simulation = simulation

    # ==================== Public API ==================== #

    def tune(self, pot: Potential, f: TestFunction, req: PACRequest, consts: CalibrationConstants) -> UlaTuning:
        """Potansiyel ve f sınıfından (Delta, n, m); iota'' boşsa potansiyelden doldurulur."""
        consts = self._with_iota_dd(pot, consts)
        return ula_tuning(
            req,
            pot.q,
            f.eta1,
            f.eta2 or 0.0,
            f.eta3 or 0.0,
            pot.dim,
            pot.L_lip,
            pot.grad_sup,
            consts,
        )

    def ula_pac_experiment(
        self,
        pot: Potential,
        f: TestFunction,
        req: PACRequest,
        consts: CalibrationConstants,
        runs: int,
        seed: int,
        n_override: Optional[int] = None,
        m_override: Optional[int] = None,
        delta_override: Optional[float] = None,
        target: Optional[float] = None,
    ) -> CoverageReport:
        """
        |H_{m,n,Delta}(f) - pi(f)| <= eps olan zincir oranı.

        Args:
            n_override / m_override / delta_override: ayarlanan değer yerine kullanılır;
                rapor "exploratory" işaretlenir. Üçü birden verilirse ayar hiç yapılmaz.
            target: pi(f) biliniyorsa kuadratür atlanır.

        Raises:
            RegimeError: ayar uygulanamazsa.
            ExperimentError: zincirlerin %1'inden fazlası ıraksarsa.
        """
        if runs < 1:
            raise ArgumentError("runs >= 1 olmalı.")
        if target is None and pot.dim > 2:
            raise ArgumentError(f"Kuadratür kahini yalnızca d <= 2 için: d={pot.dim}")
        overrides = {"n": n_override, "m": m_override, "delta_step": delta_override}
        exploratory = any(v is not None for v in overrides.values())

        tuning: Optional[UlaTuning] = None
        if any(v is None for v in overrides.values()):
            tuning = self.tune(pot, f, req, consts)
        delta_step = delta_override if delta_override is not None else tuning.delta_step
        n = n_override if n_override is not None else tuning.n
        m = m_override if m_override is not None else tuning.m
        if not delta_step > 0 or n < 1 or m < 0:
            raise ArgumentError(f"Geçersiz (Delta, n, m) = ({delta_step}, {n}, {m})")

        pi_f = quadrature_target_integral(pot, f) if target is None else float(target)
        logger.info(
            "ULA PAC deneyi: %s, f=%s, eps=%g, delta=%g, Delta=%.4g, n=%d, m=%d, koşu=%d%s",
            pot.name, f.name, req.epsilon, req.delta, delta_step, n, m, runs,
            " (keşif)" if exploratory else "",
        )
        estimates, result = ula_estimates_batch(self._simulation, pot, delta_step, m, n, f, seed, range(runs))
        if result.n_diverged > MAX_DIVERGED_FRACTION * runs:
            raise ExperimentError(f"{result.n_diverged}/{runs} ULA zinciri ıraksadı.")
        if result.n_diverged:
            logger.warning("%d ULA zinciri ıraksadı; başarısız sayılıyor.", result.n_diverged)

        within = int(np.count_nonzero(np.abs(estimates - pi_f) <= req.epsilon))
        metadata = {
            "potential": pot.name,
            "f": f.name,
            "delta_step": delta_step,
            "n": n,
            "m": m,
            "seed": seed,
            "diverged": result.n_diverged,
            "overrides": {k: v for k, v in overrides.items() if v is not None},
        }
        if tuning is not None:
            metadata["tuning"] = tuning.to_dict()
            used = UlaTuning(delta_step=delta_step, n=n, m=m, caps=tuning.caps, safety=tuning.safety)
            metadata["tuning_check"] = ula_tuning_check(
                used,
                req,
                pot.q,
                f.eta1,
                f.eta2 or 0.0,
                f.eta3 or 0.0,
                pot.dim,
                pot.L_lip,
                pot.grad_sup,
                self._with_iota_dd(pot, consts),
            )
        report = CoverageReport(
            runs=runs,
            within_eps=within,
            epsilon=req.epsilon,
            delta=req.delta,
            target_value=pi_f,
            estimates=tuple(float(v) for v in estimates),
            exploratory=exploratory,
            metadata=metadata,
        )
        logger.info("ULA PAC deneyi bitti: kapsama=%.3f (SE %.3f), %s", report.coverage, report.standard_error, report.verdict)
        return report

    # ==================== Internal ==================== #

    @staticmethod
    def _with_iota_dd(pot: Potential, consts: CalibrationConstants) -> CalibrationConstants:
        return with_default_iota_dd(consts, langevin_model(pot).ergodicity.iota_prime())
