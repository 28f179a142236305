# src/application/services/concentration/concentration_service.py

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.application.services.concentration.calibration import coverage_count
from src.application.services.simulation.euler_engine import BatchResult
from src.application.services.simulation.observers import WindowSumObserver
from src.application.services.simulation.simulation_service import SimulationService, StationaryMethod
from src.domain.models.calibration import PACRequest
from src.domain.models.diffusion import DiffusionModel
from src.domain.models.errors import ArgumentError, ExperimentError
from src.domain.models.function_class import TestFunction
from src.domain.models.reports import CoverageReport, TailTable
from src.infrastructure.random.stream_factory import sub_seed

logger = logging.getLogger(__name__)

MIN_TAIL_REPLICATES = 100
MIN_COVERAGE_RUNS = 20
MAX_DIVERGED_FRACTION = 0.01
_INIT_LABEL = 31

RunEstimator = Callable[[int, int], float]   # (run_id, seed) -> tahmin


def _stride_for(delta: float, step: float) -> int:
    ratio = delta / step
    stride = int(round(ratio))
    if stride < 1 or abs(ratio - stride) > 1e-9 * max(1.0, ratio):
        raise ArgumentError(f"Delta={delta:g}, Euler adımı {step:g} değerinin tam katı olmalı.")
    return stride


class ConcentrationLabService:
    """
    Toplamsal fonksiyonellerin ampirik kuyrukları, momentleri ve PAC kapsama deneyleri.

    Replikalar SimulationService üzerinden gruplar halinde (paralel) koşturulur; her replika
    kendi (seed, id) akışını kullandığından toplama sırası sonuçları değiştirmez.
    """

    def __init__(self, simulation: SimulationService) -> None:
        self._simulation = simulation

    # ==================== Public API ==================== #

    def run_tail_experiment(
        self,
        model: DiffusionModel,
        f: TestFunction,
        t: float,
        replicates: int,
        init: Optional[StationaryMethod],
        seed: int,
        thresholds: Sequence[float],
    ) -> TailTable:
        """
        |G_t(f)| = t^{-1/2} |sum_{k<n} f(X_k) delta| değerlerinin kuyruk tablosu, X_0 ~ mu (yaklaşık).

        Raises:
            ExperimentError: yolların %1'inden fazlası ıraksarsa.
        """
        if replicates < MIN_TAIL_REPLICATES:
            raise ArgumentError(f"replicates >= {MIN_TAIL_REPLICATES} olmalı: {replicates}")
        method = init or StationaryMethod.default_for(model)
        values, diverged = self.functional_values(model, f, t, replicates, method, seed)
        step = self._simulation.euler_step
        return TailTable.from_values(
            values,
            thresholds,
            diverged=diverged,
            metadata={
                "model": model.name,
                "f": f.name,
                "t": max(1, int(round(t / step))) * step,
                "init": method.describe(),
                "seed": seed,
            },
        )

    def run_discrete_tail_experiment(
        self,
        model: DiffusionModel,
        f: TestFunction,
        n: int,
        delta: float,
        replicates: int,
        init: Optional[StationaryMethod],
        seed: int,
        thresholds: Sequence[float],
    ) -> TailTable:
        """|G_{n,Delta}(f)| = (n Delta)^{-1/2} |sum_{k=1}^{n} f(X_{k Delta}) Delta| kuyruk tablosu."""
        if replicates < MIN_TAIL_REPLICATES:
            raise ArgumentError(f"replicates >= {MIN_TAIL_REPLICATES} olmalı: {replicates}")
        if n < 1:
            raise ArgumentError("n >= 1 olmalı.")
        step = self._simulation.euler_step
        stride = _stride_for(delta, step)
        method = init or StationaryMethod.default_for(model)
        logger.info("Ayrık kuyruk deneyi: %s, n=%d, Delta=%g, replika=%d", model.name, n, delta, replicates)
        result = self._run(
            model,
            method,
            n * stride,
            seed,
            replicates,
            lambda: [WindowSumObserver(f, stride, n * stride + 1, stride=stride, name=f.name)],
        )
        values = result.observations[0][result.alive] * delta / math.sqrt(n * delta)
        return TailTable.from_values(
            values,
            thresholds,
            diverged=result.n_diverged,
            metadata={"model": model.name, "f": f.name, "n": n, "delta": delta, "init": method.describe(), "seed": seed},
        )

    def functional_values(
        self,
        model: DiffusionModel,
        f: TestFunction,
        t: float,
        replicates: int,
        init: Optional[StationaryMethod],
        seed: int,
    ) -> Tuple[np.ndarray, int]:
        """
        İşaretli G_t(f) değerleri (ıraksamayan yollar) ve ıraksayan yol sayısı.

        Raises:
            ExperimentError: yolların %1'inden fazlası ıraksarsa.
        """
        if replicates < 1 or not t > 0:
            raise ArgumentError("replicates >= 1 ve t > 0 olmalı.")
        step = self._simulation.euler_step
        n = max(1, int(round(t / step)))
        method = init or StationaryMethod.default_for(model)
        logger.info(
            "Fonksiyonel deneyi: %s, f=%s, t=%g, replika=%d, başlangıç=%s",
            model.name, f.name, n * step, replicates, method.describe(),
        )
        result = self._run(
            model, method, n, seed, replicates, lambda: [WindowSumObserver(f, 0, n, name=f.name)]
        )
        return result.observations[0][result.alive] * step / math.sqrt(n * step), result.n_diverged

    def pac_coverage(
        self,
        estimator: RunEstimator,
        target: float,
        req: PACRequest,
        runs: int,
        seed: int,
        metadata: Optional[Dict[str, object]] = None,
    ) -> CoverageReport:
        """
        Bağımsız koşularda |tahmin - hedef| <= eps oranı. estimator(run_id, seed) çağrıları
        iş parçacığı havuzunda yürütülür; sonuçlar run_id sırasıyla toplanır.
        """
        if runs < MIN_COVERAGE_RUNS:
            raise ArgumentError(f"runs >= {MIN_COVERAGE_RUNS} olmalı: {runs}")
        workers = self._simulation.worker_count(runs)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            estimates = list(pool.map(lambda rid: float(estimator(rid, seed)), range(runs)))
        within = coverage_count(estimates, target, req.epsilon)
        return CoverageReport(
            runs=runs,
            within_eps=within,
            epsilon=req.epsilon,
            delta=req.delta,
            target_value=target,
            estimates=tuple(estimates),
            metadata=dict(metadata or {}),
        )

    def burnin_coverage(
        self,
        model: DiffusionModel,
        f: TestFunction,
        v: float,
        t: float,
        target: float,
        req: PACRequest,
        runs: int,
        seed: int,
        x0: Optional[np.ndarray] = None,
    ) -> CoverageReport:
        """
        H_{v,t}(f) = (1/t) [v, v+t] sol Riemann toplamı için kapsama; yollar x0'dan (varsayılan 0) başlar.
        Iraksayan yollar başarısız sayılır.
        """
        if runs < MIN_COVERAGE_RUNS:
            raise ArgumentError(f"runs >= {MIN_COVERAGE_RUNS} olmalı: {runs}")
        if v < 0 or not t > 0:
            raise ArgumentError("v >= 0 ve t > 0 olmalı.")
        step = self._simulation.euler_step
        start = int(round(v / step))
        stop = int(round((v + t) / step))
        logger.info("Burn-in kapsama: %s, f=%s, v=%g, t=%g, koşu=%d", model.name, f.name, v, t, runs)
        origin = np.zeros(model.dim) if x0 is None else np.atleast_1d(np.asarray(x0, dtype=float))
        result = self._simulation.run_replicates(
            model,
            origin,
            stop,
            seed,
            range(runs),
            observer_factory=lambda: [WindowSumObserver(f, start, stop, name=f.name)],
        )
        self._check_divergence(result, runs)
        estimates = result.observations[0][result.alive] * step / t
        within = coverage_count(estimates, target, req.epsilon)
        return CoverageReport(
            runs=runs,
            within_eps=within,
            epsilon=req.epsilon,
            delta=req.delta,
            target_value=target,
            estimates=tuple(float(e) for e in estimates),
            metadata={"model": model.name, "f": f.name, "v": v, "t": t, "seed": seed, "diverged": result.n_diverged},
        )

    def discretisation_rms(
        self,
        model: DiffusionModel,
        f: TestFunction,
        horizon: float,
        deltas: Sequence[float],
        replicates: int,
        seed: int,
        init: Optional[StationaryMethod] = None,
    ) -> List[Dict[str, float]]:
        """
        Aynı yollarda RMS |G_{n,Delta}(f) - G_{n Delta}(f)|, n Delta = horizon, her Delta için.
        """
        if len(deltas) == 0:
            raise ArgumentError("deltas boş olamaz.")
        step = self._simulation.euler_step
        total = max(1, int(round(horizon / step)))
        strides = [_stride_for(delta, step) for delta in deltas]
        for delta, stride in zip(deltas, strides):
            if total % stride:
                raise ArgumentError(f"horizon={horizon:g}, Delta={delta:g} ile tam bölünmeli.")
        method = init or StationaryMethod.default_for(model)

        def observers():
            obs = [WindowSumObserver(f, 0, total, name=f"{f.name}-cont")]
            obs += [
                WindowSumObserver(f, stride, total + 1, stride=stride, name=f"{f.name}-disc")
                for stride in strides
            ]
            return obs

        logger.info("Ayrıklaştırma RMS: %s, ufuk=%g, Delta=%s, replika=%d", model.name, horizon, list(deltas), replicates)
        result = self._run(model, method, total, seed, replicates, observers)
        T = total * step
        continuous = result.observations[0][result.alive] * step / math.sqrt(T)
        rows = []
        for delta, obs in zip(deltas, result.observations[1:]):
            discrete = obs[result.alive] * delta / math.sqrt(T)
            rms = math.sqrt(math.fsum((discrete - continuous) ** 2) / continuous.size)
            rows.append({"delta": float(delta), "rms": rms, "replicates": int(continuous.size)})
        return rows

    # ==================== Internal ==================== #

    def _run(
        self,
        model: DiffusionModel,
        method: StationaryMethod,
        n_steps: int,
        seed: int,
        replicates: int,
        observer_factory,
    ) -> BatchResult:
        result = self._simulation.run_from_stationary(
            model, method, n_steps, seed, sub_seed(seed, _INIT_LABEL), range(replicates), observer_factory
        )
        self._check_divergence(result, replicates)
        return result

    @staticmethod
    def _check_divergence(result: BatchResult, replicates: int) -> None:
        if result.n_diverged > MAX_DIVERGED_FRACTION * replicates:
            raise ExperimentError(f"{result.n_diverged}/{replicates} yol ıraksadı (> %1).")
        if result.n_diverged:
            logger.warning("%d/%d yol ıraksadı ve dışlandı.", result.n_diverged, replicates)
