# src/application/services/simulation/simulation_service.py

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from src.application.services.simulation.euler_engine import BatchResult, euler_maruyama, simulate_batch
from src.application.services.simulation.observers import PathObserver
from src.domain.models.diffusion import DiffusionModel
from src.domain.models.errors import ArgumentError, EvaluationError, ExperimentError, UnsupportedMethodError
from src.domain.models.reports import ConditionReport
from src.domain.models.trajectory import Trajectory
from src.infrastructure.random.stream_factory import CHANNEL_AUX, CHANNEL_INITIAL, stream, sub_seed

logger = logging.getLogger(__name__)

# Yardımcı akış etiketleri
_PROBE_LABEL = 7
_BURNIN_LABEL = 11


@dataclass(frozen=True)
class StationaryMethod:
    """Durağan başlangıç: "exact" (kapalı form örnekleyici) veya "burnin" (T_burn uzunluğunda Euler)."""
    kind: str
    T_burn: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("exact", "burnin"):
            raise ArgumentError(f"Bilinmeyen durağan yöntem: {self.kind}")
        if self.kind == "burnin" and not self.T_burn > 0:
            raise ArgumentError("burnin için T_burn > 0 olmalı.")

    @classmethod
    def default_for(cls, model: DiffusionModel) -> "StationaryMethod":
        if model.has_exact_sampler:
            return cls("exact")
        return cls("burnin", 20.0 * (1.0 + model.ergodicity.M0))

    def describe(self) -> str:
        return "exact" if self.kind == "exact" else f"burnin({self.T_burn:g})"


def sphere_directions(dim: int, count: int, seed: int) -> np.ndarray:
    """±e_i eksenleri + `count` rastgele birim yön; sabit alt seed ile."""
    gen = stream(sub_seed(seed, _PROBE_LABEL), 0, CHANNEL_AUX)
    raw = gen.standard_normal((count, dim))
    norms = np.linalg.norm(raw, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    axes = np.vstack([np.eye(dim), -np.eye(dim)])
    return np.vstack([axes, raw / norms])


class SimulationService:
    """
    Euler–Maruyama simülasyonlarının uygulama katmanı girişi.

    Replikaları batch_size büyüklüğünde gruplara böler ve en fazla `threads`
    iş parçacığında çalıştırır; sonuçlar replika sırasıyla birleştirilir.
    """

    def __init__(self, euler_step: float = 1e-3, batch_size: int = 512, threads: int = 0) -> None:
        if not euler_step > 0:
            raise ArgumentError("euler_step pozitif olmalı.")
        if batch_size < 1:
            raise ArgumentError("batch_size >= 1 olmalı.")
        self.euler_step = euler_step
        self.batch_size = batch_size
        self.threads = threads

    # ==================== Public API ==================== #

    def euler_maruyama(
        self,
        model: DiffusionModel,
        x0: np.ndarray,
        n_steps: int,
        seed: int,
        replicate_id: int = 0,
        step: Optional[float] = None,
        brownian_resolution: int = 1,
    ) -> Trajectory:
        return euler_maruyama(
            model,
            x0,
            step or self.euler_step,
            n_steps,
            seed,
            replicate_id,
            brownian_resolution=brownian_resolution,
        )

    def run_replicates(
        self,
        model: DiffusionModel,
        x0s: np.ndarray,
        n_steps: int,
        seed: int,
        replicate_ids: Sequence[int],
        observer_factory: Callable[[], Sequence[PathObserver]] = lambda: (),
        step: Optional[float] = None,
        brownian_resolution: int = 1,
    ) -> BatchResult:
        """
        Çok sayıda replikayı gruplar halinde simüle eder.

        Args:
            x0s: (R, d) başlangıç durumları veya tek (d,) nokta.
            observer_factory: her grup için yeni gözlemci listesi üretir.

        Returns:
            Tüm grupların birleştirilmiş BatchResult nesnesi (states saklanmaz).
        """
        ids = np.asarray(list(replicate_ids), dtype=np.int64)
        x0s = np.asarray(x0s, dtype=float)
        if x0s.ndim == 1:
            x0s = np.broadcast_to(x0s, (ids.size, x0s.size))
        step = step or self.euler_step
        slices = [slice(i, min(i + self.batch_size, ids.size)) for i in range(0, ids.size, self.batch_size)]

        def _run(sl: slice) -> BatchResult:
            logger.debug("Grup simülasyonu: replikalar %d..%d", ids[sl][0], ids[sl][-1])
            return simulate_batch(
                model,
                x0s[sl],
                step,
                n_steps,
                seed,
                ids[sl],
                brownian_resolution=brownian_resolution,
                observers=observer_factory(),
            )

        workers = self.worker_count(len(slices))
        if workers <= 1:
            parts = [_run(sl) for sl in slices]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(_run, slices))
        return _merge(parts)

    def sample_stationary(
        self,
        model: DiffusionModel,
        method: StationaryMethod,
        seed: int,
        step: Optional[float] = None,
    ) -> np.ndarray:
        return self.sample_stationary_batch(model, method, seed, [0], step)[0]

    def sample_stationary_batch(
        self,
        model: DiffusionModel,
        method: StationaryMethod,
        seed: int,
        replicate_ids: Sequence[int],
        step: Optional[float] = None,
    ) -> np.ndarray:
        """
        Replika başına bir mu-yaklaşık başlangıç noktası, (R, d).

        Raises:
            UnsupportedMethodError: exact istendi ama model örnekleyici kaydetmedi.
        """
        return self.stationary_starts(model, method, seed, replicate_ids, step)[0]

    def stationary_starts(
        self,
        model: DiffusionModel,
        method: StationaryMethod,
        seed: int,
        replicate_ids: Sequence[int],
        step: Optional[float] = None,
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Başlangıç noktaları ve burn-in sırasında ıraksamayan replikaların maskesi (ıraksayan satırlar NaN)."""
        ids = list(replicate_ids)
        if method.kind == "exact":
            if model.stationary_sampler is None:
                raise UnsupportedMethodError(f"'{model.name}' için kapalı form durağan örnekleyici yok.")
            draws = [
                np.asarray(model.stationary_sampler(stream(seed, rid, CHANNEL_INITIAL), 1), dtype=float)[0]
                for rid in ids
            ]
            return np.vstack(draws).reshape(len(ids), model.dim), np.ones(len(ids), dtype=bool)

        step = step or self.euler_step
        n_steps = max(1, int(math.ceil(method.T_burn / step - 1e-9)))
        result = self.run_replicates(
            model,
            np.zeros(model.dim),
            n_steps,
            sub_seed(seed, _BURNIN_LABEL),
            ids,
            step=step,
        )
        if result.n_diverged:
            logger.warning("Burn-in sırasında %d yol ıraksadı.", result.n_diverged)
        return result.final_states, result.alive.copy()

    def run_from_stationary(
        self,
        model: DiffusionModel,
        method: StationaryMethod,
        n_steps: int,
        seed: int,
        init_seed: int,
        replicate_ids: Sequence[int],
        observer_factory: Callable[[], Sequence[PathObserver]] = lambda: (),
    ) -> BatchResult:
        """
        Durağan başlangıçtan run_replicates. Burn-in sırasında ıraksayan replikalar ana koşuya
        alınmaz; sonuçta alive=False ve diverged_step=0 olarak yer alırlar.

        Raises:
            ExperimentError: burn-in sonunda hiçbir replika kalmazsa.
        """
        ids = np.asarray(list(replicate_ids), dtype=np.int64)
        x0s, started = self.stationary_starts(model, method, init_seed, ids)
        if started.all():
            return self.run_replicates(model, x0s, n_steps, seed, ids, observer_factory=observer_factory)
        if not started.any():
            raise ExperimentError(f"Burn-in sırasında {ids.size} yolun tamamı ıraksadı.")
        part = self.run_replicates(model, x0s[started], n_steps, seed, ids[started], observer_factory=observer_factory)
        return _scatter(part, started, ids)

    def check_drift_condition(
        self,
        model: DiffusionModel,
        probe_radii: Sequence[float],
        directions_per_radius: int = 32,
        seed: int = 0,
    ) -> ConditionReport:
        """
        ||x|| >= M0 için <b(x), x/||x||> <= -r ||x||^{-q} koşulunu ızgarada dener.

        worst_margin = max <b(x), x/||x||> + r ||x||^{-q}; holds ancak ve ancak tüm marjlar <= 0
        (yuvarlama toleransı 1e-12 göreli).
        """
        params = model.ergodicity
        radii = np.asarray(list(probe_radii), dtype=float)
        if radii.size == 0 or np.any(radii < params.M0) or np.any(radii <= 0):
            raise ArgumentError(f"Prob yarıçapları M0={params.M0} değerinden küçük olamaz.")
        if directions_per_radius < 1:
            raise ArgumentError("directions_per_radius >= 1 olmalı.")

        directions = sphere_directions(model.dim, directions_per_radius, seed)
        points = (radii[:, None, None] * directions[None, :, :]).reshape(-1, model.dim)
        drift = np.asarray(model.drift(points), dtype=float)
        for i in range(points.shape[0]):
            if not np.all(np.isfinite(drift[i])):
                raise EvaluationError("Drift sonlu değil", points[i])

        norms = np.linalg.norm(points, axis=1)
        radial = np.einsum("ij,ij->i", drift, points) / norms
        bound = params.r_frak * norms ** (-params.q)
        margins = radial + bound
        tolerance = 1e-12 * (np.abs(radial) + np.abs(bound) + 1.0)
        worst = int(np.argmax(margins))
        holds = bool(np.all(margins <= tolerance))
        witness = None if holds else tuple(float(v) for v in points[worst])
        logger.info("Drift koşulu '%s': holds=%s, worst_margin=%.3e", model.name, holds, margins[worst])
        return ConditionReport(
            holds=holds,
            worst_margin=float(margins[worst]),
            witness=witness,
            probes=int(points.shape[0]),
        )

    def ellipticity_constants(self, model: DiffusionModel, probes: np.ndarray) -> Tuple[float, float, float]:
        """Prob noktalarında (lambda_-, lambda_+, Lambda) tahmini: radyal kuadratik form ve tr(a)/d."""
        probes = np.atleast_2d(np.asarray(probes, dtype=float))
        probes = probes[np.linalg.norm(probes, axis=1) > 0]
        if probes.size == 0:
            raise ArgumentError("Sıfırdan farklı en az bir prob noktası gerekir.")
        sigma = np.asarray(model.diffusion(probes), dtype=float)
        a = sigma @ np.swapaxes(sigma, -1, -2)
        unit = probes / np.linalg.norm(probes, axis=1, keepdims=True)
        radial = np.einsum("ni,nij,nj->n", unit, a, unit)
        trace = np.trace(a, axis1=-2, axis2=-1) / model.dim
        return float(radial.min()), float(radial.max()), float(trace.max())

    def worker_count(self, n_tasks: int) -> int:
        """threads=0 ise os.cpu_count(); en fazla n_tasks."""
        cap = self.threads if self.threads > 0 else (os.cpu_count() or 1)
        return max(1, min(cap, n_tasks))


def _merge(parts: List[BatchResult]) -> BatchResult:
    if len(parts) == 1:
        return parts[0]
    n_obs = len(parts[0].observations)
    return BatchResult(
        replicate_ids=np.concatenate([p.replicate_ids for p in parts]),
        final_states=np.concatenate([p.final_states for p in parts]),
        alive=np.concatenate([p.alive for p in parts]),
        diverged_step=np.concatenate([p.diverged_step for p in parts]),
        diverged_norm=np.concatenate([p.diverged_norm for p in parts]),
        observations=[
            np.concatenate([p.observations[j] for p in parts], axis=parts[0].observation_axes[j])
            for j in range(n_obs)
        ],
        observation_axes=list(parts[0].observation_axes),
    )


def _scatter(part: BatchResult, started: np.ndarray, ids: np.ndarray) -> BatchResult:
    """Burn-in kayıplarını (adım 0'da ıraksamış) tam replika listesine geri yerleştirir."""

    def widen(arr: np.ndarray, axis: int, fill) -> np.ndarray:
        shape = list(arr.shape)
        shape[axis] = started.size
        out = np.full(shape, fill, dtype=arr.dtype)
        np.moveaxis(out, axis, 0)[started] = np.moveaxis(arr, axis, 0)
        return out

    return BatchResult(
        replicate_ids=ids,
        final_states=widen(part.final_states, 0, np.nan),
        alive=widen(part.alive, 0, False),
        diverged_step=widen(part.diverged_step, 0, 0),
        diverged_norm=widen(part.diverged_norm, 0, np.nan),
        observations=[widen(obs, axis, np.nan) for obs, axis in zip(part.observations, part.observation_axes)],
        observation_axes=list(part.observation_axes),
    )
