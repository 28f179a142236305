# src/application/services/simulation/euler_engine.py

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from src.application.services.simulation.observers import PathObserver
from src.domain.models.diffusion import DiffusionModel
from src.domain.models.errors import ArgumentError, DivergenceError
from src.domain.models.trajectory import Trajectory
from src.infrastructure.random.stream_factory import stream

logger = logging.getLogger(__name__)

DIVERGENCE_NORM = 1e12
_NOISE_BUDGET = 1 << 18  # tek parçada üretilen Gauss sayısı üst sınırı


@dataclass
class BatchResult:
    replicate_ids: np.ndarray
    final_states: np.ndarray            # (B, d), ıraksayanlar için NaN
    alive: np.ndarray                   # (B,)
    diverged_step: np.ndarray           # (B,), -1 = ıraksamadı
    diverged_norm: np.ndarray           # (B,)
    observations: List[np.ndarray] = field(default_factory=list)
    observation_axes: List[int] = field(default_factory=list)
    states: Optional[np.ndarray] = None  # (n_steps + 1, B, d) yalnızca keep_states ile

    @property
    def n_diverged(self) -> int:
        return int(np.count_nonzero(~self.alive))


def _validate(model: DiffusionModel, x0s: np.ndarray, step: float, n_steps: int, resolution: int) -> None:
    if not (step > 0 and math.isfinite(step)):
        raise ArgumentError(f"step pozitif olmalı: {step}")
    if n_steps < 1:
        raise ArgumentError(f"n_steps >= 1 olmalı: {n_steps}")
    if resolution < 1:
        raise ArgumentError(f"brownian_resolution >= 1 olmalı: {resolution}")
    if x0s.shape[-1] != model.dim:
        raise ArgumentError(f"x0 boyutu {x0s.shape[-1]} != model boyutu {model.dim}")
    if not np.all(np.isfinite(x0s)):
        raise ArgumentError("x0 sonlu olmalı.")


def _draw_chunk(generators, m: int, dim: int, resolution: int) -> np.ndarray:
    """(m, B, d) standart normal artımlar; her replika yalnızca kendi akışını tüketir."""
    noise = np.empty((m, len(generators), dim))
    for j, gen in enumerate(generators):
        if resolution == 1:
            noise[:, j, :] = gen.standard_normal((m, dim))
        else:
            draws = gen.standard_normal((m, resolution, dim))
            noise[:, j, :] = draws.sum(axis=1) / math.sqrt(resolution)
    return noise


def simulate_batch(
    model: DiffusionModel,
    x0s: np.ndarray,
    step: float,
    n_steps: int,
    seed: int,
    replicate_ids: Sequence[int],
    brownian_resolution: int = 1,
    keep_states: bool = False,
    observers: Sequence[PathObserver] = (),
) -> BatchResult:
    """
    Bir replika grubunu vektörize Euler–Maruyama ile ilerletir.

    X_{k+1} = X_k + b(X_k) step + sigma(X_k) sqrt(step) xi_k.
    Replika i yalnızca (seed, i) akışını kullanır; bu nedenle sonucu tekil koşudan bağımsızdır.
    ||X|| > 1e12 veya sonlu olmayan durumda replika maskelenir ve ıraksama adımı kaydedilir.
    """
    ids = np.asarray(list(replicate_ids), dtype=np.int64)
    B = ids.size
    x0s = np.asarray(x0s, dtype=float)
    if x0s.ndim == 1:
        x0s = np.broadcast_to(x0s, (B, x0s.size))
    _validate(model, x0s, step, n_steps, brownian_resolution)
    d = model.dim

    generators = [stream(seed, int(rid)) for rid in ids]
    X = np.array(x0s, dtype=float, copy=True)
    alive = np.ones(B, dtype=bool)
    diverged_step = np.full(B, -1, dtype=np.int64)
    diverged_norm = np.full(B, np.nan)
    states = np.empty((n_steps + 1, B, d)) if keep_states else None
    if states is not None:
        states[0] = X

    for obs in observers:
        obs.start(B, d)
        obs.observe(0, X, alive)

    sqrt_step = math.sqrt(step)
    chunk = max(1, min(n_steps, _NOISE_BUDGET // max(1, B * brownian_resolution * d)))
    k = 0
    while k < n_steps:
        m = min(chunk, n_steps - k)
        noise = _draw_chunk(generators, m, d, brownian_resolution)
        for i in range(m):
            drift = model.drift(X)
            sigma = model.diffusion(X)
            X = X + drift * step + np.einsum("...ij,...j->...i", sigma, noise[i]) * sqrt_step
            k += 1
            norms = np.linalg.norm(X, axis=1)
            bad = alive & ~(np.isfinite(norms) & (norms <= DIVERGENCE_NORM))
            if bad.any():
                diverged_step[bad] = k
                diverged_norm[bad] = norms[bad]
                alive &= ~bad
                logger.debug("Iraksama: adım=%d, replikalar=%s", k, ids[bad].tolist())
            if not alive.all():
                X[~alive] = 0.0
            for obs in observers:
                obs.observe(k, X, alive)
            if states is not None:
                states[k] = X

    final = X.copy()
    final[~alive] = np.nan
    return BatchResult(
        replicate_ids=ids,
        final_states=final,
        alive=alive,
        diverged_step=diverged_step,
        diverged_norm=diverged_norm,
        observations=[obs.result() for obs in observers],
        observation_axes=[obs.batch_axis for obs in observers],
        states=states,
    )


def euler_maruyama(
    model: DiffusionModel,
    x0: np.ndarray,
    step: float,
    n_steps: int,
    seed: int,
    replicate_id: int = 0,
    brownian_resolution: int = 1,
    t0: float = 0.0,
) -> Trajectory:
    """
    Tek bir yolu simüle eder ve tüm durumları saklar.

    Raises:
        DivergenceError: yol ıraksarsa (adım indeksi ile).
    """
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    result = simulate_batch(
        model,
        x0.reshape(1, -1),
        step,
        n_steps,
        seed,
        [replicate_id],
        brownian_resolution=brownian_resolution,
        keep_states=True,
    )
    if not result.alive[0]:
        raise DivergenceError(int(result.diverged_step[0]), replicate_id, float(result.diverged_norm[0]))
    return Trajectory(
        t0=t0,
        step=step,
        states=result.states[:, 0, :],
        seed=seed,
        replicate_id=replicate_id,
        brownian_resolution=brownian_resolution,
    )
