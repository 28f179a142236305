# src/application/services/analysis/functionals.py

from __future__ import annotations

import math
from dataclasses import replace
from typing import Sequence

import numpy as np

from src.domain.models.errors import ArgumentError, EvaluationError
from src.domain.models.function_class import TestFunction
from src.domain.models.reports import ConditionReport
from src.domain.models.trajectory import Trajectory
from src.infrastructure.random.stream_factory import CHANNEL_AUX, stream


def as_samples(samples: Sequence) -> np.ndarray:
    """Örnekleri (n, d) dizisine çevirir; tek boyutlu girdi n adet skaler (d = 1) sayılır."""
    arr = np.asarray(samples, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ArgumentError("Örnekler (n, d) biçiminde olmalı.")
    return arr


def evaluate_finite(f: TestFunction, states: np.ndarray) -> np.ndarray:
    values = np.asarray(f(states), dtype=float).reshape(states.shape[0])
    bad = ~np.isfinite(values)
    if bad.any():
        raise EvaluationError(f"{f.name} sonlu olmayan değer üretti", states[int(np.flatnonzero(bad)[0])])
    return values


def continuous_additive(traj: Trajectory, f: TestFunction) -> float:
    """
    G_t(f) = t^{-1/2} * sum_{k=0}^{n-1} f(X_{k delta}) delta, t = n delta (sol uç Riemann toplamı).
    """
    if traj.states.shape[0] < 2:
        raise ArgumentError("Trajectory en az iki durum içermelidir.")
    n = traj.n_steps
    values = evaluate_finite(f, traj.states[:n])
    t = n * traj.step
    return math.fsum(values) * traj.step / math.sqrt(t)


def discrete_additive(samples: Sequence, delta: float, f: TestFunction) -> float:
    """G_{n,Delta}(f) = (n Delta)^{-1/2} * sum_{k=1}^{n} f(X_{k Delta}) Delta; samples[0] = X_Delta."""
    arr = as_samples(samples)
    if arr.shape[0] == 0:
        raise ArgumentError("Örnek kümesi boş.")
    if not delta > 0:
        raise ArgumentError(f"delta pozitif olmalı: {delta}")
    n = arr.shape[0]
    values = evaluate_finite(f, arr)
    return math.fsum(values) * delta / math.sqrt(n * delta)


def burnin_average_continuous(traj: Trajectory, v: float, t: float, f: TestFunction) -> float:
    """H_{v,t}(f) = (1/t) * [v, v+t] üzerindeki sol uç Riemann toplamı (t0'a göre)."""
    if v < 0 or not t > 0:
        raise ArgumentError("v >= 0 ve t > 0 olmalı.")
    start = int(round(v / traj.step))
    stop = int(round((v + t) / traj.step))
    if stop > traj.n_steps or stop <= start:
        raise ArgumentError(
            f"Trajectory [0, {v + t}] aralığını kapsamıyor (ufuk {traj.horizon})."
        )
    values = evaluate_finite(f, traj.states[start:stop])
    return math.fsum(values) * traj.step / t


def burnin_average_discrete(samples: Sequence, delta: float, m: int, n: int, f: TestFunction) -> float:
    """H_{m,n,Delta}(f) = (1/n) sum_{k=m+1}^{m+n} f(X_{k Delta}); samples[0] = X_Delta."""
    arr = as_samples(samples)
    if m < 0 or n < 1:
        raise ArgumentError("m >= 0 ve n >= 1 olmalı.")
    if not delta > 0:
        raise ArgumentError("delta pozitif olmalı.")
    if arr.shape[0] < m + n:
        raise ArgumentError(f"Yetersiz örnek: {arr.shape[0]} < m + n = {m + n}")
    values = evaluate_finite(f, arr[m:m + n])
    return math.fsum(values) / n


def discretisation_error(traj: Trajectory, delta_factor: int, f: TestFunction) -> float:
    """
    Aynı yol üzerinde |G_{n,Delta}(f) - G_{n Delta}(f)|, Delta = delta_factor * step.
    """
    if delta_factor < 1:
        raise ArgumentError("delta_factor >= 1 olmalı.")
    n = traj.n_steps // delta_factor
    if n < 1:
        raise ArgumentError("Trajectory tek bir Delta adımından kısa.")
    delta = delta_factor * traj.step
    samples = traj.states[delta_factor:n * delta_factor + 1:delta_factor]
    truncated = Trajectory(
        t0=traj.t0,
        step=traj.step,
        states=traj.states[: n * delta_factor + 1],
        seed=traj.seed,
        replicate_id=traj.replicate_id,
    )
    return abs(discrete_additive(samples, delta, f) - continuous_additive(truncated, f))


def center(f: TestFunction, mean: float) -> TestFunction:
    """f - mean; centered_mean = 0 olarak işaretlenir."""
    base = f.eval
    return replace(
        f,
        eval=lambda x: base(x) - mean,
        L_frak=f.L_frak + abs(mean),
        centered_mean=0.0,
        name=f"{f.name}-c",
    )


def check_growth(f: TestFunction, dim: int, n_probe: int = 256, seed: int = 0) -> ConditionReport:
    """
    |f(x)| <= L (1 + ||x||^{eta1}) koşulunu rastgele problarda dener.
    Yarıçaplar log-düzgün [1e-2, 1e3], yönler küre üzerinde düzgün.
    """
    if n_probe < 1 or dim < 1:
        raise ArgumentError("n_probe ve dim en az 1 olmalı.")
    gen = stream(seed, 0, CHANNEL_AUX)
    directions = gen.standard_normal((n_probe, dim))
    directions /= np.maximum(np.linalg.norm(directions, axis=1, keepdims=True), 1e-300)
    radii = 10.0 ** gen.uniform(-2.0, 3.0, size=n_probe)
    probes = np.vstack([np.zeros((1, dim)), directions * radii[:, None]])
    values = evaluate_finite(f, probes)
    margins = np.abs(values) - f.growth_envelope(probes)
    worst = int(np.argmax(margins))
    holds = bool(np.all(margins <= 1e-12 * f.growth_envelope(probes)))
    return ConditionReport(
        holds=holds,
        worst_margin=float(margins[worst]),
        witness=None if holds else tuple(float(v) for v in probes[worst]),
        probes=int(probes.shape[0]),
    )
