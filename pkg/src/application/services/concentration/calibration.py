# src/application/services/concentration/calibration.py

from __future__ import annotations

import logging
import math
from typing import Callable, List, Sequence, Tuple

import numpy as np
import pandas as pd

from src.domain.models.errors import ArgumentError, CalibrationError
from src.domain.models.reports import TailTable

logger = logging.getLogger(__name__)

GRID_MIN = 1e-3
GRID_MAX = 1e3
GRID_FACTOR = 1.05


def scale_grid(lo: float = GRID_MIN, hi: float = GRID_MAX, factor: float = GRID_FACTOR) -> np.ndarray:
    """[lo, hi] üzerinde geometrik ızgara (hi dahil)."""
    count = int(math.floor(math.log(hi / lo) / math.log(factor) + 1e-9)) + 1
    grid = lo * factor ** np.arange(count)
    if grid[-1] < hi:
        grid = np.append(grid, hi)
    return grid


def _violations(table: TailTable, shape: Callable[[float], float], scale: float, u_grid: Sequence[float], slack: float):
    rows = []
    for u in u_grid:
        threshold = scale * shape(u)
        fraction, se = table.exceedance(threshold)
        allowed = slack * math.exp(-u) + 2.0 * se
        rows.append((u, threshold, fraction, se, allowed, fraction <= allowed))
    return rows


def calibrate_scale(
    table: TailTable,
    shape: Callable[[float], float],
    u_grid: Sequence[float],
    slack: float = 1.0,
) -> float:
    """
    Izgaradaki en küçük s: her u için P^(|G| > s * shape(u)) <= slack * e^{-u} + 2 SE.

    Aşım oranı eşikte artmayan olduğundan uygun küme yukarı kapalıdır.

    Raises:
        CalibrationError: ızgaranın üst ucu bile sağlamazsa; diagnostics bir pandas DataFrame'dir.
    """
    if len(u_grid) == 0:
        raise ArgumentError("u_grid boş olamaz.")
    if slack < 0:
        raise ArgumentError("slack negatif olamaz.")
    for scale in scale_grid():
        if all(row[-1] for row in _violations(table, shape, scale, u_grid, slack)):
            logger.info("Kalibrasyon: ölçek=%.6g (u=%s)", scale, list(u_grid))
            return float(scale)
    diagnostics = pd.DataFrame(
        _violations(table, shape, GRID_MAX, u_grid, slack),
        columns=["u", "threshold", "exceed_fraction", "se", "allowed", "ok"],
    )
    raise CalibrationError(f"[{GRID_MIN:g}, {GRID_MAX:g}] ızgarasında uygun ölçek yok.", diagnostics)


def calibrate_W(
    table: TailTable,
    L_frak: float,
    sigma_tilde: float,
    u_grid: Sequence[float],
    slack: float = 1.0,
) -> float:
    """W^: eşik e L W u^{sigma~}."""
    if any(u < 2 for u in u_grid):
        raise ArgumentError("u_grid elemanları >= 2 olmalı.")
    if not L_frak > 0:
        raise ArgumentError("L_frak pozitif olmalı.")
    return calibrate_scale(table, lambda u: math.e * L_frak * u ** sigma_tilde, u_grid, slack)


def calibrate_D(
    table: TailTable,
    n: int,
    delta_step: float,
    rho: float,
    sigma_tilde: float,
    u_grid: Sequence[float],
    slack: float = 1.0,
) -> float:
    """D^: eşik e (sqrt(n) Delta^{3/2} + Delta u^{rho} + u^{sigma~}) D."""
    if any(u < 2 for u in u_grid):
        raise ArgumentError("u_grid elemanları >= 2 olmalı.")
    if n < 1 or not delta_step > 0:
        raise ArgumentError("n >= 1 ve delta_step > 0 olmalı.")
    base = math.sqrt(n) * delta_step ** 1.5
    return calibrate_scale(
        table,
        lambda u: math.e * (base + delta_step * u ** rho + u ** sigma_tilde),
        u_grid,
        slack,
    )


def validation_violations(
    table: TailTable,
    shape: Callable[[float], float],
    scale: float,
    u_grid: Sequence[float],
) -> int:
    """Bağımsız bir tabloda kalibre edilmiş ölçeğin ihlal ettiği u sayısı."""
    return sum(not row[-1] for row in _violations(table, shape, scale, u_grid, 1.0))


def empirical_moments(values: Sequence[float], p_list: Sequence[float]) -> List[Tuple[float, float]]:
    """(p, (mean |v|^p)^{1/p}) listesi."""
    arr = np.abs(np.asarray(values, dtype=float).reshape(-1))
    if arr.size == 0:
        raise ArgumentError("values boş olamaz.")
    out = []
    for p in p_list:
        if p < 1:
            raise ArgumentError(f"p >= 1 olmalı: {p}")
        peak = float(arr.max())
        if peak == 0.0:
            out.append((p, 0.0))
            continue
        # taşmayı önlemek için en büyük değere göre ölçekle
        scaled = math.fsum((arr / peak) ** p) / arr.size
        out.append((p, peak * scaled ** (1.0 / p)))
    return out


def coverage_count(estimates: Sequence[float], target: float, epsilon: float) -> int:
    """|tahmin - hedef| <= eps olan tahmin sayısı."""
    arr = np.asarray(estimates, dtype=float)
    return int(np.count_nonzero(np.abs(arr - target) <= epsilon))
