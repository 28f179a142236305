# src/application/services/langevin/quadrature.py

from __future__ import annotations

import logging
from typing import Optional

import numpy as np
from scipy.integrate import simpson

from src.domain.models.errors import ArgumentError, EvaluationError
from src.domain.models.function_class import TestFunction
from src.domain.models.langevin import Potential

logger = logging.getLogger(__name__)

DEFAULT_NODES_1D = 400_001
DEFAULT_NODES_2D = 1201
POTENTIAL_RISE = 50.0      # kenarda U - U(0) en az bu kadar
DECAY_TOLERANCE = 1e-12
_MAX_DOUBLINGS = 60


def default_half_width(pot: Potential) -> float:
    """e1 yönünde U(r e1) - U(0) >= 50 olan ilk 2'nin kuvveti r."""
    origin = np.zeros((1, pot.dim))
    u0 = float(np.asarray(pot.U(origin)).reshape(-1)[0])
    half_width = 1.0
    for _ in range(_MAX_DOUBLINGS):
        probe = np.zeros((1, pot.dim))
        probe[0, 0] = half_width
        if float(np.asarray(pot.U(probe)).reshape(-1)[0]) - u0 >= POTENTIAL_RISE:
            return half_width
        half_width *= 2.0
    raise ArgumentError(f"{pot.name}: uygun yarı genişlik bulunamadı (U yeterince büyümüyor).")


def quadrature_target_integral(
    pot: Potential,
    f: TestFunction,
    half_width: Optional[float] = None,
    n_nodes: Optional[int] = None,
) -> float:
    """
    pi(f) = int f e^{-U} / int e^{-U}, [-h, h]^d üzerinde bileşik Simpson ile (d <= 2).

    Ağırlıklar exp(-(U - min U)) ile ölçeklenir. Kenardaki (1 + |f|) e^{-U} tepe değerinin
    1e-12 katını aşıyorsa aralık yetersiz sayılır.

    Raises:
        ArgumentError: d > 2, n_nodes < 3 veya kenar sönümü yetersizse.
        EvaluationError: integrand sonlu değilse.
    """
    if pot.dim not in (1, 2):
        raise ArgumentError(f"Kuadratür yalnızca d <= 2 için: d={pot.dim}")
    h = default_half_width(pot) if half_width is None else float(half_width)
    if not h > 0:
        raise ArgumentError("half_width pozitif olmalı.")
    n = n_nodes or (DEFAULT_NODES_1D if pot.dim == 1 else DEFAULT_NODES_2D)
    if n < 3:
        raise ArgumentError("n_nodes >= 3 olmalı.")
    if n % 2 == 0:
        n += 1

    axis = np.linspace(-h, h, n)
    if pot.dim == 1:
        points = axis.reshape(-1, 1)
    else:
        gx, gy = np.meshgrid(axis, axis, indexing="ij")
        points = np.stack([gx.ravel(), gy.ravel()], axis=-1)

    u = np.asarray(pot.U(points), dtype=float).reshape(-1)
    fx = np.asarray(f(points), dtype=float).reshape(-1)
    for arr, label in ((u, "U"), (fx, f.name)):
        bad = ~np.isfinite(arr)
        if bad.any():
            raise EvaluationError(f"{label} kuadratür düğümünde sonlu değil", points[int(np.flatnonzero(bad)[0])])
    weights = np.exp(-(u - u.min()))

    envelope = (1.0 + np.abs(fx)) * weights
    if pot.dim == 1:
        edge = max(envelope[0], envelope[-1])
        num = simpson(fx * weights, x=axis)
        den = simpson(weights, x=axis)
    else:
        grid = envelope.reshape(n, n)
        edge = max(grid[0].max(), grid[-1].max(), grid[:, 0].max(), grid[:, -1].max())
        num = simpson(simpson((fx * weights).reshape(n, n), x=axis, axis=1), x=axis)
        den = simpson(simpson(weights.reshape(n, n), x=axis, axis=1), x=axis)
    if edge > DECAY_TOLERANCE * envelope.max():
        raise ArgumentError(
            f"half_width={h:g} yetersiz: kenar/tepe oranı {edge / envelope.max():.3e} > {DECAY_TOLERANCE:g}"
        )
    logger.debug("Kuadratür: %s, h=%g, düğüm=%d, pi(f)=%.12g", pot.name, h, n, num / den)
    return float(num / den)
