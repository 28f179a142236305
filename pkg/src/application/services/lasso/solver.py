# src/application/services/lasso/solver.py

from __future__ import annotations

import logging
from typing import List, Optional, Sequence

import numpy as np

from src.domain.models.errors import ArgumentError, ConvergenceError, NumericalError
from src.domain.models.lasso import GramSystem, LassoFit

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
DEFAULT_MAX_SWEEPS = 100_000
SINGULAR_CONDITION = 1e12


def soft_threshold(value: float, threshold: float) -> float:
    """sign(v) (|v| - t)_+"""
    if value > threshold:
        return value - threshold
    if value < -threshold:
        return value + threshold
    return 0.0


def kkt_residual(sys: GramSystem, theta: np.ndarray, lam: float) -> float:
    """max_i dist(2 (Psi theta - h)_i, -lam * d|theta_i|)."""
    grad = 2.0 * (sys.Psi_bar @ theta - sys.h_bar)
    active = theta != 0.0
    residual = np.where(
        active,
        np.abs(grad + lam * np.sign(theta)),
        np.maximum(np.abs(grad) - lam, 0.0),
    )
    return float(residual.max()) if residual.size else 0.0


def lasso_solve(
    sys: GramSystem,
    lam: float,
    tol: float = DEFAULT_TOL,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
    theta_init: Optional[np.ndarray] = None,
) -> LassoFit:
    """
    theta^T Psi theta - 2 theta^T h + lam ||theta||_1 amacını döngüsel koordinat inişiyle çözer.

    Koordinat güncellemesi: theta_i = S(h_i - sum_{j != i} Psi_ij theta_j, lam/2) / Psi_ii.
    Her tur sonunda amaç değerinin artmadığı denetlenir.

    Raises:
        ArgumentError: lam < 0 ya da Psi köşegeninde pozitif olmayan girdi varsa.
        ConvergenceError: turlar bittiğinde KKT artığı > 100 * tol ise.
    """
    if lam < 0:
        raise ArgumentError(f"lambda negatif olamaz: {lam}")
    if not tol > 0 or max_sweeps < 1:
        raise ArgumentError("tol > 0 ve max_sweeps >= 1 olmalı.")
    Psi, h = sys.Psi_bar, sys.h_bar
    diag = np.diag(Psi).copy()
    if np.any(diag <= 0):
        raise ArgumentError(f"Psi köşegeninde pozitif olmayan girdi: indeks {int(np.flatnonzero(diag <= 0)[0])}")

    theta = np.zeros(sys.N) if theta_init is None else np.array(theta_init, dtype=float).reshape(sys.N)
    g = Psi @ theta
    half_lam = 0.5 * lam
    objective = sys.objective(theta, lam)
    sweeps = 0
    converged = False
    while sweeps < max_sweeps:
        sweeps += 1
        max_change = 0.0
        for i in range(sys.N):
            old = theta[i]
            partial = h[i] - (g[i] - diag[i] * old)
            new = soft_threshold(partial, half_lam) / diag[i]
            if new != old:
                g += Psi[:, i] * (new - old)
                theta[i] = new
                max_change = max(max_change, abs(new - old))
        current = sys.objective(theta, lam)
        if current > objective + 1e-12 * (1.0 + abs(objective)):
            raise NumericalError(f"Amaç değeri arttı: {objective:.17g} -> {current:.17g}", location=sweeps)
        objective = current
        if max_change <= tol:
            converged = True
            break

    residual = kkt_residual(sys, theta, lam)
    if not converged and residual > 100.0 * tol:
        raise ConvergenceError(sweeps, residual)
    logger.debug("Lasso: lambda=%g, tur=%d, KKT=%.3e, destek=%d", lam, sweeps, residual, int(np.count_nonzero(theta)))
    return LassoFit(theta_hat=theta, lam=float(lam), objective=objective, kkt_residual=residual, sweeps=sweeps)


def lasso_path(
    sys: GramSystem,
    lambdas: Sequence[float],
    tol: float = DEFAULT_TOL,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
) -> List[LassoFit]:
    """Azalan lambda sırasıyla sıcak başlatmalı çözümler; sonuçlar azalan lambda sırasındadır."""
    if len(lambdas) == 0:
        raise ArgumentError("lambda ızgarası boş.")
    fits: List[LassoFit] = []
    theta = None
    for lam in sorted((float(v) for v in lambdas), reverse=True):
        fit = lasso_solve(sys, lam, tol, max_sweeps, theta_init=theta)
        theta = fit.theta_hat
        fits.append(fit)
    return fits


def mle(sys: GramSystem) -> np.ndarray:
    """lambda = 0 tahmincisi Psi^{-1} h."""
    cond = np.linalg.cond(sys.Psi_bar)
    if not cond < SINGULAR_CONDITION:
        raise NumericalError(f"Psi_bar sayısal olarak tekil (koşul sayısı {cond:.3e})", location="Psi_bar")
    return np.linalg.solve(sys.Psi_bar, sys.h_bar)
