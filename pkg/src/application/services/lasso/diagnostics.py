# src/application/services/lasso/diagnostics.py

from __future__ import annotations

from typing import Tuple

import numpy as np

from src.application.services.bounds.lasso_bounds import sparse_oracle_rhs
from src.domain.models.errors import ArgumentError, NumericalError
from src.domain.models.lasso import GramSystem, LassoFit
from src.infrastructure.random.stream_factory import CHANNEL_AUX, stream

MIN_PROBES = 100


def top_s_indices(theta: np.ndarray, s: int) -> np.ndarray:
    """En büyük |theta| değerine sahip s indeks; eşitlikte küçük indeks önce."""
    theta = np.asarray(theta, dtype=float).reshape(-1)
    if not 0 <= s <= theta.size:
        raise ArgumentError(f"s [0, {theta.size}] aralığında olmalı: {s}")
    order = np.argsort(-np.abs(theta), kind="stable")
    return np.sort(order[:s])


def support(theta: np.ndarray, tol: float = 0.0) -> Tuple[int, ...]:
    theta = np.asarray(theta, dtype=float).reshape(-1)
    return tuple(int(i) for i in np.flatnonzero(np.abs(theta) > tol))


def in_cone(zeta: np.ndarray, s: int, c0: float) -> bool:
    """||zeta||_1 <= (1 + c0) ||zeta|_{I_s(zeta)}||_1."""
    zeta = np.asarray(zeta, dtype=float)
    core = np.abs(zeta[top_s_indices(zeta, s)]).sum()
    total = np.abs(zeta).sum()
    return bool(total <= (1.0 + c0) * core * (1.0 + 1e-12))


def cone_probes(N: int, s: int, c0: float, n_probe: int, seed: int) -> np.ndarray:
    """
    C(s, c0) konisinden prob vektörleri (n_probe + 2N, N).

    Çekirdek: rastgele s elemanlı destek üzerinde standart Gauss.
    Kuyruk: tümleyen üzerinde Gauss, ||kuyruk||_1 = u c0 ||çekirdek||_1 olacak şekilde ölçeklenir;
    probların yarısında u = 1 (koni sınırı), diğer yarısında u ~ U(0, 1).
    Ayrıca 2N işaretli eksen vektörü her zaman eklenir.
    """
    if not 1 <= s <= N:
        raise ArgumentError(f"s [1, {N}] aralığında olmalı: {s}")
    if n_probe < MIN_PROBES:
        raise ArgumentError(f"n_probe >= {MIN_PROBES} olmalı: {n_probe}")
    if c0 < 0:
        raise ArgumentError("c0 negatif olamaz.")
    gen = stream(seed, 0, CHANNEL_AUX)
    probes = np.zeros((n_probe, N))
    for p in range(n_probe):
        core_idx = gen.choice(N, size=s, replace=False)
        probes[p, core_idx] = gen.standard_normal(s)
        rest = np.setdiff1d(np.arange(N), core_idx)
        if rest.size:
            tail = gen.standard_normal(rest.size)
            u = 1.0 if p % 2 == 0 else gen.uniform()
            scale = u * c0 * np.abs(probes[p, core_idx]).sum() / max(np.abs(tail).sum(), 1e-300)
            # sınırdan içeri 1e-9 göreli pay
            probes[p, rest] = tail * scale * (1.0 - 1e-9)
    axes = np.vstack([np.eye(N), -np.eye(N)])
    return np.vstack([probes, axes])


def restricted_eigenvalue_probe(
    sys: GramSystem,
    s: int,
    c0: float,
    n_probe: int = 1000,
    seed: int = 0,
) -> Tuple[float, np.ndarray]:
    """Koni probları üzerinde min zeta^T Psi zeta / ||zeta||^2 ve onu veren vektör."""
    probes = cone_probes(sys.N, s, c0, n_probe, seed)
    norms = np.einsum("ij,ij->i", probes, probes)
    keep = norms > 0
    probes, norms = probes[keep], norms[keep]
    quotients = np.einsum("ij,jk,ik->i", probes, sys.Psi_bar, probes) / norms
    worst = int(np.argmin(quotients))
    return float(quotients[worst]), probes[worst].copy()


def l2_distance(theta1: np.ndarray, theta2: np.ndarray, sys: GramSystem) -> float:
    """(theta1 - theta2)^T Psi_bar (theta1 - theta2)."""
    diff = np.asarray(theta1, dtype=float).reshape(-1) - np.asarray(theta2, dtype=float).reshape(-1)
    if diff.size != sys.N:
        raise ArgumentError(f"theta boyutu {diff.size} != N={sys.N}")
    return float(diff @ sys.Psi_bar @ diff)


def oracle_check(
    fit: LassoFit,
    theta0: np.ndarray,
    sys: GramSystem,
    s0: int,
    e_inf_hat: float,
) -> Tuple[float, float, bool]:
    """lhs = ||theta^ - theta0||^2_{Psi}, rhs = lambda^2 2 s0 / e_inf; holds = lhs <= rhs."""
    if not e_inf_hat > 0:
        raise ArgumentError(f"e_inf_hat pozitif olmalı: {e_inf_hat}")
    lhs = l2_distance(fit.theta_hat, theta0, sys)
    rhs = sparse_oracle_rhs(fit.lam, s0, e_inf_hat)
    return lhs, rhs, bool(lhs <= rhs)


def plugin_constants(sys: GramSystem) -> Tuple[float, float]:
    """(e_inf^ = lambda_min(Psi_bar), D_inf^ = max_i Psi_bar_ii)."""
    e_inf = sys.min_eigenvalue()
    if not e_inf > 0:
        raise NumericalError(f"Psi_bar pozitif tanımlı değil: lambda_min={e_inf:.3e}", location="Psi_bar")
    return e_inf, float(np.max(np.diag(sys.Psi_bar)))
