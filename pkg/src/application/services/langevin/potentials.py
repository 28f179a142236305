# src/application/services/langevin/potentials.py

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from src.application.services.simulation.simulation_service import sphere_directions
from src.domain.models.diffusion import DiffusionModel, ErgodicityParams, constant_diffusion
from src.domain.models.errors import ArgumentError, EvaluationError
from src.domain.models.langevin import Potential
from src.domain.models.reports import ConditionReport

FD_TOLERANCE = 1e-5


def make_heavy_potential(d: int, q: float, scale: float = 1.0, strength: float = 1.0) -> Potential:
    """
    U(x) = strength * (scale^2 + ||x||^2)^{(1-q)/2}, alt-üstel kuyruklu hedef.

    grad_sup ve L_lip analitik üst sınırlardır; U(q) sertifikası ||x|| >= scale için
    r = strength (1-q) / 2^{(1+q)/2} ile kaydedilir.
    """
    if d < 1:
        raise ArgumentError(f"d >= 1 olmalı: {d}")
    if not 0.0 < q < 1.0:
        raise ArgumentError(f"q (0, 1) aralığında olmalı: {q}")
    if not (scale > 0 and strength > 0):
        raise ArgumentError("scale ve strength pozitif olmalı.")

    a2 = scale * scale

    def U(x: np.ndarray) -> np.ndarray:
        r2 = np.sum(np.asarray(x, dtype=float) ** 2, axis=-1)
        return strength * (a2 + r2) ** ((1.0 - q) / 2.0)

    def grad_U(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        r2 = np.sum(x ** 2, axis=-1, keepdims=True)
        return strength * (1.0 - q) * x * (a2 + r2) ** (-(1.0 + q) / 2.0)

    # sup_r r (a^2 + r^2)^{-(1+q)/2}, r^2 = a^2 / q noktasında
    grad_sup = strength * (1.0 - q) * scale ** (-q) * q ** (q / 2.0) * (1.0 + q) ** (-(1.0 + q) / 2.0)
    L_lip = strength * (1.0 - q) * scale ** (-(1.0 + q))
    r_frak = strength * (1.0 - q) / 2.0 ** ((1.0 + q) / 2.0)
    return Potential(
        U=U,
        grad_U=grad_U,
        dim=d,
        q=q,
        L_lip=L_lip,
        grad_sup=grad_sup,
        M0=scale,
        r_frak=r_frak,
        name=f"heavy(q={q:g},scale={scale:g},strength={strength:g})",
    )


def make_gaussian_potential(d: int, precision: float = 1.0) -> Potential:
    """U(x) = precision * ||x||^2 / 2; ULA bu hedefte AR(1) sürecidir."""
    if d < 1 or not precision > 0:
        raise ArgumentError("d >= 1 ve precision > 0 olmalı.")

    def U(x: np.ndarray) -> np.ndarray:
        return 0.5 * precision * np.sum(np.asarray(x, dtype=float) ** 2, axis=-1)

    def grad_U(x: np.ndarray) -> np.ndarray:
        return precision * np.asarray(x, dtype=float)

    return Potential(
        U=U,
        grad_U=grad_U,
        dim=d,
        q=-1.0,
        L_lip=precision,
        grad_sup=math.inf,
        M0=0.0,
        r_frak=precision,
        name=f"gaussian(precision={precision:g})",
    )


def check_potential(
    pot: Potential,
    probe_radii: Sequence[float],
    directions_per_radius: int = 32,
    seed: int = 0,
) -> ConditionReport:
    """
    İki denetim:
      - ||x|| >= M0 için <grad U(x), x/||x||> >= r ||x||^{-q}
      - merkezi sonlu fark: ||grad U - FD|| <= 1e-5 (1 + ||grad U||)
    worst_margin radyal koşulun en kötü marjıdır (r ||x||^{-q} - <grad U, x/||x||>).
    """
    radii = np.asarray(list(probe_radii), dtype=float)
    if radii.size == 0 or np.any(radii <= 0) or np.any(radii < pot.M0):
        raise ArgumentError(f"Prob yarıçapları pozitif ve >= M0={pot.M0} olmalı.")
    directions = sphere_directions(pot.dim, directions_per_radius, seed)
    points = (radii[:, None, None] * directions[None, :, :]).reshape(-1, pot.dim)

    grads = np.asarray(pot.grad_U(points), dtype=float)
    for i in range(points.shape[0]):
        if not np.all(np.isfinite(grads[i])):
            raise EvaluationError("grad U sonlu değil", points[i])
    norms = np.linalg.norm(points, axis=1)
    radial = np.einsum("ij,ij->i", grads, points) / norms
    margins = pot.r_frak * norms ** (-pot.q) - radial
    tolerance = 1e-12 * (np.abs(radial) + 1.0)
    worst = int(np.argmax(margins))
    radial_ok = bool(np.all(margins <= tolerance))

    fd_errors = finite_difference_errors(pot, points)
    fd_ok = bool(np.all(fd_errors <= FD_TOLERANCE * (1.0 + np.linalg.norm(grads, axis=1))))
    notes = []
    if not fd_ok:
        notes.append(f"sonlu fark uyuşmazlığı: max hata {float(fd_errors.max()):.3e}")
    holds = radial_ok and fd_ok
    witness = None
    if not radial_ok:
        witness = tuple(float(v) for v in points[worst])
    elif not fd_ok:
        witness = tuple(float(v) for v in points[int(np.argmax(fd_errors))])
    return ConditionReport(
        holds=holds,
        worst_margin=float(margins[worst]),
        witness=witness,
        probes=int(points.shape[0]),
        notes=tuple(notes),
    )


def finite_difference_errors(pot: Potential, points: np.ndarray) -> np.ndarray:
    """Her nokta için ||grad U(x) - merkezi fark gradyanı||."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    h = 1e-5 * (1.0 + np.linalg.norm(points, axis=1))
    fd = np.empty_like(points)
    for j in range(pot.dim):
        shift = np.zeros_like(points)
        shift[:, j] = h
        fd[:, j] = (np.asarray(pot.U(points + shift)) - np.asarray(pot.U(points - shift))) / (2.0 * h)
    return np.linalg.norm(np.asarray(pot.grad_U(points)) - fd, axis=1)


def langevin_model(pot: Potential) -> DiffusionModel:
    """
    dX = -grad U(X) dt + sqrt(2) dW difüzyonu; ULA bunun Euler ayrıklaştırmasıdır.

    sigma sigma^T = 2 I olduğundan lambda_- = lambda_+ = 2; iota' bu parametrelerden Langevin
    hızıyla çakışır: iota^{(1+q)/(1-q)} (1+q) (r - iota (1-q)).
    """
    grad = pot.grad_U
    growth = 0.0 if math.isfinite(pot.grad_sup) else 1.0
    params = ErgodicityParams.with_default_iota(
        q=pot.q,
        q_prime=growth,
        M0=pot.M0,
        r_frak=pot.r_frak,
        lambda_minus=2.0,
        lambda_plus=2.0,
        Lambda_cap=2.0,
    )
    sampler = None
    if pot.q == -1.0 and not math.isfinite(pot.grad_sup):
        variance = 1.0 / pot.L_lip

        def sampler(gen: np.random.Generator, size: int) -> np.ndarray:
            return gen.standard_normal((size, pot.dim)) * math.sqrt(variance)

    return DiffusionModel(
        dim=pot.dim,
        drift=lambda x: -grad(x),
        diffusion=constant_diffusion(math.sqrt(2.0) * np.eye(pot.dim)),
        ergodicity=params,
        name=f"langevin-{pot.name}",
        stationary_sampler=sampler,
    )
