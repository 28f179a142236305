# src/application/services/bounds/exponents.py

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from src.domain.models.calibration import DiscreteExponentChoice
from src.domain.models.errors import ArgumentError

R_GRID_START = 1.05
R_GRID_STOP = 20.0
R_GRID_STEP = 0.05
FEASIBILITY_INFLATION = 1e-6


def q_plus(q: float) -> float:
    return max(q, 0.0)


def _check_q(q: float) -> None:
    if not -1.0 <= q < 1.0:
        raise ArgumentError(f"q [-1, 1) aralığında olmalı: {q}")


def rate_exponent(eta: float, q: float, q_prime: float) -> float:
    """
    Hız üssü: eta = 0 için 1 - q+, aksi halde 1/2 + (eta + q' + q + 1) / (1 - q+).
    """
    _check_q(q)
    if eta < 0 or q_prime < 0:
        raise ArgumentError("eta ve q_prime negatif olamaz.")
    qp = q_plus(q)
    if eta == 0:
        return 1.0 - qp
    return 0.5 + (eta + q_prime + q + 1.0) / (1.0 - qp)


def cattiaux_c(q: float, iota_dd: float) -> float:
    """
    Sınırlı f için yoğunlaşma sabiti:
    c = ((1+q+)/(1-q+))^{1/(1-q+)} * ((1-q+) iota'' / (1+q+))^{(1+q+)/(2(1-q+))} / 2
    """
    if not iota_dd > 0:
        raise ArgumentError(f"iota_dd pozitif olmalı: {iota_dd}")
    qp = q_plus(q)
    if qp >= 1.0:
        raise ArgumentError("q+ -> 1 için sabit tanımsız.")
    ratio = (1.0 + qp) / (1.0 - qp)
    return ratio ** (1.0 / (1.0 - qp)) * ((1.0 - qp) * iota_dd / (1.0 + qp)) ** (
        (1.0 + qp) / (2.0 * (1.0 - qp))
    ) / 2.0


def mu_moment_constant(q: float, iota: float, V_expectation: float) -> float:
    """
    mu altındaki moment sabiti c_{q+}:
    e^{e/2 + (1-q+)/12} ((1-q+) iota e)^{-1/(1-q+)} sqrt(2 pi / (1-q+)) * E^mu[V].
    """
    _check_q(q)
    if not iota > 0:
        raise ArgumentError(f"iota pozitif olmalı: {iota}")
    if V_expectation < 1.0:
        raise ArgumentError(f"V_expectation >= 1 olmalı: {V_expectation}")
    qp = q_plus(q)
    return (
        math.exp(math.e / 2.0 + (1.0 - qp) / 12.0)
        * ((1.0 - qp) * iota * math.e) ** (-1.0 / (1.0 - qp))
        * math.sqrt(2.0 * math.pi / (1.0 - qp))
        * V_expectation
    )


def kappa(q: float, eta: float) -> float:
    """Gram sapma kuyruğundaki üs: 2(1-q+) / (6 eta + 2q + 3 - q+)."""
    _check_q(q)
    if not 0.0 <= eta <= 1.0:
        raise ArgumentError(f"eta [0, 1] aralığında olmalı: {eta}")
    qp = q_plus(q)
    return 2.0 * (1.0 - qp) / (6.0 * eta + 2.0 * q + 3.0 - qp)


def rho_exponent(gamma_tilde: float, alpha: float, eta2: float, q: float) -> float:
    qp = q_plus(q)
    return max((gamma_tilde + 2.0 * alpha + 1.0 - qp) / 2.0, eta2 + 1.0 - qp) / (1.0 - qp)


def _gamma_for(r: float, alpha: float, q: float) -> float:
    return (1.0 + q) + r * max(alpha, (1.0 + q) / (r - 1.0)) * (1.0 + FEASIBILITY_INFLATION)


def choose_discrete_exponents(
    q: float,
    q_prime: float,
    eta2: float,
    eta3: float,
    eta1: float = 0.0,
    r: Optional[float] = None,
) -> DiscreteExponentChoice:
    """
    Ayrık moment sınırı için (gamma~, r) seçer.

    q = -1: gamma~ = alpha ve r kullanılmaz.
    q > -1: r [1.05, 20] ızgarasında (adım 0.05) taranır ve rho'yu en küçükleyen çift döner;
    `r` verilirse yalnızca o değer kullanılır. sigma~ = rate_exponent(eta1, q, q').

    Returns:
        DiscreteExponentChoice
    """
    _check_q(q)
    for name, value in (("q_prime", q_prime), ("eta2", eta2), ("eta3", eta3), ("eta1", eta1)):
        if not (value >= 0 and math.isfinite(value)):
            raise ArgumentError(f"{name} sonlu ve negatif olmayan bir sayı olmalı: {value}")
    alpha = max(q_prime + eta2, eta3)
    sigma_tilde = rate_exponent(eta1, q, q_prime)

    if q == -1.0:
        return DiscreteExponentChoice(
            alpha=alpha,
            gamma_tilde=alpha,
            r=None,
            rho=rho_exponent(alpha, alpha, eta2, q),
            sigma_tilde=sigma_tilde,
        )

    if r is not None:
        if not r > 1.0:
            raise ArgumentError(f"r > 1 olmalı: {r}")
        candidates = [float(r)]
    else:
        candidates = [float(v) for v in r_grid()]

    best = None
    for candidate in candidates:
        gamma = _gamma_for(candidate, alpha, q)
        rho = rho_exponent(gamma, alpha, eta2, q)
        if best is None or rho < best[2]:
            best = (candidate, gamma, rho)

    chosen_r, gamma, rho = best
    return DiscreteExponentChoice(
        alpha=alpha,
        gamma_tilde=gamma,
        r=chosen_r,
        rho=rho,
        sigma_tilde=sigma_tilde,
    )


def r_grid() -> np.ndarray:
    count = int(round((R_GRID_STOP - R_GRID_START) / R_GRID_STEP)) + 1
    return R_GRID_START + R_GRID_STEP * np.arange(count)
