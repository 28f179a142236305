# src/application/services/bounds/lasso_bounds.py

from __future__ import annotations

import math

from src.application.services.bounds.exponents import kappa
from src.domain.models.errors import ArgumentError


def lasso_T0(eps0: float, s: int, c0: float, c: float, q: float, eta: float, d: int, e_inf: float) -> float:
    """
    Kısıtlı özdeğer olayının olasılığı >= 1 - eps0 olması için gereken gözlem süresi:
    {log(21^{2s} (d ∧ (e d / (2s))^{2s})) - log eps0}^{2/kappa} * 18^2 (c0+2)^2 e^2 c^2 / e_inf^2
    """
    if not 0.0 < eps0 < 1.0:
        raise ArgumentError(f"eps0 (0, 1) aralığında olmalı: {eps0}")
    if s < 1 or d < 1:
        raise ArgumentError("s ve d en az 1 olmalı.")
    if not e_inf > 0:
        raise ArgumentError("e_inf pozitif olmalı.")
    combinatorial = 2 * s * math.log(21.0) + math.log(min(float(d), (math.e * d / (2.0 * s)) ** (2 * s)))
    base = combinatorial - math.log(eps0)
    return base ** (2.0 / kappa(q, eta)) * 18.0 ** 2 * (c0 + 2.0) ** 2 * math.e ** 2 * c ** 2 / e_inf ** 2


def lasso_lambda_min(T: float, N: int, eps0: float, D_inf: float, e_inf: float) -> float:
    """lambda >= 2 sqrt((2 D_inf + e_inf) / T * log(6N / eps0))."""
    if not T > 0:
        raise ArgumentError(f"T pozitif olmalı: {T}")
    if N < 1:
        raise ArgumentError(f"N >= 1 olmalı: {N}")
    if not eps0 > 0:
        raise ArgumentError(f"eps0 pozitif olmalı: {eps0}")
    ratio = 6.0 * N / eps0
    if ratio <= 1.0:
        raise ArgumentError(f"6N/eps0 = {ratio} <= 1; logaritma pozitif değil.")
    return 2.0 * math.sqrt((2.0 * D_inf + e_inf) / T * math.log(ratio))


def gram_deviation_tail(T: float, R: float, L_frak: float, W_frak: float, q: float, eta: float) -> float:
    """P(|zeta^T (Psi_T - Psi_inf) zeta| > R) için üst sınır exp(-(sqrt(T) R / (e L W))^kappa), R >= 2/sqrt(T)."""
    if not T > 0:
        raise ArgumentError("T pozitif olmalı.")
    if R < 2.0 / math.sqrt(T):
        raise ArgumentError(f"R >= 2/sqrt(T) olmalı: {R}")
    return math.exp(-((math.sqrt(T) * R / (math.e * L_frak * W_frak)) ** kappa(q, eta)))


def oracle_bound(theta_dist_sq: float, s: int, lam: float, e_inf: float, gamma: float) -> float:
    """Genel oracle eşitsizliği sağ tarafı: (1+g)(dist^2 + 4(2+g)^2 / (g(1+g) e_inf) s lambda^2)."""
    if not gamma > 0 or not e_inf > 0:
        raise ArgumentError("gamma ve e_inf pozitif olmalı.")
    return (1.0 + gamma) * (
        theta_dist_sq + 4.0 * (2.0 + gamma) ** 2 / (gamma * (1.0 + gamma) * e_inf) * s * lam ** 2
    )


def sparse_oracle_rhs(lam: float, s0: int, e_inf: float) -> float:
    """theta_0 s0-seyrek iken: lambda^2 * 2 s0 / e_inf."""
    if not e_inf > 0:
        raise ArgumentError("e_inf pozitif olmalı.")
    return lam ** 2 * 2.0 * s0 / e_inf
