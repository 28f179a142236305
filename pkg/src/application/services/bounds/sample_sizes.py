# src/application/services/bounds/sample_sizes.py

from __future__ import annotations

import math
from typing import Optional, Tuple

from src.application.services.bounds.exponents import (
    cattiaux_c,
    choose_discrete_exponents,
    q_plus,
    rate_exponent,
)
from src.domain.models.calibration import CalibrationConstants, DiscreteExponentChoice, PACRequest
from src.domain.models.diffusion import ErgodicityParams
from src.domain.models.errors import ArgumentError, RegimeError


def bounded_regime_delta(q: float, c_small: float) -> float:
    """exp(-c (1+q+) (1-q+)^{-(1-q+)/2}); eta = 0 rejim sınırlarının ortak çekirdeği."""
    qp = q_plus(q)
    return math.exp(-c_small * (1.0 + qp) * (1.0 - qp) ** (-(1.0 - qp) / 2.0))


# -------------------- Sürekli veri -------------------- #

def cattiaux_u_window(t: float, q: float, iota_dd: float, c_small: float) -> Tuple[float, float]:
    """Sınırlı f kuyruk eşitsizliğinin geçerli olduğu u aralığı [alt, üst)."""
    if not t >= 1.0:
        raise ArgumentError(f"t >= 1 olmalı: {t}")
    qp = q_plus(q)
    lower = c_small * (1.0 + qp) * (1.0 - qp) ** (-(1.0 - qp) / 2.0)
    upper = (cattiaux_c(q, iota_dd) * math.floor(t) / math.sqrt(t)) ** (1.0 - qp)
    return lower, upper


def cattiaux_threshold(u: float, t: float, q: float, iota_dd: float, L_frak: float) -> float:
    """P(|G_t(f)| > 2L (c^{-1} u^{1/(1-q+)} + t^{-1/2})) <= 2 e^{-u}, |f| <= L."""
    if not (u > 0 and t > 0):
        raise ArgumentError("u ve t pozitif olmalı.")
    qp = q_plus(q)
    return 2.0 * L_frak * (u ** (1.0 / (1.0 - qp)) / cattiaux_c(q, iota_dd) + t ** -0.5)


def continuous_moment_bound(p: float, L_frak: float, W_frak: float, eta: float, q: float, q_prime: float) -> float:
    """||G_t(f)||_{L^p} <= L W p^{sigma}."""
    if p < 1:
        raise ArgumentError(f"p >= 1 olmalı: {p}")
    return L_frak * W_frak * p ** rate_exponent(eta, q, q_prime)


def continuous_tail_threshold(u: float, L_frak: float, W_frak: float, eta: float, q: float, q_prime: float) -> float:
    """P(|G_t(f)| > e L W u^{sigma}) <= e^{-u}, u >= 2."""
    if u < 2:
        raise ArgumentError(f"u >= 2 olmalı: {u}")
    return math.e * L_frak * W_frak * u ** rate_exponent(eta, q, q_prime)


def sample_length_continuous(
    req: PACRequest,
    eta: float,
    q: float,
    q_prime: float,
    L_frak: float,
    consts: CalibrationConstants,
) -> float:
    """
    Sürekli veri için yeterli gözlem süresi Psi(eps, delta).

    Raises:
        RegimeError: eta = 0 iken delta >= 2 exp(-c(1+q+)(1-q+)^{-(1-q+)/2}),
                     eta > 0 iken delta >= e^{-2}.
    """
    if not L_frak > 0:
        raise ArgumentError("L_frak pozitif olmalı.")
    qp = q_plus(q)
    if eta == 0:
        limit = 2.0 * bounded_regime_delta(q, consts.c_small)
        if not req.delta < limit:
            raise RegimeError(f"delta={req.delta} rejim dışında (sınır {limit:.6g}).")
        c = cattiaux_c(q, consts.require_iota_dd())
        numerator = math.log(2.0 / req.delta) ** (1.0 / (1.0 - qp)) / c + 1.0
        denominator = min(1.0, req.epsilon / (2.0 * L_frak))
        return (numerator / denominator) ** 2

    if not req.delta < math.exp(-2.0):
        raise RegimeError(f"delta={req.delta} rejim dışında (sınır e^-2).")
    varsigma = rate_exponent(eta, q, q_prime)
    return (math.e * L_frak * consts.W_frak * req.log_inv_delta() ** varsigma / req.epsilon) ** 2


def burnin_length_continuous(req: PACRequest, eta: float, q: float, consts: CalibrationConstants) -> float:
    """v >= 1 ∨ (log(2C/delta))^{(1+q+)/(1-q+)} / iota''."""
    qp = q_plus(q)
    if eta > 0:
        limit = 2.0 * math.exp(-2.0)
    else:
        limit = 4.0 * bounded_regime_delta(q, consts.c_small)
    if not req.delta < limit:
        raise RegimeError(f"delta={req.delta} burn-in rejimi dışında (sınır {limit:.6g}).")
    return _burnin_core(req.delta, 2.0, qp, consts)


def _burnin_core(delta: float, factor: float, qp: float, consts: CalibrationConstants) -> float:
    log_term = math.log(factor * consts.C_burnin / delta)
    if log_term <= 0:
        return 1.0
    return max(1.0, log_term ** ((1.0 + qp) / (1.0 - qp)) / consts.require_iota_dd())


def ergodicity_tv_bound(t: float, x_norm: float, params: ErgodicityParams, C_q: float = 1.0) -> float:
    """||P^x(X_t ∈ ·) - mu||_TV <= C V(x) (1+t)^{2q+/(1+q+)} exp(-(iota' t)^{(1-q+)/(1+q+)})."""
    if t < 0 or x_norm < 0:
        raise ArgumentError("t ve ||x|| negatif olamaz.")
    qp = params.q_plus()
    V = math.exp(params.iota * x_norm ** (1.0 - qp))
    return (
        C_q
        * V
        * (1.0 + t) ** (2.0 * qp / (1.0 + qp))
        * math.exp(-((params.iota_prime() * t) ** ((1.0 - qp) / (1.0 + qp))))
    )


# -------------------- Ayrık veri -------------------- #

def discrete_moment_bound(
    n: int,
    delta_step: float,
    p: float,
    consts: CalibrationConstants,
    choice: DiscreteExponentChoice,
    eta1: float,
    q: float,
    q_prime: float,
) -> float:
    """Phi(n, Delta, p) = D (sqrt(n) Delta^{3/2} + Delta p^{rho} + p^{sigma~})."""
    if n < 1:
        raise ArgumentError(f"n >= 1 olmalı: {n}")
    if not delta_step > 0:
        raise ArgumentError("delta_step pozitif olmalı.")
    if p < 2:
        raise ArgumentError(f"p >= 2 olmalı: {p}")
    sigma_tilde = rate_exponent(eta1, q, q_prime)
    return consts.D_frak * (
        math.sqrt(n) * delta_step ** 1.5 + delta_step * p ** choice.rho + p ** sigma_tilde
    )


def discrete_tail_threshold(
    u: float,
    n: int,
    delta_step: float,
    consts: CalibrationConstants,
    choice: DiscreteExponentChoice,
    eta1: float,
    q: float,
    q_prime: float,
) -> float:
    """P(|G_{n,Delta}(f)| > e Phi(n, Delta, u)) <= e^{-u}."""
    return math.e * discrete_moment_bound(n, delta_step, u, consts, choice, eta1, q, q_prime)


def sample_size_discrete(
    req: PACRequest,
    delta_step: float,
    eta1: float,
    q: float,
    q_prime: float,
    eta2: float,
    eta3: float,
    consts: CalibrationConstants,
    r: Optional[float] = None,
) -> Tuple[float, DiscreteExponentChoice]:
    """
    Ayrık veri için yeterli örnek sayısı:
    Psi(Delta, eps, delta) = (1/Delta) (3 e D max{Delta L^{rho}, L^{sigma~}} / eps)^2, L = log(1/delta).

    Raises:
        RegimeError: delta >= e^{-2} veya Delta >= eps / (3 e D).
    """
    if not delta_step > 0:
        raise ArgumentError("delta_step pozitif olmalı.")
    if not req.delta < math.exp(-2.0):
        raise RegimeError(f"delta={req.delta} rejim dışında (sınır e^-2).")
    step_cap = req.epsilon / (3.0 * math.e * consts.D_frak)
    if not delta_step < step_cap:
        raise RegimeError(f"Delta={delta_step} >= eps/(3eD)={step_cap:.6g}.")
    choice = choose_discrete_exponents(q, q_prime, eta2, eta3, eta1=eta1, r=r)
    log_term = req.log_inv_delta()
    dominant = max(delta_step * log_term ** choice.rho, log_term ** choice.sigma_tilde)
    n_min = (3.0 * math.e * consts.D_frak * dominant / req.epsilon) ** 2 / delta_step
    return n_min, choice


def burnin_length_discrete(req: PACRequest, delta_step: float, q: float, consts: CalibrationConstants) -> int:
    """m >= 1 ∨ Delta^{-1} (log(2C/delta))^{(1+q+)/(1-q+)} / iota''."""
    if not delta_step > 0:
        raise ArgumentError("delta_step pozitif olmalı.")
    qp = q_plus(q)
    log_term = math.log(2.0 * consts.C_burnin / req.delta)
    raw = 0.0
    if log_term > 0:
        raw = log_term ** ((1.0 + qp) / (1.0 - qp)) / (consts.require_iota_dd() * delta_step)
    return int(math.ceil(max(1.0, raw)))
