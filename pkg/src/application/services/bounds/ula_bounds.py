# src/application/services/bounds/ula_bounds.py

from __future__ import annotations

import math
from typing import Dict, Tuple

from src.application.services.bounds.exponents import choose_discrete_exponents, rate_exponent
from src.application.services.bounds.sample_sizes import sample_size_discrete
from src.domain.models.calibration import CalibrationConstants, PACRequest
from src.domain.models.errors import ArgumentError, RegimeError
from src.domain.models.langevin import UlaTuning

SAFETY_FACTOR = 0.9


def _check_ula_q(q: float) -> None:
    if not 0.0 < q < 1.0:
        raise ArgumentError(f"ULA ayarı için q (0, 1) aralığında olmalı: {q}")


def ula_step_caps(
    req: PACRequest,
    q: float,
    eta1: float,
    eta2: float,
    eta3: float,
    d: int,
    L_lip: float,
    grad_sup: float,
    consts: CalibrationConstants,
) -> Tuple[float, float, float, float]:
    """
    Delta için dört üst sınır: 1, eps/(3eD), (log 1/delta)^{sigma~ - rho} ve
    (delta eps)^2 / (2(1+grad_sup) d L^2 ((log 4/delta)^{2 sigma~} + eps^2 (2 + (log 4C/delta)^{(1+q)/(1-q)} / iota''))).
    """
    sigma_tilde = rate_exponent(eta1, q, 0.0)
    choice = choose_discrete_exponents(q, 0.0, eta2, eta3, eta1=eta1)
    eps, delta = req.epsilon, req.delta
    log_burn = math.log(4.0 * consts.C_burnin / delta)
    burn_term = max(log_burn, 0.0) ** ((1.0 + q) / (1.0 - q)) / consts.require_iota_dd()
    cap_plain = 1.0
    cap_eps = eps / (3.0 * math.e * consts.D_frak)
    cap_log = req.log_inv_delta() ** (sigma_tilde - choice.rho)
    cap_disc = (delta * eps) ** 2 / (
        2.0
        * (1.0 + grad_sup)
        * d
        * L_lip ** 2
        * (math.log(4.0 / delta) ** (2.0 * sigma_tilde) + eps ** 2 * (2.0 + burn_term))
    )
    return cap_plain, cap_eps, cap_log, cap_disc


def ula_tuning(
    req: PACRequest,
    q: float,
    eta1: float,
    eta2: float,
    eta3: float,
    d: int,
    L_lip: float,
    grad_sup: float,
    consts: CalibrationConstants,
    safety: float = SAFETY_FACTOR,
) -> UlaTuning:
    """
    ULA için (Delta, n, m):
      Delta = safety * min(üst sınırlar),
      n = ceil(Psi(Delta, eps, delta/4)) (q' = 0 ile),
      m = ceil(Delta^{-1} (log(4C/delta))^{(1+q)/(1-q)} / iota'').

    Raises:
        RegimeError: sınırlardan biri pozitif/sonlu değilse veya delta/4 rejim dışındaysa.
    """
    _check_ula_q(q)
    if d < 1 or not L_lip > 0 or grad_sup < 0:
        raise ArgumentError("d >= 1, L_lip > 0 ve grad_sup >= 0 olmalı.")
    caps = ula_step_caps(req, q, eta1, eta2, eta3, d, L_lip, grad_sup, consts)
    if not all(math.isfinite(c) and c > 0 for c in caps):
        raise RegimeError(f"Delta üst sınırları uygulanabilir değil: {caps}")
    delta_step = safety * min(caps)

    quarter = PACRequest(req.epsilon, req.delta / 4.0)
    n_min, _ = sample_size_discrete(quarter, delta_step, eta1, q, 0.0, eta2, eta3, consts)
    n = int(math.ceil(n_min))

    log_burn = math.log(4.0 * consts.C_burnin / req.delta)
    m_raw = max(log_burn, 0.0) ** ((1.0 + q) / (1.0 - q)) / (delta_step * consts.require_iota_dd())
    m = int(math.ceil(m_raw))
    return UlaTuning(delta_step=delta_step, n=n, m=m, caps=caps, safety=safety)


def ula_tuning_check(
    tuning: UlaTuning,
    req: PACRequest,
    q: float,
    eta1: float,
    eta2: float,
    eta3: float,
    d: int,
    L_lip: float,
    grad_sup: float,
    consts: CalibrationConstants,
) -> Dict[str, bool]:
    """Kullanılan (Delta, n, m) değerlerinin tüm koşulları sağladığını sonradan yeniden denetler."""
    caps = ula_step_caps(req, q, eta1, eta2, eta3, d, L_lip, grad_sup, consts)
    strict = min(caps[0], caps[1], caps[2])
    quarter = PACRequest(req.epsilon, req.delta / 4.0)
    n_min, _ = sample_size_discrete(quarter, tuning.delta_step, eta1, q, 0.0, eta2, eta3, consts)
    log_burn = math.log(4.0 * consts.C_burnin / req.delta)
    m_min = max(log_burn, 0.0) ** ((1.0 + q) / (1.0 - q)) / (tuning.delta_step * consts.require_iota_dd())
    return {
        "step_below_strict_caps": tuning.delta_step < strict,
        "step_below_discretisation_cap": tuning.delta_step <= caps[3],
        "n_above_floor": tuning.n >= n_min,
        "m_above_floor": tuning.m >= m_min,
    }


def ula_tv_bound(
    n: int,
    delta_step: float,
    nu_Vq: float,
    q: float,
    d: int,
    L_lip: float,
    grad_sup: float,
    consts: CalibrationConstants,
) -> float:
    """C nu(V_q) exp(-(iota'' n Delta)^{(1-q)/(1+q)}) + sqrt((1 + grad_sup^2) d L^2 n Delta^2 / 2)."""
    if nu_Vq < 1.0:
        raise ArgumentError(f"nu_Vq >= 1 olmalı: {nu_Vq}")
    if n < 0 or not delta_step > 0:
        raise ArgumentError("n >= 0 ve delta_step > 0 olmalı.")
    ergodic = consts.C_frak * nu_Vq * math.exp(
        -((consts.require_iota_dd() * n * delta_step) ** ((1.0 - q) / (1.0 + q)))
    )
    discretisation = math.sqrt((1.0 + grad_sup ** 2) * d * L_lip ** 2 * n * delta_step ** 2 / 2.0)
    return ergodic + discretisation


def ula_tv_tuning(
    epsilon: float,
    q: float,
    d: int,
    L_lip: float,
    grad_sup: float,
    consts: CalibrationConstants,
    nu_Vq: float = 1.0,
) -> Tuple[float, int, float]:
    """
    TV sınırını <= epsilon yapan (Delta, n): ergodik terim ve ayrıklaştırma terimi ayrı ayrı eps/2.

    Returns:
        (delta_step, n, bound) üçlüsü; bound = ula_tv_bound(n, delta_step, ...).
    """
    _check_ula_q(q)
    if not epsilon > 0:
        raise ArgumentError("epsilon pozitif olmalı.")
    g2 = 1.0 + grad_sup ** 2
    log_term = math.log(2.0 * consts.C_frak * nu_Vq / epsilon)
    horizon = max(log_term, 0.0) ** ((1.0 + q) / (1.0 - q)) / consts.require_iota_dd()
    if horizon <= 0:
        delta_step = min(1.0, epsilon / math.sqrt(2.0 * g2 * d * L_lip ** 2))
        n = 1
    else:
        delta_step = min(1.0, epsilon ** 2 / (2.0 * g2 * d * L_lip ** 2 * horizon))
        n = int(math.ceil(horizon / delta_step))
        # n * Delta >= horizon; ayrıklaştırma terimi eps/2'yi aşarsa adımı küçült
        while math.sqrt(g2 * d * L_lip ** 2 * n * delta_step ** 2 / 2.0) > epsilon / 2.0:
            delta_step *= SAFETY_FACTOR
            n = int(math.ceil(horizon / delta_step))
    return delta_step, n, ula_tv_bound(n, delta_step, nu_Vq, q, d, L_lip, grad_sup, consts)


def table_order_step(req: PACRequest, q: float, eta1: float, d: int) -> float:
    """Adım büyüklüğü mertebesi: (delta eps)^2 / d * (log 1/delta)^{-2 sigma~(eta1, q, 0)}."""
    _check_ula_q(q)
    return (req.delta * req.epsilon) ** 2 / d * req.log_inv_delta() ** (-2.0 * rate_exponent(eta1, q, 0.0))