# src/domain/models/calibration.py

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Optional

from src.domain.models.errors import ArgumentError


class Provenance(str, Enum):
    DEFAULT = "default"
    CALIBRATED = "calibrated"
    USER = "user"


@dataclass(frozen=True)
class PACRequest:
    """(epsilon, delta) doğruluk isteği. Rejim sınırlarını tüketen operasyon kontrol eder."""
    epsilon: float
    delta: float

    def __post_init__(self) -> None:
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise ArgumentError(f"epsilon pozitif olmalı: {self.epsilon}")
        if not 0.0 < self.delta < 1.0:
            raise ArgumentError(f"delta (0, 1) aralığında olmalı: {self.delta}")

    def log_inv_delta(self) -> float:
        return math.log(1.0 / self.delta)


_CONSTANT_NAMES = ("W_frak", "D_frak", "C_frak", "C_burnin", "c_small", "iota_dd", "D_inf", "e_inf")


@dataclass(frozen=True)
class CalibrationConstants:
    """
    Sadece varlığı bilinen sabitler (W, D, C, C_burnin, c, iota'', D_inf, e_inf).

    Varsayılan değer 1'dir ve kaynağı (provenance) "default" olarak işaretlenir.
    iota_dd None ise bounds tarafında 0.5 * iota' kullanılır.
    D_inf / e_inf lasso plug-in tahminleridir; yoksa None.
    """
    W_frak: float = 1.0
    D_frak: float = 1.0
    C_frak: float = 1.0
    C_burnin: float = 1.0
    c_small: float = 1.0
    iota_dd: Optional[float] = None
    D_inf: Optional[float] = None
    e_inf: Optional[float] = None
    provenance: Dict[str, Provenance] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        for name in _CONSTANT_NAMES:
            value = getattr(self, name)
            if value is None:
                continue
            if not (value > 0 and math.isfinite(value)):
                raise ArgumentError(f"{name} pozitif ve sonlu olmalı: {value}")
        filled = {name: self.provenance.get(name, Provenance.DEFAULT) for name in _CONSTANT_NAMES}
        object.__setattr__(self, "provenance", filled)

    def with_calibrated(self, **values: float) -> "CalibrationConstants":
        return self._with(Provenance.CALIBRATED, values)

    def with_user(self, **values: float) -> "CalibrationConstants":
        return self._with(Provenance.USER, values)

    def _with(self, source: Provenance, values: Dict[str, float]) -> "CalibrationConstants":
        unknown = set(values) - set(_CONSTANT_NAMES)
        if unknown:
            raise ArgumentError(f"Bilinmeyen sabit(ler): {sorted(unknown)}")
        provenance = dict(self.provenance)
        for name in values:
            provenance[name] = source
        return replace(self, provenance=provenance, **values)

    def require_iota_dd(self) -> float:
        if self.iota_dd is None:
            raise ArgumentError("iota_dd tanımlı değil; ErgodicityParams.default_iota_dd() ile doldurun.")
        return self.iota_dd

    def to_dict(self) -> Dict[str, object]:
        return {
            name: {"value": getattr(self, name), "provenance": self.provenance[name].value}
            for name in _CONSTANT_NAMES
        }


@dataclass(frozen=True)
class DiscreteExponentChoice:
    """Ayrık moment sınırındaki üsler: alpha, gamma~, r, rho, sigma~."""
    alpha: float
    gamma_tilde: float
    r: Optional[float]   # q = -1 iken kullanılmaz
    rho: float
    sigma_tilde: float

    def is_feasible(self, q: float) -> bool:
        if q == -1.0:
            return self.gamma_tilde == self.alpha
        if self.r is None or self.r <= 1.0:
            return False
        return self.gamma_tilde - (1.0 + q) > self.r * max(self.alpha, (1.0 + q) / (self.r - 1.0))


def with_default_iota_dd(consts: CalibrationConstants, iota_prime: float) -> CalibrationConstants:
    """iota_dd boşsa (0, iota') aralığının orta noktasını varsayılan kaynakla yazar."""
    if consts.iota_dd is not None:
        return consts
    return replace(consts, iota_dd=0.5 * iota_prime)
