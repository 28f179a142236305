# src/domain/models/diffusion.py

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from src.domain.models.errors import ArgumentError, EvaluationError

# Vektörize imzalar: x.shape == (..., d)
DriftFn = Callable[[np.ndarray], np.ndarray]          # -> (..., d)
DiffusionFn = Callable[[np.ndarray], np.ndarray]      # -> (..., d, d)
StationarySampler = Callable[[np.random.Generator, int], np.ndarray]  # -> (size, d)


@dataclass(frozen=True)
class ErgodicityParams:
    """
    Drift koşulu A(q) ve eliptiklik sabitlerini taşıyan immutable nesne.

    A(q): ||x|| >= M0 ise <b(x), x/||x||> <= -r_frak * ||x||^{-q}.
    """
    q: float                # drift azalma üssü, [-1, 1)
    q_prime: float          # drift büyüme üssü, >= 0
    M0: float
    r_frak: float
    lambda_minus: float
    lambda_plus: float
    Lambda_cap: float
    iota: float

    def __post_init__(self) -> None:
        if not -1.0 <= self.q < 1.0:
            raise ArgumentError(f"q [-1, 1) aralığında olmalı: {self.q}")
        if self.q_prime < 0 or self.M0 < 0:
            raise ArgumentError("q_prime ve M0 negatif olamaz.")
        for name in ("r_frak", "lambda_minus", "lambda_plus", "Lambda_cap", "iota"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ArgumentError(f"{name} pozitif ve sonlu olmalı: {value}")
        if self.lambda_minus > self.lambda_plus:
            raise ArgumentError("lambda_minus, lambda_plus değerini aşamaz.")
        bound = self.iota * self.lambda_plus * (1.0 - self.q_plus()) / 2.0
        if not self.r_frak > bound:
            raise ArgumentError(
                f"iota çok büyük: r_frak={self.r_frak} > iota*lambda_plus*(1-q+)/2={bound} sağlanmalı."
            )

    @classmethod
    def with_default_iota(
        cls,
        q: float,
        q_prime: float,
        M0: float,
        r_frak: float,
        lambda_minus: float,
        lambda_plus: float,
        Lambda_cap: float,
    ) -> "ErgodicityParams":
        """İzin verilen üst sınırın yarısında bir iota seçer: iota = r / (lambda_+ (1 - q+))."""
        q_plus = max(q, 0.0)
        iota = r_frak / (lambda_plus * (1.0 - q_plus))
        return cls(q, q_prime, M0, r_frak, lambda_minus, lambda_plus, Lambda_cap, iota)

    def q_plus(self) -> float:
        return max(self.q, 0.0)

    def lyapunov(self, x: np.ndarray) -> np.ndarray:
        """V_{q+}(x) = exp(iota * ||x||^{1-q+}), son eksen üzerinden norm."""
        norm = np.linalg.norm(np.asarray(x, dtype=float), axis=-1)
        return np.exp(self.iota * norm ** (1.0 - self.q_plus()))

    def iota_prime(self) -> float:
        """Alt-üstel TV yakınsama hızındaki iota'."""
        qp = self.q_plus()
        return (
            self.iota ** ((1.0 + qp) / (1.0 - qp))
            * (1.0 + qp)
            * (self.r_frak - self.lambda_plus * self.iota * (1.0 - qp) / 2.0)
        )

    def exponential_rate(self) -> float:
        """q <= 0 için üstel gösterimdeki hız: iota * (r - lambda_+ * iota / 2)."""
        return self.iota * (self.r_frak - self.lambda_plus * self.iota / 2.0)

    def default_iota_dd(self) -> float:
        """iota'' varsayılanı: (0, iota') aralığının orta noktası."""
        return 0.5 * self.iota_prime()


@dataclass(frozen=True)
class DiffusionModel:
    """
    dX = b(X) dt + sigma(X) dW difüzyonu ve ergodiklik metadatası.

    drift ve diffusion vektörize çalışmalıdır: (..., d) -> (..., d) ve (..., d, d).
    """
    dim: int
    drift: DriftFn
    diffusion: DiffusionFn
    ergodicity: ErgodicityParams
    name: str
    stationary_sampler: Optional[StationarySampler] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ArgumentError(f"dim pozitif olmalı: {self.dim}")

    @property
    def has_exact_sampler(self) -> bool:
        return self.stationary_sampler is not None

    def with_name(self, name: str) -> "DiffusionModel":
        return replace(self, name=name)

    def validate(self, probes: np.ndarray, check_ellipticity: bool = True) -> None:
        """
        Prob noktalarında değişmezleri doğrular:
          - drift ve difüzyon sonlu
          - sigma sigma^T en küçük özdeğeri >= lambda_minus
        """
        probes = np.atleast_2d(np.asarray(probes, dtype=float))
        drift = np.asarray(self.drift(probes), dtype=float)
        sigma = np.asarray(self.diffusion(probes), dtype=float)
        for i, point in enumerate(probes):
            if not np.all(np.isfinite(drift[i])):
                raise EvaluationError("Drift sonlu değil", point)
            if not np.all(np.isfinite(sigma[i])):
                raise EvaluationError("Difüzyon sonlu değil", point)
        if not check_ellipticity:
            return
        a = sigma @ np.swapaxes(sigma, -1, -2)
        min_eig = np.linalg.eigvalsh(a)[..., 0]
        tolerance = 1e-12 * max(1.0, self.ergodicity.lambda_minus)
        worst = int(np.argmin(min_eig))
        if min_eig[worst] < self.ergodicity.lambda_minus - tolerance:
            raise EvaluationError(
                f"Düzgün eliptiklik ihlali: lambda_min={min_eig[worst]:.3e} < "
                f"lambda_minus={self.ergodicity.lambda_minus:.3e}",
                probes[worst],
            )


def constant_diffusion(matrix: np.ndarray) -> DiffusionFn:
    """Sabit difüzyon matrisini vektörize bir fonksiyona çevirir."""
    matrix = np.asarray(matrix, dtype=float)

    def _sigma(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.broadcast_to(matrix, x.shape[:-1] + matrix.shape)

    return _sigma
